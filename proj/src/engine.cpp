// Copyright 2026 The Termmap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "termmap/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "termmap/cache.hpp"
#include "termmap/csv.hpp"
#include "termmap/error.hpp"
#include "termmap/fetch.hpp"
#include "termmap/similarity.hpp"
#include "termmap/tfidf.hpp"

namespace termmap {
namespace {

using json = nlohmann::json;

struct Match {
  const OntologyTerm* term = nullptr;  // null for remote hits outside the ontology
  std::string iri;
  std::string label;
  double score = 0.0;
  std::string matched_string;
};

std::string Timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string SeparatorName(char c) {
  if (c == '\t') return "\\t";
  return std::string(1, c);
}

bool IsRemote(Mapper m) { return m == Mapper::kZooma || m == Mapper::kBioportal; }

std::optional<Metric> MetricFor(Mapper m) {
  switch (m) {
    case Mapper::kLevenshtein: return Metric::kLevenshtein;
    case Mapper::kJaro: return Metric::kJaro;
    case Mapper::kJaroWinkler: return Metric::kJaroWinkler;
    case Mapper::kJaccard: return Metric::kJaccard;
    case Mapper::kIndel: return Metric::kIndel;
    default: return std::nullopt;
  }
}

std::vector<std::vector<Match>> RunLocal(const std::vector<std::string>& queries,
                                         const TermSet& corpus, const MappingConfig& config) {
  std::vector<std::vector<Match>> out(queries.size());
  bool has_strings = std::any_of(corpus.begin(), corpus.end(),
                                 [](const OntologyTerm* t) { return t->has_match_strings(); });
  if (queries.empty() || !has_strings) return out;

  if (config.mapper == Mapper::kTfidf) {
    TfidfMatcher matcher(corpus, config.ngram_size, config.include_broad_synonyms);
    auto found = matcher.Match(queries, config.max_mappings, config.min_score, config.threads);
    for (std::size_t q = 0; q < found.size(); ++q) {
      for (auto& m : found[q]) {
        out[q].push_back({m.term, m.term->iri, m.term->display_label(), m.score,
                          std::move(m.matched_string)});
      }
    }
    return out;
  }

  SyntacticMatcher matcher(corpus, *MetricFor(config.mapper), config.include_broad_synonyms);
  std::size_t threads = config.threads ? config.threads
                                       : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, queries.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t q = begin; q < end; ++q) {
      for (auto& m : matcher.Match(queries[q], config.max_mappings, config.min_score)) {
        out[q].push_back({m.term, m.term->iri, m.term->display_label(), m.score,
                          std::move(m.matched_string)});
      }
    }
  };
  if (threads <= 1) {
    work(0, queries.size());
  } else {
    std::vector<std::thread> pool;
    std::size_t block = (queries.size() + threads - 1) / threads;
    for (std::size_t b = 0; b < queries.size(); b += block) {
      pool.emplace_back(work, b, std::min(queries.size(), b + block));
    }
    for (auto& t : pool) t.join();
  }
  return out;
}

}  // namespace

void MappingConfig::Validate() const {
  if (max_mappings < 1) throw ConfigError("max_mappings must be at least 1");
  if (!(min_score >= 0.0 && min_score <= 1.0)) throw ConfigError("min_score must lie in [0, 1]");
  if (ngram_size < 1) throw ConfigError("ngram_size must be at least 1");
}

std::vector<std::pair<std::string, std::string>> ConfigMetadata(const MappingConfig& c) {
  return {
      {"mapper", std::string(ToString(c.mapper))},
      {"max_mappings", std::to_string(c.max_mappings)},
      {"min_score", FormatDouble(c.min_score)},
      {"excl_deprecated", c.excl_deprecated ? "true" : "false"},
      {"base_iris", csv::JoinList(c.base_iris)},
      {"term_type", std::string(ToString(c.term_type))},
      {"incl_unmapped", c.incl_unmapped ? "true" : "false"},
      {"ngram_size", std::to_string(c.ngram_size)},
      {"include_broad_synonyms", c.include_broad_synonyms ? "true" : "false"},
      {"csv_column", c.csv_column.value_or("")},
      {"source_terms_ids_column", c.source_terms_ids_column.value_or("")},
      {"separator", SeparatorName(c.separator)},
      {"use_cache", c.use_cache ? "true" : "false"},
      {"save_graphs", c.save_graphs ? "true" : "false"},
      {"templates", csv::JoinList(c.templates)},
      {"blocklist", csv::JoinList(c.blocklist)},
  };
}

std::vector<SourceTerm> ReadSourceTerms(std::string_view content, const MappingConfig& config) {
  std::vector<SourceTerm> terms;
  if (!config.csv_column) {
    std::istringstream in{std::string(content)};
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      terms.push_back(MakeSourceTerm(line));
    }
  } else {
    auto records = csv::Parse(content, config.separator);
    if (records.empty()) throw InputError("source term table is empty");
    const auto& header = records.front().fields;
    auto available = [&] {
      std::string names;
      for (const auto& h : header) names += (names.empty() ? "" : ", ") + h;
      return names;
    };
    auto column = csv::ColumnIndex(header, *config.csv_column);
    if (!column) {
      throw InputError("column '" + *config.csv_column + "' not found; available columns: " +
                       available());
    }
    std::optional<std::size_t> id_column;
    if (config.source_terms_ids_column) {
      id_column = csv::ColumnIndex(header, *config.source_terms_ids_column);
      if (!id_column) {
        throw InputError("id column '" + *config.source_terms_ids_column +
                         "' not found; available columns: " + available());
      }
    }
    for (std::size_t r = 1; r < records.size(); ++r) {
      const auto& f = records[r].fields;
      if (*column >= f.size() || f[*column].empty()) continue;
      std::optional<std::string> id;
      if (id_column && *id_column < f.size() && !f[*id_column].empty()) id = f[*id_column];
      terms.push_back(MakeSourceTerm(f[*column], std::move(id)));
    }
  }
  if (terms.empty()) throw InputError("no source terms in input");
  return terms;
}

std::vector<SourceTerm> ReadSourceTermsFile(const std::string& path, const MappingConfig& config) {
  return ReadSourceTerms(ReadFile(path), config);
}

Ontology ResolveOntology(const std::string& target, const MappingConfig& config) {
  if (config.use_cache) {
    OntologyCache cache(config.cache_root.empty() ? OntologyCache::DefaultRoot()
                                                  : std::filesystem::path(config.cache_root));
    if (cache.Contains(target)) return cache.Load(target);
    if (!std::filesystem::exists(target) && !IsUrl(target)) return cache.Load(target);  // throws
  }
  return LoadOntology(target);
}

MappingTable MapTerms(std::vector<SourceTerm> terms, const Ontology& ontology,
                      const MappingConfig& config, HttpTransport* transport) {
  config.Validate();
  for (auto& t : terms) t.normalized = Normalize(t.text);
  terms = ApplyRegexTemplates(std::move(terms), config.templates);
  terms = ApplyBlocklist(std::move(terms), config.blocklist);

  std::vector<std::size_t> active;
  std::vector<std::string> queries;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].ignored()) continue;
    active.push_back(i);
    queries.push_back(terms[i].normalized);
  }

  TermSet corpus = FilterTerms(ontology, config.base_iris, config.excl_deprecated, config.term_type);

  std::vector<std::vector<Match>> matches(terms.size());
  std::map<std::size_t, std::string> failures;
  if (IsRemote(config.mapper)) {
    std::unique_ptr<HttpTransport> owned;
    if (!transport) {
      owned = MakeHttpTransport();
      transport = owned.get();
    }
    RemoteOptions options;
    options.base_url = config.remote_base_url;
    options.batch_size = config.remote_batch_size;
    std::string targets = ontology.acronym().empty() ? "all" : ontology.acronym();
    RemoteResult remote =
        config.mapper == Mapper::kBioportal
            ? BioportalAnnotate(terms, targets, config.bioportal_api_key, *transport, options)
            : ZoomaAnnotate(terms, targets, *transport, options);
    std::set<std::string> allowed;
    for (const auto* t : corpus) allowed.insert(t->iri);
    for (const auto& f : remote.failures) failures[f.source_index] = f.reason;
    for (const auto& a : remote.annotations) {
      const OntologyTerm* term = ontology.Find(a.term_iri);
      if (ontology.size() > 0 && (!term || !allowed.count(term->iri))) continue;
      Match m{term, term ? term->iri : a.term_iri,
              a.term_label.empty() && term ? term->display_label() : a.term_label, a.score,
              a.term_label};
      matches[a.source_index].push_back(std::move(m));
    }
  } else {
    auto local = RunLocal(queries, corpus, config);
    for (std::size_t k = 0; k < active.size(); ++k) matches[active[k]] = std::move(local[k]);
  }

  MappingTable table;
  table.metadata = {{"tool", std::string(kToolName)},
                    {"version", std::string(kToolVersion)},
                    {"timestamp", Timestamp()},
                    {"ontology", ontology.acronym()},
                    {"ontology_locator", ontology.source_locator()},
                    {"ontology_version", ontology.version_info().value_or("")}};
  for (auto& kv : ConfigMetadata(config)) table.metadata.push_back(std::move(kv));

  for (std::size_t i = 0; i < terms.size(); ++i) {
    const SourceTerm& term = terms[i];
    if (term.ignored()) {
      Mapping row;
      row.source = term;
      row.mapper = config.mapper;
      table.rows.push_back(std::move(row));
      continue;
    }
    auto& found = matches[i];
    std::erase_if(found, [&](const Match& m) { return m.score < config.min_score; });
    std::stable_sort(found.begin(), found.end(), [](const Match& a, const Match& b) {
      return a.score != b.score ? a.score > b.score : a.iri < b.iri;
    });
    if (found.size() > config.max_mappings) found.resize(config.max_mappings);
    if (found.empty()) {
      SourceTerm unmapped = term;
      if (auto f = failures.find(i); f != failures.end()) {
        unmapped.tags.push_back("failed:" + f->second);
      }
      table.unmapped.push_back(std::move(unmapped));
      continue;
    }
    for (std::size_t r = 0; r < found.size(); ++r) {
      Mapping row;
      row.source = term;
      row.target_iri = found[r].iri;
      row.target_curie = found[r].term ? found[r].term->curie : CurieFromIri(found[r].iri);
      row.target_label = found[r].label;
      row.score = found[r].score;
      row.mapper = config.mapper;
      row.matched_string = found[r].matched_string;
      row.rank = r + 1;
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

MappingTable MapTerms(std::vector<SourceTerm> terms, const std::string& target,
                      const MappingConfig& config, HttpTransport* transport) {
  if (IsRemote(config.mapper)) {
    Ontology remote_targets;
    remote_targets.set_acronym(target);
    remote_targets.set_source_locator(target);
    return MapTerms(std::move(terms), remote_targets, config, transport);
  }
  return MapTerms(std::move(terms), ResolveOntology(target, config), config, transport);
}

std::string ExportTermGraphs(const MappingTable& table, const Ontology& ontology,
                             const HierarchyIndex& hierarchy) {
  json doc = json::object();
  auto node = [&](const std::string& iri) {
    const OntologyTerm* t = ontology.Find(iri);
    return json{{"id", t ? t->curie : CurieFromIri(iri)},
                {"iri", iri},
                {"label", t ? t->display_label() : ""}};
  };
  for (const auto& row : table.rows) {
    if (!row.has_target()) continue;
    const OntologyTerm* term = ontology.Find(row.target_iri);
    if (!term || doc.contains(term->curie)) continue;

    std::set<std::string> members = hierarchy.AncestorsOf(term->iri);
    members.insert(term->iri);
    for (const auto& child : term->children) members.insert(child);

    json nodes = json::array();
    json links = json::array();
    for (const auto& iri : members) {
      nodes.push_back(node(iri));
      for (const auto& parent : hierarchy.ParentsOf(iri)) {
        if (!members.count(parent)) continue;
        links.push_back({{"source", ontology.Find(iri)->curie},
                         {"target", ontology.Find(parent)->curie}});
      }
    }
    doc[term->curie] = {{"term", term->curie},
                        {"label", term->display_label()},
                        {"directed", true},
                        {"nodes", std::move(nodes)},
                        {"links", std::move(links)}};
  }
  return doc.dump(2);
}

}  // namespace termmap
