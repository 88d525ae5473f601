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

#include "termmap/ontology.hpp"

#include <algorithm>
#include <initializer_list>

#include "json.hpp"
#include <spdlog/spdlog.h>

#include "termmap/csv.hpp"
#include "termmap/error.hpp"
#include "termmap/fetch.hpp"

namespace termmap {
namespace {

using json = nlohmann::json;

// Predicates appear as bare OBO names, CURIEs or full IRIs depending on the
// exporter, so accept all spellings.
bool PredicateIs(std::string_view pred, std::initializer_list<std::string_view> names) {
  return std::any_of(names.begin(), names.end(),
                     [&](std::string_view n) { return pred == n; });
}

bool IsPrefLabel(std::string_view p) {
  return PredicateIs(p, {"http://www.w3.org/2004/02/skos/core#prefLabel",
                         "skos:prefLabel", "prefLabel"});
}
bool IsExactSynonym(std::string_view p) {
  return PredicateIs(p, {"hasExactSynonym", "oboInOwl:hasExactSynonym",
                         "http://www.geneontology.org/formats/oboInOwl#hasExactSynonym"});
}
bool IsBroadSynonym(std::string_view p) {
  return PredicateIs(p, {"hasBroadSynonym", "oboInOwl:hasBroadSynonym",
                         "http://www.geneontology.org/formats/oboInOwl#hasBroadSynonym"});
}
bool IsAlternativeTerm(std::string_view p) {
  return PredicateIs(p, {"http://purl.obolibrary.org/obo/NCIT_P90", "NCIT:P90",
                         "http://www.ebi.ac.uk/efo/alternative_term",
                         "EFO:alternative_term", "efo:alternative_term"});
}
bool IsDefinition(std::string_view p) {
  return PredicateIs(p, {"http://purl.obolibrary.org/obo/IAO_0000115", "IAO:0000115",
                         "http://www.w3.org/2004/02/skos/core#definition",
                         "skos:definition"});
}
bool IsSubClassOf(std::string_view p) {
  return PredicateIs(p, {"is_a", "rdfs:subClassOf",
                         "http://www.w3.org/2000/01/rdf-schema#subClassOf"});
}
bool IsSubPropertyOf(std::string_view p) {
  return PredicateIs(p, {"subPropertyOf", "rdfs:subPropertyOf",
                         "http://www.w3.org/2000/01/rdf-schema#subPropertyOf"});
}
bool IsRdfType(std::string_view p) {
  return PredicateIs(p, {"rdf:type", "type", "instance_of",
                         "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"});
}
bool IsVersionInfo(std::string_view p) {
  return PredicateIs(p, {"http://www.w3.org/2002/07/owl#versionInfo", "owl:versionInfo"});
}

void AppendUnique(std::vector<std::string>& values, std::string value) {
  if (value.empty()) return;
  if (std::find(values.begin(), values.end(), value) == values.end()) {
    values.push_back(std::move(value));
  }
}

std::string StringOr(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) return {};
  return it->get<std::string>();
}

bool ParseBool(std::string_view text) {
  return text == "true" || text == "True" || text == "TRUE" || text == "1";
}

}  // namespace

std::string_view ToString(TermType type) {
  return type == TermType::kClass ? "Class" : "Property";
}

std::string_view ToString(TermTypeFilter filter) {
  switch (filter) {
    case TermTypeFilter::kClasses: return "classes";
    case TermTypeFilter::kProperties: return "properties";
    case TermTypeFilter::kBoth: return "both";
  }
  return "classes";
}

TermType ParseTermType(std::string_view text) {
  if (text.empty() || text == "Class" || text == "class" || text == "CLASS") {
    return TermType::kClass;
  }
  if (text == "Property" || text == "property" || text == "PROPERTY") {
    return TermType::kProperty;
  }
  throw FormatError("unknown term type '" + std::string(text) + "'");
}

TermTypeFilter ParseTermTypeFilter(std::string_view text) {
  if (text == "classes" || text == "class") return TermTypeFilter::kClasses;
  if (text == "properties" || text == "property") return TermTypeFilter::kProperties;
  if (text == "both" || text == "any") return TermTypeFilter::kBoth;
  throw ConfigError("term type must be one of classes, properties, both (got '" +
                    std::string(text) + "')");
}

const std::string& OntologyTerm::display_label() const {
  static const std::string kEmpty;
  return labels.empty() ? kEmpty : labels.front();
}

Ontology::Ontology(std::string acronym, std::string source_locator,
                   std::map<std::string, OntologyTerm> terms,
                   std::optional<std::string> version_info)
    : acronym_(std::move(acronym)),
      source_locator_(std::move(source_locator)),
      version_info_(std::move(version_info)),
      terms_(std::move(terms)) {
  Reindex();
}

void Ontology::Reindex() {
  // Children are derived so that parent/child links always agree.
  for (auto& [iri, term] : terms_) term.children.clear();
  for (auto& [iri, term] : terms_) {
    for (const auto& parent : term.parents) {
      auto it = terms_.find(parent);
      if (it == terms_.end()) {
        dangling_.insert(parent);
      } else {
        it->second.children.insert(iri);
      }
    }
    for (const auto& instance : term.instances) {
      if (!terms_.count(instance)) dangling_.insert(instance);
    }
  }
  for (const auto& [iri, term] : terms_) {
    if (!term.curie.empty()) curie_to_iri_.emplace(term.curie, iri);
  }
}

const OntologyTerm* Ontology::Find(std::string_view iri_or_curie) const {
  auto key = Resolve(iri_or_curie);
  if (!key) return nullptr;
  return &terms_.at(*key);
}

std::optional<std::string> Ontology::Resolve(std::string_view iri_or_curie) const {
  std::string key(iri_or_curie);
  if (terms_.count(key)) return key;
  auto it = curie_to_iri_.find(key);
  if (it != curie_to_iri_.end()) return it->second;
  return std::nullopt;
}

std::string CurieFromIri(std::string_view iri) {
  if (iri.find("://") == std::string_view::npos) return std::string(iri);
  auto cut = iri.find_last_of("/#");
  std::string local(iri.substr(cut + 1));
  auto underscore = local.find('_');
  if (underscore != std::string::npos && underscore > 0) {
    local[underscore] = ':';
    return local;
  }
  return std::string(iri);
}

Ontology ParseObograph(std::string_view bytes, ObographParseStats* stats) {
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed OBO Graph JSON: ") + e.what(), e.byte);
  }
  if (!doc.is_object() || !doc.contains("graphs") || !doc["graphs"].is_array()) {
    throw ParseError("OBO Graph JSON has no 'graphs' array", 0);
  }

  ObographParseStats local_stats;
  std::map<std::string, OntologyTerm> terms;
  std::optional<std::string> version;

  for (const auto& graph : doc["graphs"]) {
    if (!graph.is_object()) continue;
    if (auto meta = graph.find("meta"); meta != graph.end() && meta->is_object()) {
      if (meta->contains("version") && (*meta)["version"].is_string() && !version) {
        version = (*meta)["version"].get<std::string>();
      }
      if (auto bpv = meta->find("basicPropertyValues");
          bpv != meta->end() && bpv->is_array()) {
        for (const auto& pv : *bpv) {
          if (pv.is_object() && IsVersionInfo(StringOr(pv, "pred")) && !version) {
            version = StringOr(pv, "val");
          }
        }
      }
    }

    if (auto nodes = graph.find("nodes"); nodes != graph.end() && nodes->is_array()) {
      for (const auto& node : *nodes) {
        ++local_stats.nodes_seen;
        std::string id = node.is_object() ? StringOr(node, "id") : std::string();
        if (id.empty()) {
          ++local_stats.nodes_missing_id;
          continue;
        }
        std::string type = StringOr(node, "type");
        TermType term_type;
        if (type == "CLASS") {
          term_type = TermType::kClass;
        } else if (type == "PROPERTY") {
          term_type = TermType::kProperty;
        } else {
          ++local_stats.nodes_skipped_type;
          continue;
        }
        auto [it, inserted] = terms.try_emplace(id);
        OntologyTerm& term = it->second;
        if (inserted) {
          term.iri = id;
          term.curie = CurieFromIri(id);
          term.term_type = term_type;
        }
        AppendUnique(term.labels, StringOr(node, "lbl"));
        auto meta = node.find("meta");
        if (meta == node.end() || !meta->is_object()) continue;
        if (auto def = meta->find("definition"); def != meta->end() && def->is_object()) {
          AppendUnique(term.definitions, StringOr(*def, "val"));
        }
        if (auto syns = meta->find("synonyms"); syns != meta->end() && syns->is_array()) {
          for (const auto& syn : *syns) {
            if (!syn.is_object()) continue;
            std::string pred = StringOr(syn, "pred");
            if (IsExactSynonym(pred)) {
              AppendUnique(term.exact_synonyms, StringOr(syn, "val"));
            } else if (IsBroadSynonym(pred)) {
              AppendUnique(term.broad_synonyms, StringOr(syn, "val"));
            }
          }
        }
        if (auto bpv = meta->find("basicPropertyValues");
            bpv != meta->end() && bpv->is_array()) {
          for (const auto& pv : *bpv) {
            if (!pv.is_object()) continue;
            std::string pred = StringOr(pv, "pred");
            if (IsPrefLabel(pred)) {
              AppendUnique(term.labels, StringOr(pv, "val"));
            } else if (IsAlternativeTerm(pred)) {
              AppendUnique(term.exact_synonyms, StringOr(pv, "val"));
            } else if (IsDefinition(pred)) {
              AppendUnique(term.definitions, StringOr(pv, "val"));
            }
          }
        }
        if (auto dep = meta->find("deprecated"); dep != meta->end() && dep->is_boolean()) {
          term.deprecated = term.deprecated || dep->get<bool>();
        }
      }
    }
  }

  if (terms.empty()) {
    if (stats) *stats = local_stats;
    throw EmptyOntologyError("ontology contains no parsable CLASS or PROPERTY nodes");
  }

  for (const auto& graph : doc["graphs"]) {
    if (!graph.is_object()) continue;
    auto edges = graph.find("edges");
    if (edges == graph.end() || !edges->is_array()) continue;
    for (const auto& edge : *edges) {
      if (!edge.is_object()) continue;
      std::string sub = StringOr(edge, "sub");
      std::string pred = StringOr(edge, "pred");
      std::string obj = StringOr(edge, "obj");
      if (sub.empty() || obj.empty()) continue;
      if (IsRdfType(pred)) {
        auto cls = terms.find(obj);
        if (cls != terms.end() && cls->second.term_type == TermType::kClass) {
          cls->second.instances.insert(sub);
        }
        continue;
      }
      auto child = terms.find(sub);
      if (child == terms.end()) continue;
      bool hierarchical =
          (child->second.term_type == TermType::kClass && IsSubClassOf(pred)) ||
          (child->second.term_type == TermType::kProperty && IsSubPropertyOf(pred));
      if (hierarchical && sub != obj) child->second.parents.insert(obj);
    }
  }

  if (local_stats.nodes_missing_id > 0) {
    spdlog::warn("skipped {} OBO Graph node(s) without an id",
                 local_stats.nodes_missing_id);
  }
  if (stats) *stats = local_stats;
  return Ontology("", "", std::move(terms), std::move(version));
}

Ontology ParseTermTable(std::string_view bytes, char separator) {
  auto records = csv::Parse(bytes, separator);
  if (records.empty()) throw FormatError("term table is empty (no header row)");
  const auto& header = records.front().fields;
  auto iri_col = csv::ColumnIndex(header, "iri");
  auto label_col = csv::ColumnIndex(header, "label");
  if (!iri_col || !label_col) {
    throw FormatError("term table header must declare 'iri' and 'label' columns");
  }
  auto col = [&](std::string_view name) { return csv::ColumnIndex(header, name); };
  auto curie_col = col("curie");
  auto exact_col = col("exact_synonyms");
  auto broad_col = col("broad_synonyms");
  auto def_col = col("definitions");
  auto parents_col = col("parents");
  auto instances_col = col("instances");
  auto deprecated_col = col("deprecated");
  auto type_col = col("term_type");

  std::map<std::string, OntologyTerm> terms;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& row = records[r].fields;
    auto cell = [&](std::optional<std::size_t> c) -> std::string_view {
      if (!c || *c >= row.size()) return {};
      return row[*c];
    };
    OntologyTerm term;
    term.iri = std::string(cell(iri_col));
    if (term.iri.empty()) {
      throw FormatError("line " + std::to_string(records[r].line) + ": empty iri");
    }
    term.curie = curie_col ? std::string(cell(curie_col)) : CurieFromIri(term.iri);
    term.labels = csv::SplitList(cell(label_col));
    term.exact_synonyms = csv::SplitList(cell(exact_col));
    term.broad_synonyms = csv::SplitList(cell(broad_col));
    term.definitions = csv::SplitList(cell(def_col));
    for (auto& p : csv::SplitList(cell(parents_col))) term.parents.insert(std::move(p));
    for (auto& i : csv::SplitList(cell(instances_col))) term.instances.insert(std::move(i));
    term.deprecated = ParseBool(cell(deprecated_col));
    term.term_type = ParseTermType(cell(type_col));
    std::string iri = term.iri;
    if (!terms.emplace(iri, std::move(term)).second) {
      throw FormatError("duplicate IRI in term table: " + iri);
    }
  }
  return Ontology("", "", std::move(terms));
}

std::string SerializeTermTable(const Ontology& ontology, char separator) {
  std::string out = csv::FormatRow({"iri", "curie", "label", "exact_synonyms",
                                    "broad_synonyms", "definitions", "parents",
                                    "instances", "deprecated", "term_type"},
                                   separator);
  out.push_back('\n');
  for (const auto& [iri, term] : ontology.terms()) {
    std::vector<std::string> parents(term.parents.begin(), term.parents.end());
    std::vector<std::string> instances(term.instances.begin(), term.instances.end());
    out += csv::FormatRow({term.iri, term.curie, csv::JoinList(term.labels),
                           csv::JoinList(term.exact_synonyms),
                           csv::JoinList(term.broad_synonyms),
                           csv::JoinList(term.definitions), csv::JoinList(parents),
                           csv::JoinList(instances), term.deprecated ? "true" : "false",
                           std::string(ToString(term.term_type))},
                          separator);
    out.push_back('\n');
  }
  return out;
}

Ontology LoadOntology(const std::string& locator, const std::string& acronym) {
  std::string bytes = FetchLocator(locator);
  auto first = bytes.find_first_not_of(" \t\r\n");
  auto ends_with = [&](std::string_view suffix) {
    return locator.size() >= suffix.size() &&
           locator.compare(locator.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  Ontology ontology;
  if (first != std::string::npos && bytes[first] == '{') {
    ontology = ParseObograph(bytes);
  } else {
    ontology = ParseTermTable(bytes, ends_with(".tsv") ? '\t' : ',');
  }
  ontology.set_acronym(acronym);
  ontology.set_source_locator(locator);
  return ontology;
}

TermSet FilterTerms(const TermSet& terms, const std::vector<std::string>& base_iris,
                    bool exclude_deprecated, TermTypeFilter term_type) {
  TermSet out;
  for (const OntologyTerm* term : terms) {
    if (exclude_deprecated && term->deprecated) continue;
    if (term_type == TermTypeFilter::kClasses && term->term_type != TermType::kClass) {
      continue;
    }
    if (term_type == TermTypeFilter::kProperties &&
        term->term_type != TermType::kProperty) {
      continue;
    }
    if (!base_iris.empty() &&
        std::none_of(base_iris.begin(), base_iris.end(), [&](const std::string& base) {
          return term->iri.compare(0, base.size(), base) == 0;
        })) {
      continue;
    }
    out.push_back(term);
  }
  std::sort(out.begin(), out.end(),
            [](const OntologyTerm* a, const OntologyTerm* b) { return a->iri < b->iri; });
  return out;
}

TermSet FilterTerms(const Ontology& ontology, const std::vector<std::string>& base_iris,
                    bool exclude_deprecated, TermTypeFilter term_type) {
  TermSet all;
  all.reserve(ontology.size());
  for (const auto& [iri, term] : ontology.terms()) all.push_back(&term);
  return FilterTerms(all, base_iris, exclude_deprecated, term_type);
}

}  // namespace termmap
