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

#include "termmap/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>

#include "CLI11.hpp"
#include "termmap/cache.hpp"
#include "termmap/engine.hpp"
#include "termmap/error.hpp"
#include "termmap/evaluation.hpp"
#include "termmap/fetch.hpp"
#include "termmap/hierarchy.hpp"
#include "termmap/similarity.hpp"
#include "termmap/unicode.hpp"

namespace termmap {
namespace {

std::string Suggest(const CLI::App& app, const std::string& unknown) {
  std::string best;
  std::size_t best_distance = std::numeric_limits<std::size_t>::max();
  auto flag = unicode::Decode(unknown);
  for (const CLI::Option* opt : app.get_options()) {
    for (const auto& name : opt->get_lnames()) {
      std::string candidate = "--" + name;
      std::size_t d = LevenshteinDistance(flag, unicode::Decode(candidate));
      if (d < best_distance) {
        best_distance = d;
        best = candidate;
      }
    }
  }
  return best_distance <= 3 ? best : std::string();
}

void ReportUnknownFlags(const CLI::App& app, const std::vector<std::string>& args,
                        std::ostream& err) {
  const CLI::App* scope = &app;
  for (const CLI::App* sub : app.get_subcommands()) scope = sub;
  for (const auto& arg : args) {
    if (arg.rfind("--", 0) != 0 || arg == "--") continue;
    std::string name = arg.substr(0, arg.find('='));
    if (scope->get_option_no_throw(name) || app.get_option_no_throw(name)) continue;
    err << "error: unknown flag " << name;
    if (std::string s = Suggest(*scope, name); !s.empty()) err << " (did you mean " << s << "?)";
    err << "\n";
  }
}

char ParseSeparator(const std::string& text) {
  if (text == "\\t" || text == "tab" || text == "\t") return '\t';
  if (text.size() != 1) throw ConfigError("separator must be a single character (or \\t)");
  return text[0];
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error("cannot write " + path);
}

std::vector<std::string> SplitCommas(const std::vector<std::string>& values) {
  std::vector<std::string> out;
  for (const auto& v : values) {
    std::size_t start = 0;
    while (start <= v.size()) {
      std::size_t end = v.find(',', start);
      if (end == std::string::npos) end = v.size();
      if (end > start) out.push_back(v.substr(start, end - start));
      start = end + 1;
    }
  }
  return out;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"termmap: map free-text terms to ontology terms", "termmap"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  MappingConfig config;
  std::string source, target, mapper = "tfidf", term_type = "classes", separator = ",";
  std::string blocklist_file, templates_file, cache_dir, csv_column, ids_column, output;
  std::vector<std::string> base_iris;

  CLI::App* map_cmd = app.add_subcommand("map", "Map source terms to an ontology");
  map_cmd->add_option("--source", source,
                      "Terms to map: a text file with one term per line, or a table file "
                      "(see --csv-column)")->required();
  map_cmd->add_option("--target", target,
                      "Target ontology: file path, URL, or cached acronym with --use-cache. "
                      "For bioportal/zooma: comma-separated acronyms (e.g. EFO,HPO) or 'all'")
      ->required();
  map_cmd->add_option("--output", output, "Write the mapping table to this CSV file (default: stdout)");
  map_cmd->add_option("--mapper", mapper,
                      "Matching method: levenshtein, jaro, jarowinkler, jaccard, indel, tfidf, "
                      "zooma or bioportal")
      ->capture_default_str();
  map_cmd->add_option("--top", config.max_mappings, "Largest number of mappings kept per source term")
      ->capture_default_str();
  map_cmd->add_option("--min-score", config.min_score,
                      "Lowest accepted similarity score, between 0 and 1 (1 is an exact match)")
      ->capture_default_str();
  map_cmd->add_flag("--excl-deprecated", config.excl_deprecated,
                    "Leave out ontology terms flagged owl:deprecated");
  map_cmd->add_option("--base-iris", base_iris,
                      "Only map to ontology terms whose IRI starts with one of these prefixes "
                      "(comma-separated or repeated)");
  map_cmd->add_option("--csv-column", csv_column,
                      "Column holding the terms when --source is a table; ignored otherwise");
  map_cmd->add_option("--ids-column", ids_column, "Column holding identifiers of the source terms");
  map_cmd->add_option("--separator", separator,
                      "Cell separator of a table --source (use \\t for tabs)")
      ->capture_default_str();
  map_cmd->add_option("--term-type", term_type,
                      "Term types to map to: classes, properties or both")
      ->capture_default_str();
  map_cmd->add_flag("--incl-unmapped", config.incl_unmapped,
                    "Also list source terms that got no mapping at or above --min-score");
  map_cmd->add_flag("--use-cache", config.use_cache,
                    "Read --target as the acronym of a previously cached ontology");
  map_cmd->add_flag("--save-graphs", config.save_graphs,
                    "Also write the hierarchy neighborhood of every mapped term "
                    "(<output>.graphs.json)");
  map_cmd->add_option("--ngram-size", config.ngram_size, "Character n-gram size of the tfidf mapper")
      ->capture_default_str();
  map_cmd->add_flag("--include-broad", config.include_broad_synonyms,
                    "Match against broad synonyms as well");
  map_cmd->add_option("--blocklist", blocklist_file,
                      "File of regular expressions (one per line); matching terms are not "
                      "mapped and are tagged 'ignored'");
  map_cmd->add_option("--templates", templates_file,
                      "File of regular expressions with one capture group; a matching term is "
                      "replaced by the captured text before mapping");
  map_cmd->add_option("--cache-dir", cache_dir, "Ontology cache directory (env TERMMAP_CACHE_DIR)");
  map_cmd->add_option("--api-key", config.bioportal_api_key,
                      "BioPortal API key (env BIOPORTAL_API_KEY)");
  map_cmd->add_option("--remote-url", config.remote_base_url,
                      "Override the base URL of the bioportal/zooma service");
  map_cmd->add_option("--threads", config.threads, "Worker threads (0: all cores)");

  std::string cache_locator, cache_acronym, cache_table;
  CLI::App* cache_cmd = app.add_subcommand("cache", "Cache processed ontologies under acronyms");
  cache_cmd->add_option("--locator", cache_locator, "Ontology file path or URL to cache");
  cache_cmd->add_option("--acronym", cache_acronym, "Name to store the ontology under");
  cache_cmd->add_option("--table", cache_table,
                        "CSV with columns acronym,locator: cache every listed ontology");
  cache_cmd->add_option("--cache-dir", cache_dir, "Ontology cache directory (env TERMMAP_CACHE_DIR)");
  cache_cmd->add_flag("--list", "List cached acronyms");

  std::string tool_output, benchmark, eval_ontology, report, samples_out;
  bool eval_use_cache = false;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Compare mappings against a verified SSSOM set");
  eval_cmd->add_option("--tool-output", tool_output, "Mapping table produced by `termmap map`")
      ->required();
  eval_cmd->add_option("--benchmark", benchmark, "Benchmark mappings (SSSOM TSV)")->required();
  eval_cmd->add_option("--ontology", eval_ontology, "Ontology whose hierarchy decides categories")
      ->required();
  eval_cmd->add_option("--report", report, "Write per-input comparison records to this CSV");
  eval_cmd->add_flag("--use-cache", eval_use_cache, "Read --ontology as a cached acronym");
  eval_cmd->add_option("--cache-dir", cache_dir, "Ontology cache directory (env TERMMAP_CACHE_DIR)");

  std::string graph_mappings, graph_ontology, graph_output;
  bool graph_use_cache = false;
  CLI::App* graphs_cmd = app.add_subcommand("graphs", "Export term neighborhoods of mapped terms");
  graphs_cmd->add_option("--mappings", graph_mappings, "Mapping table CSV")->required();
  graphs_cmd->add_option("--ontology", graph_ontology, "Ontology path, URL or cached acronym")
      ->required();
  graphs_cmd->add_option("--output", graph_output, "Output JSON file (default: stdout)");
  graphs_cmd->add_flag("--use-cache", graph_use_cache, "Read --ontology as a cached acronym");
  graphs_cmd->add_option("--cache-dir", cache_dir, "Ontology cache directory (env TERMMAP_CACHE_DIR)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ExtrasError&) {
    ReportUnknownFlags(app, args, err);
    err << "Run with --help for usage.\n";
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  }
  auto cache_root = [&] {
    return cache_dir.empty() ? OntologyCache::DefaultRoot() : std::filesystem::path(cache_dir);
  };

  try {
    if (map_cmd->parsed()) {
      auto parsed_mapper = ParseMapper(mapper);
      if (!parsed_mapper) {
        err << "error: unknown mapper '" << mapper << "'\n";
        return kExitUsage;
      }
      config.mapper = *parsed_mapper;
      try {
        config.term_type = ParseTermTypeFilter(term_type);
        config.separator = ParseSeparator(separator);
        config.Validate();
      } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
      }
      config.base_iris = SplitCommas(base_iris);
      if (!csv_column.empty()) config.csv_column = csv_column;
      if (!ids_column.empty()) config.source_terms_ids_column = ids_column;
      if (!output.empty()) config.output_file = output;
      config.cache_root = cache_root().string();
      if (!blocklist_file.empty()) config.blocklist = ParsePatternFile(ReadFile(blocklist_file));
      if (!templates_file.empty()) config.templates = ParsePatternFile(ReadFile(templates_file));
      if (config.bioportal_api_key.empty()) {
        if (const char* key = std::getenv("BIOPORTAL_API_KEY")) config.bioportal_api_key = key;
      }

      auto terms = ReadSourceTermsFile(source, config);
      MappingTable table;
      std::optional<Ontology> ontology;
      if (config.mapper == Mapper::kZooma || config.mapper == Mapper::kBioportal) {
        table = MapTerms(std::move(terms), target, config);
      } else {
        ontology = ResolveOntology(target, config);
        if (ontology->acronym().empty() && config.use_cache) ontology->set_acronym(target);
        table = MapTerms(std::move(terms), *ontology, config);
      }
      if (config.output_file) {
        WriteMappingTable(table, *config.output_file);
      } else {
        out << FormatMappingTable(table);
      }
      if (config.save_graphs && ontology) {
        std::string graphs = ExportTermGraphs(table, *ontology, BuildHierarchy(*ontology));
        std::string path = config.output_file ? *config.output_file + ".graphs.json"
                                              : std::string("term-graphs.json");
        WriteText(path, graphs);
      }
      return kExitOk;
    }

    if (cache_cmd->parsed()) {
      OntologyCache cache(cache_root());
      if (cache_cmd->count("--list")) {
        for (const auto& a : cache.Acronyms()) out << a << "\n";
        return kExitOk;
      }
      if (!cache_table.empty()) {
        auto result = cache.CacheOntologySet(ParseOntologySetTable(ReadFile(cache_table)));
        for (const auto& e : result.entries) {
          out << "cached " << e.acronym << " (" << e.term_count << " terms)\n";
        }
        for (const auto& w : result.warnings) err << "warning: " << w << "\n";
        for (const auto& f : result.failures) {
          err << "failed " << f.acronym << " (" << f.locator << "): " << f.reason << "\n";
        }
        return result.failures.empty() ? kExitOk : kExitRuntime;
      }
      if (cache_locator.empty() || cache_acronym.empty()) {
        err << "error: cache needs --locator and --acronym, or --table\n";
        return kExitUsage;
      }
      CacheEntry entry = cache.CacheOntology(cache_locator, cache_acronym);
      out << "cached " << entry.acronym << " (" << entry.term_count << " terms) at "
          << entry.path.string() << "\n";
      return kExitOk;
    }

    if (eval_cmd->parsed()) {
      MappingConfig eval_config;
      eval_config.use_cache = eval_use_cache;
      eval_config.cache_root = cache_root().string();
      Ontology ontology = ResolveOntology(eval_ontology, eval_config);
      HierarchyIndex hierarchy = BuildHierarchy(ontology);
      MappingTable table = ReadMappingTable(tool_output);
      SssomParseResult bench = ParseSssom(ReadFile(benchmark));
      ComparisonResult result = CompareSets(table, bench.mappings, ontology, hierarchy);
      out << FormatSummaryTable(result.summary, "Comparison against " + benchmark);
      out << "Benchmark rows dropped (subject mapped more than once): " << bench.dropped << "\n";
      if (!report.empty()) WriteText(report, FormatComparisonCsv(result.records));
      return kExitOk;
    }

    if (graphs_cmd->parsed()) {
      MappingConfig graph_config;
      graph_config.use_cache = graph_use_cache;
      graph_config.cache_root = cache_root().string();
      Ontology ontology = ResolveOntology(graph_ontology, graph_config);
      std::string doc =
          ExportTermGraphs(ReadMappingTable(graph_mappings), ontology, BuildHierarchy(ontology));
      if (graph_output.empty()) {
        out << doc << "\n";
      } else {
        WriteText(graph_output, doc);
      }
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace termmap
