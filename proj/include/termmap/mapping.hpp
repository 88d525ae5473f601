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

#ifndef TERMMAP_MAPPING_HPP_
#define TERMMAP_MAPPING_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "termmap/ontology.hpp"
#include "termmap/preprocess.hpp"

namespace termmap {

enum class Mapper {
  kLevenshtein,
  kJaro,
  kJaroWinkler,
  kJaccard,
  kIndel,
  kTfidf,
  kZooma,
  kBioportal,
};

enum class MappingType { kExact, kBroad, kNarrow };
enum class Approval { kUnapproved, kApproved, kRejected };

std::string_view ToString(Mapper mapper);
std::string_view ToString(MappingType type);
std::string_view ToString(Approval approval);
std::optional<Mapper> ParseMapper(std::string_view text);
std::optional<MappingType> ParseMappingType(std::string_view text);
std::optional<Approval> ParseApproval(std::string_view text);

inline constexpr std::string_view kUnmappedTag = "unmapped";

struct MappingConfig {
  Mapper mapper = Mapper::kTfidf;
  std::size_t max_mappings = 1;
  double min_score = 0.3;
  bool excl_deprecated = false;
  std::vector<std::string> base_iris;
  TermTypeFilter term_type = TermTypeFilter::kClasses;
  bool incl_unmapped = false;
  std::size_t ngram_size = 3;
  bool include_broad_synonyms = false;
  std::optional<std::string> csv_column;
  std::optional<std::string> source_terms_ids_column;
  char separator = ',';
  bool use_cache = false;
  bool save_graphs = false;
  std::optional<std::string> output_file;
  std::vector<std::string> templates;  // regex rewrite patterns
  std::vector<std::string> blocklist;  // regex patterns of terms to ignore

  // Remote annotators.
  std::string bioportal_api_key;
  std::string remote_base_url;
  std::size_t remote_batch_size = 1;

  std::string cache_root;   // empty: OntologyCache::DefaultRoot()
  std::size_t threads = 0;  // 0: hardware concurrency

  // Throws ConfigError on out-of-range values.
  void Validate() const;

  bool operator==(const MappingConfig&) const = default;
};

// A row of a mapping table. Rows without a target (ignored or unmapped
// terms) have an empty target_iri and rank 0.
struct Mapping {
  SourceTerm source;
  std::string target_iri;
  std::string target_curie;
  std::string target_label;
  double score = 0.0;
  Mapper mapper = Mapper::kTfidf;
  std::string matched_string;
  MappingType mapping_type = MappingType::kExact;
  Approval approval = Approval::kUnapproved;
  std::size_t rank = 0;

  bool has_target() const { return !target_iri.empty(); }
  bool operator==(const Mapping&) const = default;
};

struct MappingTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<Mapping> rows;       // input order, rank order within a term
  std::vector<SourceTerm> unmapped;

  const std::string* Metadata(std::string_view key) const;
  // Unmapped terms are written only when metadata says incl_unmapped: true.
  bool include_unmapped() const;

  bool operator==(const MappingTable&) const = default;
};

inline constexpr std::string_view kMappingTableHeader =
    "Source Term,Source Term ID,Tags,Mapped Term Label,Mapped Term CURIE,Mapped Term IRI,"
    "Mapping Score,Rank,Mapper,Matched String,Mapping Type,Approval";

// CSV with leading "# key: value" metadata lines. Scores use 3 decimals.
std::string FormatMappingTable(const MappingTable& table);
void WriteMappingTable(const MappingTable& table, const std::string& path);
// Exact inverse of FormatMappingTable. Throws FormatError naming the first
// bad line.
MappingTable ParseMappingTable(std::string_view content);
MappingTable ReadMappingTable(const std::string& path);

}  // namespace termmap

#endif  // TERMMAP_MAPPING_HPP_
