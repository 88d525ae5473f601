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

#ifndef TERMMAP_EVALUATION_HPP_
#define TERMMAP_EVALUATION_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "termmap/hierarchy.hpp"
#include "termmap/mapping.hpp"
#include "termmap/ontology.hpp"

namespace termmap {

struct BenchmarkMapping {
  std::string input_text;
  std::string benchmark_iri;
  std::optional<std::string> source_id;
  bool operator==(const BenchmarkMapping&) const = default;
};

struct SssomParseResult {
  std::vector<BenchmarkMapping> mappings;
  std::size_t dropped = 0;  // rows whose subject is mapped more than once
};

// SSSOM TSV: optional '#' metadata block, then a header with at least
// subject_id, subject_label and object_id. Only subjects with exactly one
// row are kept. Throws FormatError on missing columns.
SssomParseResult ParseSssom(std::string_view bytes);

enum class Category { kSame, kMoreSpecific, kMoreGeneral, kSibling, kUnrelated };
inline constexpr std::array<Category, 5> kAllCategories = {
    Category::kSame, Category::kMoreSpecific, Category::kMoreGeneral, Category::kSibling,
    Category::kUnrelated};

std::string_view ToString(Category category);

struct Categorization {
  Category category = Category::kUnrelated;
  bool term_not_found = false;
};

// Checked in order: Same (T == H), MoreSpecific (H is an ancestor of T),
// MoreGeneral (T is an ancestor of H), Sibling (shared direct parent), else
// Unrelated. IRIs missing from the hierarchy are Unrelated and flagged.
Categorization Categorize(const std::string& tool_iri, const std::string& benchmark_iri,
                          const HierarchyIndex& hierarchy);

struct ComparisonRecord {
  std::string input_text;
  std::string tool_iri;
  std::string benchmark_iri;
  Category category = Category::kUnrelated;
  std::string note;  // "term-not-found" when T or H is outside the ontology
};

struct ComparisonSummary {
  std::array<std::size_t, 5> counts{};
  std::size_t total = 0;     // categorized records
  std::size_t unmapped = 0;  // benchmark inputs without a tool mapping

  std::size_t count(Category c) const { return counts[static_cast<std::size_t>(c)]; }
  double percent(Category c) const;
};

struct ComparisonResult {
  std::vector<ComparisonRecord> records;
  ComparisonSummary summary;
  std::vector<std::string> unmapped_inputs;
};

// Pairs every benchmark input with the tool's rank-1 mapping for the same
// input (by source id when both carry one, else by text, else by
// normalized text) and categorizes the pair. IRIs and CURIEs are both
// accepted and resolved through `ontology`.
ComparisonResult CompareSets(const MappingTable& tool_table,
                             const std::vector<BenchmarkMapping>& benchmark,
                             const Ontology& ontology, const HierarchyIndex& hierarchy);

std::string FormatComparisonCsv(const std::vector<ComparisonRecord>& records);
// Category / count / percent table with one row per category.
std::string FormatSummaryTable(const ComparisonSummary& summary, std::string_view title = "");
// Up to `per_category` example records per category.
std::string FormatSamples(const std::vector<ComparisonRecord>& records, std::size_t per_category = 3);

}  // namespace termmap

#endif  // TERMMAP_EVALUATION_HPP_
