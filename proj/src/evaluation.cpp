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

#include "termmap/evaluation.hpp"

#include <cstdio>
#include <map>
#include <unordered_map>

#include "termmap/csv.hpp"
#include "termmap/error.hpp"

namespace termmap {

std::string_view ToString(Category category) {
  switch (category) {
    case Category::kSame: return "Same";
    case Category::kMoreSpecific: return "More Specific";
    case Category::kMoreGeneral: return "More General";
    case Category::kSibling: return "Sibling";
    case Category::kUnrelated: return "Unrelated";
  }
  return "Unrelated";
}

double ComparisonSummary::percent(Category c) const {
  return total == 0 ? 0.0 : 100.0 * static_cast<double>(count(c)) / static_cast<double>(total);
}

SssomParseResult ParseSssom(std::string_view bytes) {
  // Drop the YAML metadata block.
  std::string body;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    std::size_t end = bytes.find('\n', pos);
    std::size_t next = end == std::string_view::npos ? bytes.size() : end + 1;
    if (bytes[pos] != '#') body.append(bytes.substr(pos, next - pos));
    pos = next;
  }
  auto records = csv::Parse(body, '\t');
  if (records.empty()) throw FormatError("SSSOM file has no header row");
  const auto& header = records.front().fields;
  auto subject_id = csv::ColumnIndex(header, "subject_id");
  auto subject_label = csv::ColumnIndex(header, "subject_label");
  auto object_id = csv::ColumnIndex(header, "object_id");
  if (!subject_id || !subject_label || !object_id) {
    throw FormatError("SSSOM file must have subject_id, subject_label and object_id columns");
  }

  std::vector<BenchmarkMapping> rows;
  std::unordered_map<std::string, std::size_t> subject_count;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& f = records[r].fields;
    auto cell = [&](std::size_t c) { return c < f.size() ? f[c] : std::string(); };
    BenchmarkMapping m;
    m.source_id = cell(*subject_id);
    m.input_text = cell(*subject_label);
    m.benchmark_iri = cell(*object_id);
    if (m.input_text.empty()) m.input_text = *m.source_id;
    // Subjects without an id are keyed by their label.
    std::string key = m.source_id->empty() ? m.input_text : *m.source_id;
    if (m.source_id->empty()) m.source_id.reset();
    ++subject_count[key];
    rows.push_back(std::move(m));
  }
  SssomParseResult result;
  for (auto& m : rows) {
    std::string key = m.source_id ? *m.source_id : m.input_text;
    if (subject_count[key] == 1) {
      result.mappings.push_back(std::move(m));
    } else {
      ++result.dropped;
    }
  }
  return result;
}

Categorization Categorize(const std::string& tool_iri, const std::string& benchmark_iri,
                          const HierarchyIndex& hierarchy) {
  if (tool_iri == benchmark_iri) return {Category::kSame, false};
  if (!hierarchy.ancestors.count(tool_iri) || !hierarchy.ancestors.count(benchmark_iri)) {
    return {Category::kUnrelated, true};
  }
  if (hierarchy.AncestorsOf(tool_iri).count(benchmark_iri)) return {Category::kMoreSpecific, false};
  if (hierarchy.AncestorsOf(benchmark_iri).count(tool_iri)) return {Category::kMoreGeneral, false};
  const auto& tp = hierarchy.ParentsOf(tool_iri);
  for (const auto& p : hierarchy.ParentsOf(benchmark_iri)) {
    if (tp.count(p)) return {Category::kSibling, false};
  }
  return {Category::kUnrelated, false};
}

ComparisonResult CompareSets(const MappingTable& tool_table,
                             const std::vector<BenchmarkMapping>& benchmark,
                             const Ontology& ontology, const HierarchyIndex& hierarchy) {
  std::unordered_map<std::string, const Mapping*> by_id, by_text, by_normalized;
  for (const auto& row : tool_table.rows) {
    if (!row.has_target() || row.rank != 1) continue;
    if (row.source.id) by_id.emplace(*row.source.id, &row);
    by_text.emplace(row.source.text, &row);
    by_normalized.emplace(row.source.normalized, &row);
  }
  auto resolve = [&](const std::string& id) { return ontology.Resolve(id).value_or(id); };

  ComparisonResult result;
  for (const auto& bench : benchmark) {
    const Mapping* row = nullptr;
    if (bench.source_id) {
      if (auto it = by_id.find(*bench.source_id); it != by_id.end()) row = it->second;
    }
    if (!row) {
      if (auto it = by_text.find(bench.input_text); it != by_text.end()) row = it->second;
    }
    if (!row) {
      if (auto it = by_normalized.find(Normalize(bench.input_text)); it != by_normalized.end()) {
        row = it->second;
      }
    }
    if (!row) {
      ++result.summary.unmapped;
      result.unmapped_inputs.push_back(bench.input_text);
      continue;
    }
    ComparisonRecord record;
    record.input_text = bench.input_text;
    record.tool_iri = resolve(row->target_iri);
    record.benchmark_iri = resolve(bench.benchmark_iri);
    Categorization c = Categorize(record.tool_iri, record.benchmark_iri, hierarchy);
    record.category = c.category;
    if (c.term_not_found) record.note = "term-not-found";
    ++result.summary.counts[static_cast<std::size_t>(c.category)];
    ++result.summary.total;
    result.records.push_back(std::move(record));
  }
  return result;
}

std::string FormatComparisonCsv(const std::vector<ComparisonRecord>& records) {
  std::string out = "Input,Tool Mapping,Benchmark Mapping,Category,Note\n";
  for (const auto& r : records) {
    out += csv::FormatRow({r.input_text, r.tool_iri, r.benchmark_iri,
                           std::string(ToString(r.category)), r.note});
    out.push_back('\n');
  }
  return out;
}

std::string FormatSummaryTable(const ComparisonSummary& summary, std::string_view title) {
  std::string out;
  char line[128];
  if (!title.empty()) out += std::string(title) + "\n";
  std::snprintf(line, sizeof(line), "%-14s %8s %9s\n", "Category", "Count", "Percent");
  out += line;
  for (Category c : kAllCategories) {
    std::snprintf(line, sizeof(line), "%-14s %8zu %8.2f%%\n", std::string(ToString(c)).c_str(),
                  summary.count(c), summary.percent(c));
    out += line;
  }
  std::snprintf(line, sizeof(line), "%-14s %8zu\n", "Total", summary.total);
  out += line;
  std::snprintf(line, sizeof(line), "%-14s %8zu\n", "Unmapped", summary.unmapped);
  out += line;
  return out;
}

std::string FormatSamples(const std::vector<ComparisonRecord>& records, std::size_t per_category) {
  std::string out;
  for (Category c : kAllCategories) {
    out += std::string(ToString(c)) + ":\n";
    std::size_t shown = 0;
    for (const auto& r : records) {
      if (r.category != c || shown >= per_category) continue;
      out += "  " + r.input_text + "  tool=" + r.tool_iri + "  benchmark=" + r.benchmark_iri + "\n";
      ++shown;
    }
  }
  return out;
}

}  // namespace termmap
