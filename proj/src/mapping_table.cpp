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

#include <cmath>
#include <cstdio>
#include <fstream>

#include "termmap/csv.hpp"
#include "termmap/error.hpp"
#include "termmap/fetch.hpp"
#include "termmap/mapping.hpp"

namespace termmap {
namespace {

constexpr std::size_t kColumns = 12;

std::string FormatScore(double score) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", score);
  return buf;
}

std::string OneLine(std::string value) {
  for (char& c : value) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return value;
}

std::vector<std::string> RowFields(const Mapping& m) {
  return {m.source.text,
          m.source.id.value_or(""),
          csv::JoinList(m.source.tags),
          m.target_label,
          m.target_curie,
          m.target_iri,
          m.has_target() ? FormatScore(m.score) : "",
          m.has_target() ? std::to_string(m.rank) : "",
          std::string(ToString(m.mapper)),
          m.matched_string,
          std::string(ToString(m.mapping_type)),
          std::string(ToString(m.approval))};
}

[[noreturn]] void Fail(std::size_t line, const std::string& what) {
  throw FormatError("mapping table line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::string_view ToString(Mapper mapper) {
  switch (mapper) {
    case Mapper::kLevenshtein: return "levenshtein";
    case Mapper::kJaro: return "jaro";
    case Mapper::kJaroWinkler: return "jarowinkler";
    case Mapper::kJaccard: return "jaccard";
    case Mapper::kIndel: return "indel";
    case Mapper::kTfidf: return "tfidf";
    case Mapper::kZooma: return "zooma";
    case Mapper::kBioportal: return "bioportal";
  }
  return "tfidf";
}

std::string_view ToString(MappingType type) {
  switch (type) {
    case MappingType::kExact: return "Exact";
    case MappingType::kBroad: return "Broad";
    case MappingType::kNarrow: return "Narrow";
  }
  return "Exact";
}

std::string_view ToString(Approval approval) {
  switch (approval) {
    case Approval::kUnapproved: return "Unapproved";
    case Approval::kApproved: return "Approved";
    case Approval::kRejected: return "Rejected";
  }
  return "Unapproved";
}

std::optional<Mapper> ParseMapper(std::string_view text) {
  for (Mapper m : {Mapper::kLevenshtein, Mapper::kJaro, Mapper::kJaroWinkler, Mapper::kJaccard,
                   Mapper::kIndel, Mapper::kTfidf, Mapper::kZooma, Mapper::kBioportal}) {
    if (ToString(m) == text) return m;
  }
  return std::nullopt;
}

std::optional<MappingType> ParseMappingType(std::string_view text) {
  for (MappingType t : {MappingType::kExact, MappingType::kBroad, MappingType::kNarrow}) {
    if (ToString(t) == text) return t;
  }
  return std::nullopt;
}

std::optional<Approval> ParseApproval(std::string_view text) {
  for (Approval a : {Approval::kUnapproved, Approval::kApproved, Approval::kRejected}) {
    if (ToString(a) == text) return a;
  }
  return std::nullopt;
}

const std::string* MappingTable::Metadata(std::string_view key) const {
  for (const auto& [k, v] : metadata) {
    if (k == key) return &v;
  }
  return nullptr;
}

bool MappingTable::include_unmapped() const {
  const std::string* value = Metadata("incl_unmapped");
  return value && *value == "true";
}

std::string FormatMappingTable(const MappingTable& table) {
  std::string out;
  for (const auto& [key, value] : table.metadata) {
    out += "# " + OneLine(key) + ": " + OneLine(value) + "\n";
  }
  out += kMappingTableHeader;
  out.push_back('\n');
  for (const auto& row : table.rows) {
    out += csv::FormatRow(RowFields(row));
    out.push_back('\n');
  }
  if (table.include_unmapped()) {
    std::string mapper = "tfidf";
    if (const auto* m = table.Metadata("mapper")) mapper = *m;
    for (const auto& term : table.unmapped) {
      SourceTerm tagged = term;
      if (!tagged.has_tag(kUnmappedTag)) tagged.tags.emplace_back(kUnmappedTag);
      out += csv::FormatRow({tagged.text, tagged.id.value_or(""), csv::JoinList(tagged.tags), "",
                             "", "", "", "", mapper, "", "Exact", "Unapproved"});
      out.push_back('\n');
    }
  }
  return out;
}

void WriteMappingTable(const MappingTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << FormatMappingTable(table);
  if (!out) throw Error("cannot write mapping table to " + path);
}

MappingTable ParseMappingTable(std::string_view content) {
  MappingTable table;
  // Metadata block: leading lines starting with '#'.
  std::size_t pos = 0;
  std::size_t line = 1;
  while (pos < content.size() && content[pos] == '#') {
    std::size_t end = content.find('\n', pos);
    std::string_view text = content.substr(pos, end == std::string_view::npos ? std::string_view::npos
                                                                                : end - pos);
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
    text.remove_prefix(1);
    if (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    auto colon = text.find(": ");
    if (colon == std::string_view::npos) Fail(line, "metadata line without 'key: value'");
    table.metadata.emplace_back(std::string(text.substr(0, colon)),
                                std::string(text.substr(colon + 2)));
    if (end == std::string_view::npos) {
      pos = content.size();
    } else {
      pos = end + 1;
    }
    ++line;
  }

  auto records = csv::Parse(content.substr(pos));
  if (records.empty()) Fail(line, "missing header row");
  for (auto& r : records) r.line += line - 1;
  if (csv::FormatRow(records.front().fields) != kMappingTableHeader) {
    Fail(records.front().line, std::string("unexpected header, expected '") +
                                   std::string(kMappingTableHeader) + "'");
  }

  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i].fields;
    std::size_t at = records[i].line;
    if (f.size() != kColumns) {
      Fail(at, "expected " + std::to_string(kColumns) + " fields, found " +
                   std::to_string(f.size()));
    }
    Mapping m;
    m.source = MakeSourceTerm(f[0], f[1].empty() ? std::nullopt : std::optional(f[1]),
                              csv::SplitList(f[2]));
    m.target_label = f[3];
    m.target_curie = f[4];
    m.target_iri = f[5];
    auto mapper = ParseMapper(f[8]);
    if (!mapper) Fail(at, "unknown mapper '" + f[8] + "'");
    m.mapper = *mapper;
    m.matched_string = f[9];
    auto type = ParseMappingType(f[10]);
    if (!type) Fail(at, "unknown mapping type '" + f[10] + "'");
    m.mapping_type = *type;
    auto approval = ParseApproval(f[11]);
    if (!approval) Fail(at, "unknown approval '" + f[11] + "'");
    m.approval = *approval;

    if (m.target_iri.empty()) {
      if (m.source.has_tag(kUnmappedTag)) {
        SourceTerm term = m.source;
        std::erase(term.tags, std::string(kUnmappedTag));
        table.unmapped.push_back(std::move(term));
        continue;
      }
      table.rows.push_back(std::move(m));
      continue;
    }
    try {
      std::size_t used = 0;
      m.score = std::stod(f[6], &used);
      if (used != f[6].size() || !std::isfinite(m.score)) throw std::invalid_argument("score");
      m.rank = std::stoul(f[7], &used);
      if (used != f[7].size() || m.rank == 0) throw std::invalid_argument("rank");
    } catch (const std::exception&) {
      Fail(at, "invalid score or rank");
    }
    table.rows.push_back(std::move(m));
  }
  return table;
}

MappingTable ReadMappingTable(const std::string& path) {
  return ParseMappingTable(ReadFile(path));
}

}  // namespace termmap
