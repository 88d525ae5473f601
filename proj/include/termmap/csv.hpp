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

#ifndef TERMMAP_CSV_HPP_
#define TERMMAP_CSV_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace termmap::csv {

struct Record {
  std::vector<std::string> fields;
  // 1-based line number of the first line of the record.
  std::size_t line = 0;
};

// Splits delimited text into records. Double quotes enclose fields that
// contain the separator, quotes or line breaks (RFC 4180). Both "\n" and
// "\r\n" terminate records. Blank lines are skipped.
std::vector<Record> Parse(std::string_view text, char separator = ',');

// Quotes `field` only when needed.
std::string Escape(std::string_view field, char separator = ',');
std::string FormatRow(const std::vector<std::string>& fields,
                      char separator = ',');

// Header lookup helper; returns std::nullopt if `name` is not a column.
std::optional<std::size_t> ColumnIndex(const std::vector<std::string>& header,
                                       std::string_view name);

// Joins/splits multi-valued cells. The joiner is escaped with a backslash
// inside values so that Split(Join(v)) == v.
std::string JoinList(const std::vector<std::string>& values, char joiner = '|');
std::vector<std::string> SplitList(std::string_view cell, char joiner = '|');

}  // namespace termmap::csv

#endif  // TERMMAP_CSV_HPP_
