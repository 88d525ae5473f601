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

#ifndef TERMMAP_PREPROCESS_HPP_
#define TERMMAP_PREPROCESS_HPP_

#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

namespace termmap {

inline constexpr std::string_view kIgnoredTag = "ignored";

struct SourceTerm {
  std::string text;
  std::string normalized;
  std::optional<std::string> id;
  std::vector<std::string> tags;

  bool has_tag(std::string_view tag) const;
  bool ignored() const { return has_tag(kIgnoredTag); }

  bool operator==(const SourceTerm&) const = default;
};

SourceTerm MakeSourceTerm(std::string text, std::optional<std::string> id = std::nullopt,
                          std::vector<std::string> tags = {});

// NFC, lowercase, trimmed, inner whitespace runs collapsed to one space.
// Punctuation is kept.
std::string Normalize(std::string_view text);

// Rewrites each term with the capture group of the first pattern (in list
// order) that matches the whole text, case-insensitively. Rewritten terms are
// tagged "rewritten:<index>". Throws ConfigError if a pattern does not compile
// or does not have exactly one capture group.
std::vector<SourceTerm> ApplyRegexTemplates(std::vector<SourceTerm> terms,
                                            const std::vector<std::string>& patterns);

// Tags terms whose whole text (raw or normalized) matches any pattern
// (case-insensitive) with
// "ignored". Never drops terms. Throws ConfigError on a bad pattern.
std::vector<SourceTerm> ApplyBlocklist(std::vector<SourceTerm> terms,
                                       const std::vector<std::string>& patterns);

// One pattern per line; blank lines and lines starting with '#' are skipped.
std::vector<std::string> ParsePatternFile(std::string_view content);

}  // namespace termmap

#endif  // TERMMAP_PREPROCESS_HPP_
