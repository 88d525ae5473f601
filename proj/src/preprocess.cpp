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

#include "termmap/preprocess.hpp"

#include <algorithm>
#include <sstream>

#include "termmap/error.hpp"
#include "termmap/unicode.hpp"

namespace termmap {
namespace {

std::vector<std::regex> Compile(const std::vector<std::string>& patterns,
                                int required_groups) {
  std::vector<std::regex> out;
  out.reserve(patterns.size());
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    try {
      out.emplace_back(patterns[i], std::regex::ECMAScript | std::regex::icase);
    } catch (const std::regex_error& e) {
      throw ConfigError("pattern " + std::to_string(i) + " '" + patterns[i] +
                        "' does not compile: " + e.what());
    }
    if (required_groups >= 0 &&
        out.back().mark_count() != static_cast<unsigned>(required_groups)) {
      throw ConfigError("pattern " + std::to_string(i) + " '" + patterns[i] +
                        "' must contain exactly one capture group");
    }
  }
  return out;
}

}  // namespace

bool SourceTerm::has_tag(std::string_view tag) const {
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

SourceTerm MakeSourceTerm(std::string text, std::optional<std::string> id,
                          std::vector<std::string> tags) {
  SourceTerm term;
  term.normalized = Normalize(text);
  term.text = std::move(text);
  term.id = std::move(id);
  term.tags = std::move(tags);
  return term;
}

std::string Normalize(std::string_view text) {
  std::u32string folded = unicode::Decode(unicode::NfcLower(text));
  std::u32string out;
  out.reserve(folded.size());
  bool pending_space = false;
  for (char32_t c : folded) {
    if (unicode::IsSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(U' ');
    pending_space = false;
    out.push_back(c);
  }
  return unicode::Encode(out);
}

std::vector<SourceTerm> ApplyRegexTemplates(std::vector<SourceTerm> terms,
                                            const std::vector<std::string>& patterns) {
  auto compiled = Compile(patterns, 1);
  for (auto& term : terms) {
    for (std::size_t i = 0; i < compiled.size(); ++i) {
      std::smatch match;
      if (std::regex_match(term.text, match, compiled[i])) {
        term.text = match[1].str();
        term.normalized = Normalize(term.text);
        term.tags.push_back("rewritten:" + std::to_string(i));
        break;
      }
    }
  }
  return terms;
}

std::vector<SourceTerm> ApplyBlocklist(std::vector<SourceTerm> terms,
                                       const std::vector<std::string>& patterns) {
  auto compiled = Compile(patterns, -1);
  for (auto& term : terms) {
    bool blocked = std::any_of(compiled.begin(), compiled.end(), [&](const std::regex& re) {
      return std::regex_match(term.text, re) || std::regex_match(term.normalized, re);
    });
    if (blocked && !term.ignored()) term.tags.emplace_back(kIgnoredTag);
  }
  return terms;
}

std::vector<std::string> ParsePatternFile(std::string_view content) {
  std::vector<std::string> patterns;
  std::istringstream in{std::string(content)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    patterns.push_back(line);
  }
  return patterns;
}

}  // namespace termmap
