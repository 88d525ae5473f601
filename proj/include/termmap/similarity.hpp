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

#ifndef TERMMAP_SIMILARITY_HPP_
#define TERMMAP_SIMILARITY_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "termmap/ontology.hpp"
#include "termmap/preprocess.hpp"

namespace termmap {

enum class Metric { kLevenshtein, kJaro, kJaroWinkler, kJaccard, kIndel };

std::string_view ToString(Metric metric);
std::optional<Metric> ParseMetric(std::string_view name);

// Edit-based scores work on Unicode code points of the given strings, so
// callers compare normalized strings. All scores lie in [0, 1].

std::size_t LevenshteinDistance(std::u32string_view a, std::u32string_view b);
std::size_t LongestCommonSubsequence(std::u32string_view a, std::u32string_view b);

// 1 - distance / max(|a|, |b|); two empty strings score 1.
double LevenshteinSimilarity(std::string_view a, std::string_view b);
// 1 - (|a| + |b| - 2 LCS) / (|a| + |b|); two empty strings score 1.
double IndelSimilarity(std::string_view a, std::string_view b);
// Jaro with the usual match window max(|a|,|b|)/2 - 1. The shorter string
// (then the lexicographically smaller one) drives greedy matching, which
// makes the score symmetric.
double JaroSimilarity(std::string_view a, std::string_view b);
// jaro + l * prefix_weight * (1 - jaro), l = common prefix length capped at
// max_prefix. Throws ConfigError when prefix_weight > 0.25 or the product
// prefix_weight * max_prefix exceeds 1.
double JaroWinklerSimilarity(std::string_view a, std::string_view b,
                             double prefix_weight = 0.1, std::size_t max_prefix = 4);
// Token-set Jaccard over whitespace-separated tokens; two empty sets score 1.
double JaccardSimilarity(std::string_view a, std::string_view b);

double Similarity(Metric metric, std::string_view a, std::string_view b);

struct SyntacticMatch {
  const OntologyTerm* term = nullptr;
  double score = 0.0;
  std::string matched_string;
};

// Scores one query against every term of a corpus. A term scores the max
// over its normalized labels and exact synonyms (and broad synonyms when
// enabled). The corpus is normalized once at construction.
class SyntacticMatcher {
 public:
  SyntacticMatcher(const TermSet& corpus, Metric metric, bool include_broad = false);

  // Top `top_n` terms by descending score, ties by ascending IRI, keeping
  // only scores >= min_score.
  std::vector<SyntacticMatch> Match(std::string_view normalized_query, std::size_t top_n,
                                    double min_score = 0.0) const;

 private:
  struct Candidate {
    const OntologyTerm* term;
    std::vector<std::string> originals;
    std::vector<std::string> normalized;
  };
  Metric metric_;
  std::vector<Candidate> candidates_;  // ascending IRI
};

std::vector<SyntacticMatch> BestSyntacticMatch(const SourceTerm& query, const TermSet& corpus,
                                               Metric metric, std::size_t top_n,
                                               bool include_broad = false);

}  // namespace termmap

#endif  // TERMMAP_SIMILARITY_HPP_
