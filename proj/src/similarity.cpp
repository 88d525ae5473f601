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

#include "termmap/similarity.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <set>

#include "termmap/error.hpp"
#include "termmap/unicode.hpp"

namespace termmap {
namespace {

// Bit masks of pattern positions per code point, for the bit-parallel
// kernels (pattern length <= 64).
class PatternMasks {
 public:
  explicit PatternMasks(std::u32string_view pattern) {
    ascii_.fill(0);
    for (std::size_t i = 0; i < pattern.size(); ++i) {
      char32_t c = pattern[i];
      std::uint64_t bit = std::uint64_t{1} << i;
      if (c < 128) {
        ascii_[c] |= bit;
        continue;
      }
      auto it = std::find_if(other_.begin(), other_.end(),
                             [&](const auto& e) { return e.first == c; });
      if (it == other_.end()) {
        other_.emplace_back(c, bit);
      } else {
        it->second |= bit;
      }
    }
  }

  std::uint64_t Get(char32_t c) const {
    if (c < 128) return ascii_[c];
    for (const auto& [cp, mask] : other_) {
      if (cp == c) return mask;
    }
    return 0;
  }

 private:
  std::array<std::uint64_t, 128> ascii_;
  std::vector<std::pair<char32_t, std::uint64_t>> other_;
};

// Myers/Hyyrö bit-vector edit distance.
std::size_t LevenshteinBitParallel(std::u32string_view pattern, std::u32string_view text) {
  const std::size_t m = pattern.size();
  PatternMasks masks(pattern);
  std::uint64_t vp = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
  std::uint64_t vn = 0;
  const std::uint64_t last = std::uint64_t{1} << (m - 1);
  std::size_t score = m;
  for (char32_t c : text) {
    std::uint64_t eq = masks.Get(c);
    std::uint64_t x = eq | vn;
    std::uint64_t d0 = (((x & vp) + vp) ^ vp) | x;
    std::uint64_t hp = vn | ~(d0 | vp);
    std::uint64_t hn = vp & d0;
    if (hp & last) {
      ++score;
    } else if (hn & last) {
      --score;
    }
    x = (hp << 1) | 1;
    vn = x & d0;
    vp = (hn << 1) | ~(x | d0);
  }
  return score;
}

std::size_t LevenshteinRows(std::u32string_view a, std::u32string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

// Allison-Dix / Hyyrö bit-vector LCS.
std::size_t LcsBitParallel(std::u32string_view pattern, std::u32string_view text) {
  const std::size_t m = pattern.size();
  PatternMasks masks(pattern);
  const std::uint64_t all = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
  std::uint64_t s = all;
  for (char32_t c : text) {
    std::uint64_t u = s & masks.Get(c);
    s = (s + u) | (s - u);
  }
  return static_cast<std::size_t>(std::popcount(~s & all));
}

std::size_t LcsRows(std::u32string_view a, std::u32string_view b) {
  std::vector<std::size_t> row(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = 0;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      row[j] = a[i - 1] == b[j - 1] ? diag + 1 : std::max(row[j], row[j - 1]);
      diag = up;
    }
  }
  return row[b.size()];
}

double JaroCodePoints(std::u32string_view a, std::u32string_view b) {
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  if (b.size() < a.size() || (b.size() == a.size() && b < a)) std::swap(a, b);
  const std::size_t longest = b.size();
  const std::size_t window = longest / 2 > 0 ? longest / 2 - 1 : 0;
  std::vector<char> a_matched(a.size(), 0), b_matched(b.size(), 0);
  std::size_t matches = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::size_t lo = i > window ? i - window : 0;
    std::size_t hi = std::min(b.size(), i + window + 1);
    for (std::size_t j = lo; j < hi; ++j) {
      if (!b_matched[j] && a[i] == b[j]) {
        a_matched[i] = b_matched[j] = 1;
        ++matches;
        break;
      }
    }
  }
  if (matches == 0) return 0.0;
  std::size_t half_transpositions = 0;
  for (std::size_t i = 0, j = 0; i < a.size(); ++i) {
    if (!a_matched[i]) continue;
    while (!b_matched[j]) ++j;
    if (a[i] != b[j]) ++half_transpositions;
    ++j;
  }
  const double m = static_cast<double>(matches);
  const double t = static_cast<double>(half_transpositions / 2);
  return (m / a.size() + m / b.size() + (m - t) / m) / 3.0;
}

std::set<std::u32string> Tokens(std::string_view s) {
  std::set<std::u32string> tokens;
  std::u32string current;
  for (char32_t c : unicode::Decode(s)) {
    if (unicode::IsSpace(c)) {
      if (!current.empty()) tokens.insert(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) tokens.insert(std::move(current));
  return tokens;
}

}  // namespace

std::string_view ToString(Metric metric) {
  switch (metric) {
    case Metric::kLevenshtein: return "levenshtein";
    case Metric::kJaro: return "jaro";
    case Metric::kJaroWinkler: return "jarowinkler";
    case Metric::kJaccard: return "jaccard";
    case Metric::kIndel: return "indel";
  }
  return "levenshtein";
}

std::optional<Metric> ParseMetric(std::string_view name) {
  for (Metric m : {Metric::kLevenshtein, Metric::kJaro, Metric::kJaroWinkler,
                   Metric::kJaccard, Metric::kIndel}) {
    if (ToString(m) == name) return m;
  }
  return std::nullopt;
}

std::size_t LevenshteinDistance(std::u32string_view a, std::u32string_view b) {
  if (a.size() > b.size()) std::swap(a, b);
  if (a.empty()) return b.size();
  if (a.size() <= 64) return LevenshteinBitParallel(a, b);
  return LevenshteinRows(a, b);
}

std::size_t LongestCommonSubsequence(std::u32string_view a, std::u32string_view b) {
  if (a.size() > b.size()) std::swap(a, b);
  if (a.empty()) return 0;
  if (a.size() <= 64) return LcsBitParallel(a, b);
  return LcsRows(a, b);
}

double LevenshteinSimilarity(std::string_view a, std::string_view b) {
  auto ua = unicode::Decode(a), ub = unicode::Decode(b);
  std::size_t longest = std::max(ua.size(), ub.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(LevenshteinDistance(ua, ub)) / longest;
}

double IndelSimilarity(std::string_view a, std::string_view b) {
  auto ua = unicode::Decode(a), ub = unicode::Decode(b);
  std::size_t total = ua.size() + ub.size();
  if (total == 0) return 1.0;
  std::size_t lcs = LongestCommonSubsequence(ua, ub);
  return 1.0 - static_cast<double>(total - 2 * lcs) / total;
}

double JaroSimilarity(std::string_view a, std::string_view b) {
  return JaroCodePoints(unicode::Decode(a), unicode::Decode(b));
}

double JaroWinklerSimilarity(std::string_view a, std::string_view b, double prefix_weight,
                             std::size_t max_prefix) {
  if (prefix_weight < 0.0 || prefix_weight > 0.25) {
    throw ConfigError("Jaro-Winkler prefix weight must lie in [0, 0.25]");
  }
  if (prefix_weight * static_cast<double>(max_prefix) > 1.0) {
    throw ConfigError("Jaro-Winkler prefix weight times max prefix must not exceed 1");
  }
  auto ua = unicode::Decode(a), ub = unicode::Decode(b);
  double jaro = JaroCodePoints(ua, ub);
  std::size_t prefix = 0;
  std::size_t limit = std::min({ua.size(), ub.size(), max_prefix});
  while (prefix < limit && ua[prefix] == ub[prefix]) ++prefix;
  return jaro + static_cast<double>(prefix) * prefix_weight * (1.0 - jaro);
}

double JaccardSimilarity(std::string_view a, std::string_view b) {
  auto ta = Tokens(a), tb = Tokens(b);
  if (ta.empty() && tb.empty()) return 1.0;
  std::size_t common = 0;
  for (const auto& t : ta) common += tb.count(t);
  return static_cast<double>(common) / static_cast<double>(ta.size() + tb.size() - common);
}

double Similarity(Metric metric, std::string_view a, std::string_view b) {
  switch (metric) {
    case Metric::kLevenshtein: return LevenshteinSimilarity(a, b);
    case Metric::kJaro: return JaroSimilarity(a, b);
    case Metric::kJaroWinkler: return JaroWinklerSimilarity(a, b);
    case Metric::kJaccard: return JaccardSimilarity(a, b);
    case Metric::kIndel: return IndelSimilarity(a, b);
  }
  return 0.0;
}

SyntacticMatcher::SyntacticMatcher(const TermSet& corpus, Metric metric, bool include_broad)
    : metric_(metric) {
  candidates_.reserve(corpus.size());
  for (const OntologyTerm* term : corpus) {
    Candidate candidate{term, {}, {}};
    auto add = [&](const std::vector<std::string>& strings) {
      for (const auto& s : strings) {
        std::string n = Normalize(s);
        if (n.empty()) continue;
        candidate.originals.push_back(s);
        candidate.normalized.push_back(std::move(n));
      }
    };
    add(term->labels);
    add(term->exact_synonyms);
    if (include_broad) add(term->broad_synonyms);
    if (!candidate.normalized.empty()) candidates_.push_back(std::move(candidate));
  }
  std::sort(candidates_.begin(), candidates_.end(),
            [](const Candidate& x, const Candidate& y) { return x.term->iri < y.term->iri; });
}

std::vector<SyntacticMatch> SyntacticMatcher::Match(std::string_view query, std::size_t top_n,
                                                    double min_score) const {
  if (top_n == 0) throw ConfigError("top_n must be at least 1");
  std::vector<std::pair<double, std::size_t>> scored;  // (score, candidate index)
  std::vector<std::size_t> best_string(candidates_.size(), 0);
  scored.reserve(candidates_.size());
  for (std::size_t c = 0; c < candidates_.size(); ++c) {
    const auto& cand = candidates_[c];
    double best = -1.0;
    for (std::size_t s = 0; s < cand.normalized.size(); ++s) {
      double score = Similarity(metric_, query, cand.normalized[s]);
      if (score > best) {
        best = score;
        best_string[c] = s;
      }
    }
    if (best >= min_score) scored.emplace_back(best, c);
  }
  // Candidates are in IRI order, so the index breaks ties by ascending IRI.
  auto by_rank = [](const auto& x, const auto& y) {
    return x.first != y.first ? x.first > y.first : x.second < y.second;
  };
  std::size_t keep = std::min(top_n, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + keep, scored.end(), by_rank);
  std::vector<SyntacticMatch> out;
  out.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    const auto& cand = candidates_[scored[i].second];
    out.push_back({cand.term, scored[i].first, cand.originals[best_string[scored[i].second]]});
  }
  return out;
}

std::vector<SyntacticMatch> BestSyntacticMatch(const SourceTerm& query, const TermSet& corpus,
                                               Metric metric, std::size_t top_n,
                                               bool include_broad) {
  if (top_n == 0) throw ConfigError("top_n must be at least 1");
  if (corpus.empty()) return {};
  return SyntacticMatcher(corpus, metric, include_broad).Match(query.normalized, top_n);
}

}  // namespace termmap
