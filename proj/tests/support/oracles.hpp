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

// Reference implementations used only by tests. They follow the textbook
// definitions directly (full DP tables, dense vectors, fixpoint closure) and
// share no code with the library.
#ifndef TERMMAP_TESTS_ORACLES_HPP_
#define TERMMAP_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

// Valid UTF-8 only; the generators below never produce anything else.
inline std::u32string Utf8Decode(const std::string& s) {
  std::u32string out;
  for (std::size_t i = 0; i < s.size();) {
    auto c = static_cast<unsigned char>(s[i]);
    int len = c < 0x80 ? 1 : c < 0xE0 ? 2 : c < 0xF0 ? 3 : 4;
    char32_t cp = len == 1 ? c : len == 2 ? (c & 0x1F) : len == 3 ? (c & 0x0F) : (c & 0x07);
    for (int k = 1; k < len; ++k) cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
    out.push_back(cp);
    i += len;
  }
  return out;
}

inline std::string Utf8Encode(const std::u32string& s) {
  std::string out;
  for (char32_t c : s) {
    if (c < 0x80) {
      out += static_cast<char>(c);
    } else if (c < 0x800) {
      out += static_cast<char>(0xC0 | (c >> 6));
      out += static_cast<char>(0x80 | (c & 0x3F));
    } else if (c < 0x10000) {
      out += static_cast<char>(0xE0 | (c >> 12));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (c & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (c >> 18));
      out += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (c & 0x3F));
    }
  }
  return out;
}

inline std::size_t Levenshtein(const std::u32string& a, const std::u32string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, sub});
    }
  }
  return d[a.size()][b.size()];
}

inline std::size_t Lcs(const std::u32string& a, const std::u32string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = a[i - 1] == b[j - 1] ? d[i - 1][j - 1] + 1 : std::max(d[i - 1][j], d[i][j - 1]);
    }
  }
  return d[a.size()][b.size()];
}

inline double LevenshteinSim(const std::string& x, const std::string& y) {
  auto a = Utf8Decode(x), b = Utf8Decode(y);
  double longest = static_cast<double>(std::max(a.size(), b.size()));
  return longest == 0 ? 1.0 : 1.0 - Levenshtein(a, b) / longest;
}

inline double IndelSim(const std::string& x, const std::string& y) {
  auto a = Utf8Decode(x), b = Utf8Decode(y);
  double total = static_cast<double>(a.size() + b.size());
  if (total == 0) return 1.0;
  // Indel distance is the edit distance with insertions and deletions only.
  return 1.0 - (total - 2.0 * Lcs(a, b)) / total;
}

// Matching is driven by the shorter string (the lexicographically smaller
// one on equal length) so the measure is symmetric.
inline double Jaro(const std::string& x, const std::string& y) {
  auto s1 = Utf8Decode(x), s2 = Utf8Decode(y);
  if (s1.empty() && s2.empty()) return 1.0;
  if (s1.empty() || s2.empty()) return 0.0;
  if (s2.size() < s1.size() || (s2.size() == s1.size() && s2 < s1)) std::swap(s1, s2);
  long window = std::max<long>(0, static_cast<long>(std::max(s1.size(), s2.size())) / 2 - 1);
  std::vector<bool> m1(s1.size(), false), m2(s2.size(), false);
  double m = 0;
  for (long i = 0; i < static_cast<long>(s1.size()); ++i) {
    for (long j = std::max(0L, i - window);
         j <= std::min(static_cast<long>(s2.size()) - 1, i + window); ++j) {
      if (!m2[j] && s1[i] == s2[j]) {
        m1[i] = m2[j] = true;
        m += 1;
        break;
      }
    }
  }
  if (m == 0) return 0.0;
  std::u32string seq1, seq2;
  for (std::size_t i = 0; i < s1.size(); ++i) if (m1[i]) seq1 += s1[i];
  for (std::size_t j = 0; j < s2.size(); ++j) if (m2[j]) seq2 += s2[j];
  std::size_t half = 0;
  for (std::size_t k = 0; k < seq1.size(); ++k) half += seq1[k] != seq2[k];
  double t = static_cast<double>(half / 2);
  return (m / s1.size() + m / s2.size() + (m - t) / m) / 3.0;
}

inline double JaroWinkler(const std::string& x, const std::string& y, double p = 0.1,
                          std::size_t max_prefix = 4) {
  double j = Jaro(x, y);
  auto a = Utf8Decode(x), b = Utf8Decode(y);
  std::size_t l = 0;
  while (l < a.size() && l < b.size() && l < max_prefix && a[l] == b[l]) ++l;
  return j + l * p * (1.0 - j);
}

inline std::set<std::string> Tokens(const std::string& s) {
  std::set<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      if (!cur.empty()) out.insert(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.insert(cur);
  return out;
}

inline double Jaccard(const std::string& x, const std::string& y) {
  auto a = Tokens(x), b = Tokens(y);
  if (a.empty() && b.empty()) return 1.0;
  std::vector<std::string> inter, uni;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(uni));
  return static_cast<double>(inter.size()) / static_cast<double>(uni.size());
}

// Character n-grams of " text "; a padded string shorter than n is one gram.
inline std::vector<std::string> Ngrams(const std::string& text, std::size_t n) {
  std::u32string padded = U" " + Utf8Decode(text) + U" ";
  if (padded.size() < n) return {Utf8Encode(padded)};
  std::vector<std::string> out;
  for (std::size_t i = 0; i + n <= padded.size(); ++i) out.push_back(Utf8Encode(padded.substr(i, n)));
  return out;
}

// Dense TF-IDF: raw term frequency, smoothed idf ln((1+N)/(1+df))+1, unit rows.
struct DenseTfidf {
  std::vector<std::string> vocab;  // sorted
  std::vector<double> idf;
  std::vector<std::vector<double>> rows;
  std::size_t n = 3;

  DenseTfidf(const std::vector<std::string>& docs, std::size_t ngram) : n(ngram) {
    std::set<std::string> all;
    std::vector<std::map<std::string, double>> tf(docs.size());
    for (std::size_t d = 0; d < docs.size(); ++d) {
      for (const auto& g : Ngrams(docs[d], n)) {
        tf[d][g] += 1.0;
        all.insert(g);
      }
    }
    vocab.assign(all.begin(), all.end());
    idf.resize(vocab.size());
    for (std::size_t c = 0; c < vocab.size(); ++c) {
      double df = 0;
      for (const auto& t : tf) df += t.count(vocab[c]) ? 1 : 0;
      idf[c] = std::log((1.0 + docs.size()) / (1.0 + df)) + 1.0;
    }
    for (const auto& t : tf) rows.push_back(Weigh(t));
  }

  std::vector<double> Weigh(const std::map<std::string, double>& tf) const {
    std::vector<double> v(vocab.size(), 0.0);
    double norm = 0.0;
    for (std::size_t c = 0; c < vocab.size(); ++c) {
      auto it = tf.find(vocab[c]);
      if (it == tf.end()) continue;
      v[c] = it->second * idf[c];
      norm += v[c] * v[c];
    }
    norm = std::sqrt(norm);
    if (norm > 0) for (auto& x : v) x /= norm;
    return v;
  }

  std::vector<double> Query(const std::string& q) const {
    std::map<std::string, double> tf;
    for (const auto& g : Ngrams(q, n)) tf[g] += 1.0;
    return Weigh(tf);
  }

  // Rows sharing at least one n-gram with the query, best first, ties by row.
  std::vector<std::pair<std::size_t, double>> TopN(const std::string& q, std::size_t top_n,
                                                   double min_score) const {
    auto qv = Query(q);
    std::vector<std::size_t> qcols;  // zero query entries contribute nothing
    for (std::size_t c = 0; c < vocab.size(); ++c) if (qv[c] != 0.0) qcols.push_back(c);
    std::vector<std::pair<std::size_t, double>> all;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      double dot = 0.0;
      bool shared = false;
      for (std::size_t c : qcols) {
        if (rows[r][c] != 0.0) {
          dot += qv[c] * rows[r][c];
          shared = true;
        }
      }
      if (shared && dot >= min_score) all.emplace_back(r, dot);
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
      return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    if (all.size() > top_n) all.resize(top_n);
    return all;
  }
};

// Transitive closure by iterating to a fixpoint.
inline std::map<std::string, std::set<std::string>> AncestorClosure(
    const std::map<std::string, std::set<std::string>>& parents) {
  std::map<std::string, std::set<std::string>> anc;
  for (const auto& [node, ps] : parents) {
    for (const auto& p : ps) if (parents.count(p)) anc[node].insert(p);
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (auto& [node, set] : anc) {
      std::set<std::string> add;
      for (const auto& a : set) {
        auto it = anc.find(a);
        if (it != anc.end()) add.insert(it->second.begin(), it->second.end());
      }
      for (const auto& a : add) changed |= set.insert(a).second;
    }
  }
  return anc;
}

// Relationship of a tool term T to a benchmark term H, checked in order:
// identical, T below H, T above H, shared direct parent, otherwise unrelated.
inline std::string Relation(const std::string& t, const std::string& h,
                            const std::map<std::string, std::set<std::string>>& parents) {
  if (t == h) return "Same";
  if (!parents.count(t) || !parents.count(h)) return "Unrelated";
  auto anc = AncestorClosure(parents);
  if (anc[t].count(h)) return "More Specific";
  if (anc[h].count(t)) return "More General";
  for (const auto& p : parents.at(t)) {
    if (parents.count(p) && parents.at(h).count(p)) return "Sibling";
  }
  return "Unrelated";
}

// Random strings over ASCII letters, space and a few non-ASCII code points.
inline std::string RandomString(std::mt19937_64& rng, std::size_t max_len,
                                std::size_t alphabet = 0) {
  static const std::u32string kPool = U"abcdefghijklmnopqrstuvwxyz      éüßø中";
  std::size_t pool = alphabet ? std::min(alphabet, kPool.size()) : kPool.size();
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, pool - 1);
  std::u32string s;
  for (std::size_t i = len(rng); i > 0; --i) s += kPool[pick(rng)];
  return Utf8Encode(s);
}

}  // namespace oracle

#endif  // TERMMAP_TESTS_ORACLES_HPP_
