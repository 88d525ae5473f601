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

#include "termmap/tfidf.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <thread>

#include "termmap/error.hpp"
#include "termmap/unicode.hpp"

namespace termmap {
namespace {

std::size_t ResolveThreads(std::size_t requested, std::size_t work) {
  std::size_t threads = requested;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(threads, work));
}

// Runs fn(begin, end) over contiguous blocks of [0, n) on worker threads.
template <typename Fn>
void ParallelBlocks(std::size_t n, std::size_t threads, Fn fn) {
  threads = ResolveThreads(threads, n);
  if (threads <= 1) {
    fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> workers;
  std::size_t block = (n + threads - 1) / threads;
  for (std::size_t begin = 0; begin < n; begin += block) {
    workers.emplace_back(fn, begin, std::min(n, begin + block));
  }
  for (auto& w : workers) w.join();
}

// Per-thread accumulator for one query row of (query x docs^T).
class Accumulator {
 public:
  explicit Accumulator(std::size_t rows) : scores_(rows, 0.0) {}

  // Columns ascend inside `query`, so each document's dot product is summed
  // in ascending column order.
  void Accumulate(const TfidfIndex& index, const std::vector<SparseEntry>& query) {
    for (const auto& [column, qv] : query) {
      auto rows = index.column_rows(column);
      auto values = index.column_values(column);
      for (std::size_t k = 0; k < rows.size(); ++k) {
        double& slot = scores_[rows[k]];
        if (slot == 0.0) touched_.push_back(rows[k]);
        slot += qv * values[k];
      }
    }
  }

  const std::vector<std::uint32_t>& touched() const { return touched_; }
  double score(std::size_t row) const { return scores_[row]; }

  void Reset() {
    for (auto r : touched_) scores_[r] = 0.0;
    touched_.clear();
  }

 private:
  std::vector<double> scores_;
  std::vector<std::uint32_t> touched_;
};

template <typename T, typename Better>
std::vector<T> SelectTop(std::size_t top_n, Better better, const std::vector<T>& items) {
  // Heap top is the worst retained item.
  std::priority_queue<T, std::vector<T>, Better> heap(better);
  for (const auto& item : items) {
    if (heap.size() < top_n) {
      heap.push(item);
    } else if (better(item, heap.top())) {
      heap.pop();
      heap.push(item);
    }
  }
  std::vector<T> out;
  out.reserve(heap.size());
  while (!heap.empty()) {
    out.push_back(heap.top());
    heap.pop();
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::string> CharNgrams(std::string_view normalized, std::size_t n) {
  std::u32string padded = U" " + unicode::Decode(normalized) + U" ";
  std::vector<std::string> grams;
  if (n == 0) return grams;
  if (padded.size() < n) {
    grams.push_back(unicode::Encode(padded));
    return grams;
  }
  grams.reserve(padded.size() - n + 1);
  for (std::size_t i = 0; i + n <= padded.size(); ++i) {
    grams.push_back(unicode::Encode(std::u32string_view(padded).substr(i, n)));
  }
  return grams;
}

TfidfIndex TfidfIndex::Build(const TermSet& corpus, std::size_t ngram_size, bool include_broad) {
  std::vector<TfidfDocument> docs;
  for (const OntologyTerm* term : corpus) {
    auto add = [&](const std::vector<std::string>& strings, DocumentOrigin origin) {
      for (const auto& s : strings) {
        std::string n = Normalize(s);
        if (n.empty()) continue;
        docs.push_back({s, std::move(n), term->iri, origin});
      }
    };
    add(term->labels, DocumentOrigin::kLabel);
    add(term->exact_synonyms, DocumentOrigin::kExactSynonym);
    if (include_broad) add(term->broad_synonyms, DocumentOrigin::kBroadSynonym);
  }
  return FromDocuments(std::move(docs), ngram_size);
}

TfidfIndex TfidfIndex::FromDocuments(std::vector<TfidfDocument> documents,
                                     std::size_t ngram_size) {
  if (ngram_size == 0) throw ConfigError("ngram size must be at least 1");
  if (documents.empty()) throw Error("TF-IDF corpus has no usable strings");
  TfidfIndex index;
  index.ngram_size_ = ngram_size;
  index.documents_ = std::move(documents);

  // Provisional ids in first-seen order, remapped to sorted columns below.
  std::unordered_map<std::string, std::uint32_t> provisional;
  std::vector<std::vector<std::pair<std::uint32_t, double>>> counts(index.documents_.size());
  for (std::size_t d = 0; d < index.documents_.size(); ++d) {
    auto& doc = index.documents_[d];
    if (doc.normalized.empty()) doc.normalized = Normalize(doc.text);
    std::unordered_map<std::uint32_t, double> local;
    for (auto& gram : CharNgrams(doc.normalized, ngram_size)) {
      auto [it, inserted] = provisional.try_emplace(
          std::move(gram), static_cast<std::uint32_t>(provisional.size()));
      local[it->second] += 1.0;
    }
    counts[d].assign(local.begin(), local.end());
  }

  std::vector<const std::string*> sorted;
  sorted.reserve(provisional.size());
  for (const auto& [gram, id] : provisional) sorted.push_back(&gram);
  std::sort(sorted.begin(), sorted.end(),
            [](const std::string* a, const std::string* b) { return *a < *b; });
  std::vector<std::uint32_t> remap(provisional.size());
  for (std::uint32_t col = 0; col < sorted.size(); ++col) {
    remap[provisional.at(*sorted[col])] = col;
    index.vocabulary_.emplace(*sorted[col], col);
  }

  std::vector<std::size_t> df(sorted.size(), 0);
  for (auto& row : counts) {
    for (auto& [col, count] : row) {
      col = remap[col];
      ++df[col];
    }
    std::sort(row.begin(), row.end());
  }
  const double n = static_cast<double>(index.documents_.size());
  index.idf_.resize(df.size());
  for (std::size_t c = 0; c < df.size(); ++c) {
    index.idf_[c] = std::log((1.0 + n) / (1.0 + static_cast<double>(df[c]))) + 1.0;
  }

  // Owner ordinals follow ascending IRI.
  std::map<std::string, std::uint32_t> owner_ids;
  for (const auto& doc : index.documents_) owner_ids.emplace(doc.owner_iri, 0);
  std::uint32_t next = 0;
  for (auto& [iri, id] : owner_ids) {
    id = next++;
    index.owners_.push_back(iri);
  }
  index.owner_of_.reserve(index.documents_.size());
  for (const auto& doc : index.documents_) index.owner_of_.push_back(owner_ids.at(doc.owner_iri));

  index.counts_ = std::move(counts);
  index.ComputeMatrix(index.counts_);
  return index;
}

void TfidfIndex::ComputeMatrix(
    const std::vector<std::vector<std::pair<std::uint32_t, double>>>& counts) {
  row_ptr_.assign(1, 0);
  entries_.clear();
  std::vector<std::size_t> col_nnz(idf_.size(), 0);
  for (const auto& row : counts) {
    double norm = 0.0;
    std::size_t start = entries_.size();
    for (const auto& [col, count] : row) {
      double w = count * idf_[col];
      entries_.push_back({col, w});
      norm += w * w;
    }
    norm = std::sqrt(norm);
    for (std::size_t k = start; k < entries_.size(); ++k) {
      entries_[k].value /= norm;
      ++col_nnz[entries_[k].column];
    }
    row_ptr_.push_back(entries_.size());
  }

  col_ptr_.assign(idf_.size() + 1, 0);
  for (std::size_t c = 0; c < idf_.size(); ++c) col_ptr_[c + 1] = col_ptr_[c] + col_nnz[c];
  col_rows_.resize(entries_.size());
  col_values_.resize(entries_.size());
  std::vector<std::size_t> fill(col_ptr_.begin(), col_ptr_.end() - 1);
  for (std::size_t r = 0; r + 1 < row_ptr_.size(); ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      std::size_t slot = fill[entries_[k].column]++;
      col_rows_[slot] = static_cast<std::uint32_t>(r);
      col_values_[slot] = entries_[k].value;
    }
  }
}

TfidfIndex TfidfIndex::WithIdfScaled(double factor) const {
  if (!(factor > 0.0)) throw ConfigError("idf scale factor must be positive");
  TfidfIndex copy = *this;
  for (auto& v : copy.idf_) v *= factor;
  copy.ComputeMatrix(copy.counts_);
  return copy;
}

std::vector<SparseEntry> TfidfIndex::Vectorize(std::string_view normalized) const {
  std::map<std::uint32_t, double> counts;
  for (const auto& gram : CharNgrams(normalized, ngram_size_)) {
    auto it = vocabulary_.find(gram);
    if (it != vocabulary_.end()) counts[it->second] += 1.0;
  }
  std::vector<SparseEntry> out;
  out.reserve(counts.size());
  double norm = 0.0;
  for (const auto& [col, count] : counts) {
    double w = count * idf_[col];
    out.push_back({col, w});
    norm += w * w;
  }
  norm = std::sqrt(norm);
  for (auto& e : out) e.value /= norm;
  return out;
}

std::span<const SparseEntry> TfidfIndex::row(std::size_t r) const {
  return std::span<const SparseEntry>(entries_).subspan(row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]);
}

std::span<const std::uint32_t> TfidfIndex::column_rows(std::size_t c) const {
  return std::span<const std::uint32_t>(col_rows_).subspan(col_ptr_[c], col_ptr_[c + 1] - col_ptr_[c]);
}

std::span<const double> TfidfIndex::column_values(std::size_t c) const {
  return std::span<const double>(col_values_).subspan(col_ptr_[c], col_ptr_[c + 1] - col_ptr_[c]);
}

CandidateMatrix TfidfTopN(const TfidfIndex& index, const std::vector<std::string>& queries,
                          std::size_t top_n, double min_score, std::size_t threads) {
  if (top_n == 0) throw ConfigError("top_n must be at least 1");
  CandidateMatrix result(queries.size());
  auto better = [](const Candidate& a, const Candidate& b) {
    return a.cosine != b.cosine ? a.cosine > b.cosine : a.row < b.row;
  };
  ParallelBlocks(queries.size(), threads, [&](std::size_t begin, std::size_t end) {
    Accumulator acc(index.rows());
    std::vector<Candidate> pool;
    for (std::size_t q = begin; q < end; ++q) {
      acc.Accumulate(index, index.Vectorize(queries[q]));
      pool.clear();
      for (auto r : acc.touched()) {
        double s = acc.score(r);
        if (s >= min_score) pool.push_back({r, s});
      }
      result[q] = SelectTop(top_n, better, pool);
      acc.Reset();
    }
  });
  return result;
}

std::vector<std::vector<TermCandidate>> TfidfTopTerms(const TfidfIndex& index,
                                                      const std::vector<std::string>& queries,
                                                      std::size_t top_n, double min_score,
                                                      std::size_t threads) {
  if (top_n == 0) throw ConfigError("top_n must be at least 1");
  std::vector<std::vector<TermCandidate>> result(queries.size());
  auto better = [](const TermCandidate& a, const TermCandidate& b) {
    return a.cosine != b.cosine ? a.cosine > b.cosine : a.owner < b.owner;
  };
  ParallelBlocks(queries.size(), threads, [&](std::size_t begin, std::size_t end) {
    Accumulator acc(index.rows());
    constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> best_row(index.owners().size(), kUnset);
    std::vector<std::uint32_t> owners_touched;
    std::vector<TermCandidate> pool;
    for (std::size_t q = begin; q < end; ++q) {
      acc.Accumulate(index, index.Vectorize(queries[q]));
      for (auto r : acc.touched()) {
        std::uint32_t owner = index.owner_of(r);
        std::size_t& best = best_row[owner];
        if (best == kUnset) {
          owners_touched.push_back(owner);
          best = r;
        } else {
          double s = acc.score(r), b = acc.score(best);
          if (s > b || (s == b && r < best)) best = r;
        }
      }
      pool.clear();
      for (auto owner : owners_touched) {
        std::size_t r = best_row[owner];
        double s = acc.score(r);
        if (s >= min_score) pool.push_back({owner, s, r});
        best_row[owner] = kUnset;
      }
      owners_touched.clear();
      result[q] = SelectTop(top_n, better, pool);
      acc.Reset();
    }
  });
  return result;
}

TfidfMatcher::TfidfMatcher(const TermSet& corpus, std::size_t ngram_size, bool include_broad)
    : index_(TfidfIndex::Build(corpus, ngram_size, include_broad)) {
  std::unordered_map<std::string_view, const OntologyTerm*> by_iri;
  for (const OntologyTerm* t : corpus) by_iri.emplace(t->iri, t);
  owner_terms_.reserve(index_.owners().size());
  for (const auto& iri : index_.owners()) owner_terms_.push_back(by_iri.at(iri));
}

std::vector<std::vector<TermMatch>> TfidfMatcher::Match(
    const std::vector<std::string>& normalized_queries, std::size_t max_mappings,
    double min_score, std::size_t threads) const {
  auto candidates = TfidfTopTerms(index_, normalized_queries, max_mappings, min_score, threads);
  std::vector<std::vector<TermMatch>> out(candidates.size());
  for (std::size_t q = 0; q < candidates.size(); ++q) {
    for (const auto& c : candidates[q]) {
      out[q].push_back({owner_terms_[c.owner], std::min(c.cosine, 1.0),
                        index_.documents()[c.row].text});
    }
  }
  return out;
}

std::vector<std::vector<TermMatch>> TfidfMatch(const std::vector<SourceTerm>& queries,
                                               const TermSet& corpus,
                                               const TfidfOptions& options) {
  TfidfMatcher matcher(corpus, options.ngram_size, options.include_broad);
  std::vector<std::string> normalized;
  normalized.reserve(queries.size());
  for (const auto& q : queries) normalized.push_back(q.normalized);
  return matcher.Match(normalized, options.max_mappings, options.min_score, options.threads);
}

}  // namespace termmap
