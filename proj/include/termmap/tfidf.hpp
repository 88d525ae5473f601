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

#ifndef TERMMAP_TFIDF_HPP_
#define TERMMAP_TFIDF_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "termmap/ontology.hpp"
#include "termmap/preprocess.hpp"

namespace termmap {

enum class DocumentOrigin { kLabel, kExactSynonym, kBroadSynonym };

struct TfidfDocument {
  std::string text;        // as found in the ontology
  std::string normalized;  // what gets vectorized
  std::string owner_iri;
  DocumentOrigin origin = DocumentOrigin::kLabel;
};

struct SparseEntry {
  std::uint32_t column;
  double value;
};

// Character n-grams of ` text ` (one boundary space each side), taken over
// code points. A padded string shorter than n yields itself as one n-gram.
std::vector<std::string> CharNgrams(std::string_view normalized, std::size_t n);

// Immutable TF-IDF model over ontology strings.
//   idf[g] = ln((1 + N) / (1 + df(g))) + 1
//   row    = L2-normalized raw-count tf * idf
// Columns are n-grams in ascending byte order.
class TfidfIndex {
 public:
  // One document per non-empty normalized label / exact synonym (plus broad
  // synonyms if requested). Throws ConfigError if ngram_size == 0 and Error
  // when the corpus has no usable strings.
  static TfidfIndex Build(const TermSet& corpus, std::size_t ngram_size = 3,
                          bool include_broad = false);
  // `normalized` is filled from `text` when empty.
  static TfidfIndex FromDocuments(std::vector<TfidfDocument> documents, std::size_t ngram_size);

  // Same corpus with every idf multiplied by `factor` (> 0).
  TfidfIndex WithIdfScaled(double factor) const;

  // tf * idf over in-vocabulary n-grams, L2-normalized, sorted by column.
  // Out-of-vocabulary n-grams are dropped; the result may be empty.
  std::vector<SparseEntry> Vectorize(std::string_view normalized) const;

  std::size_t ngram_size() const { return ngram_size_; }
  const std::vector<TfidfDocument>& documents() const { return documents_; }
  const std::unordered_map<std::string, std::uint32_t>& vocabulary() const { return vocabulary_; }
  const std::vector<double>& idf() const { return idf_; }
  std::span<const SparseEntry> row(std::size_t r) const;
  std::size_t rows() const { return documents_.size(); }
  std::size_t columns() const { return idf_.size(); }

  // Owners (distinct document IRIs) in ascending IRI order, and the owner
  // ordinal of each document.
  const std::vector<std::string>& owners() const { return owners_; }
  std::uint32_t owner_of(std::size_t r) const { return owner_of_[r]; }

  // Column-major view used by the retrieval kernel.
  std::span<const std::uint32_t> column_rows(std::size_t c) const;
  std::span<const double> column_values(std::size_t c) const;

 private:
  TfidfIndex() = default;
  void ComputeMatrix(const std::vector<std::vector<std::pair<std::uint32_t, double>>>& counts);

  std::size_t ngram_size_ = 3;
  std::vector<TfidfDocument> documents_;
  std::unordered_map<std::string, std::uint32_t> vocabulary_;
  std::vector<double> idf_;
  std::vector<std::vector<std::pair<std::uint32_t, double>>> counts_;
  std::vector<std::size_t> row_ptr_;
  std::vector<SparseEntry> entries_;
  std::vector<std::size_t> col_ptr_;
  std::vector<std::uint32_t> col_rows_;
  std::vector<double> col_values_;
  std::vector<std::string> owners_;
  std::vector<std::uint32_t> owner_of_;
};

struct Candidate {
  std::size_t row;
  double cosine;
  bool operator==(const Candidate&) const = default;
};

// Per query, up to top_n documents with cosine >= min_score, by descending
// cosine and then ascending row. threads == 0 uses the hardware concurrency.
using CandidateMatrix = std::vector<std::vector<Candidate>>;
CandidateMatrix TfidfTopN(const TfidfIndex& index, const std::vector<std::string>& queries,
                          std::size_t top_n, double min_score, std::size_t threads = 0);

struct TermCandidate {
  std::uint32_t owner;  // index into TfidfIndex::owners()
  double cosine;
  std::size_t row;      // best-scoring document of the owner (lowest row on ties)
};

// Like TfidfTopN, but documents collapse onto their owning term first (max
// cosine per term); ties go to the lower owner ordinal, i.e. ascending IRI.
std::vector<std::vector<TermCandidate>> TfidfTopTerms(const TfidfIndex& index,
                                                      const std::vector<std::string>& queries,
                                                      std::size_t top_n, double min_score,
                                                      std::size_t threads = 0);

struct TfidfOptions {
  std::size_t ngram_size = 3;
  bool include_broad = false;
  std::size_t max_mappings = 1;
  double min_score = 0.3;
  std::size_t threads = 0;
};

struct TermMatch {
  const OntologyTerm* term = nullptr;
  double score = 0.0;
  std::string matched_string;
};

// Index plus term lookup, reusable across queries.
class TfidfMatcher {
 public:
  TfidfMatcher(const TermSet& corpus, std::size_t ngram_size = 3, bool include_broad = false);

  std::vector<std::vector<TermMatch>> Match(const std::vector<std::string>& normalized_queries,
                                            std::size_t max_mappings, double min_score,
                                            std::size_t threads = 0) const;
  const TfidfIndex& index() const { return index_; }

 private:
  TfidfIndex index_;
  std::vector<const OntologyTerm*> owner_terms_;
};

// One result list per source term (in input order).
std::vector<std::vector<TermMatch>> TfidfMatch(const std::vector<SourceTerm>& queries,
                                               const TermSet& corpus,
                                               const TfidfOptions& options = {});

}  // namespace termmap

#endif  // TERMMAP_TFIDF_HPP_
