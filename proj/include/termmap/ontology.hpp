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

#ifndef TERMMAP_ONTOLOGY_HPP_
#define TERMMAP_ONTOLOGY_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace termmap {

enum class TermType { kClass, kProperty };

// Which term types a mapping run may target.
enum class TermTypeFilter { kClasses, kProperties, kBoth };

std::string_view ToString(TermType type);
std::string_view ToString(TermTypeFilter filter);
TermType ParseTermType(std::string_view text);
TermTypeFilter ParseTermTypeFilter(std::string_view text);

struct OntologyTerm {
  std::string iri;
  std::string curie;
  std::vector<std::string> labels;  // labels.front() is the display label
  std::vector<std::string> exact_synonyms;
  std::vector<std::string> broad_synonyms;
  std::vector<std::string> definitions;
  std::set<std::string> parents;
  std::set<std::string> children;
  std::set<std::string> instances;
  bool deprecated = false;
  TermType term_type = TermType::kClass;

  // Empty when the term has no label.
  const std::string& display_label() const;
  bool has_match_strings() const {
    return !labels.empty() || !exact_synonyms.empty() || !broad_synonyms.empty();
  }

  bool operator==(const OntologyTerm&) const = default;
};

// An immutable (after construction) term store. Terms are keyed and iterated
// by IRI in ascending order.
class Ontology {
 public:
  Ontology() = default;
  Ontology(std::string acronym, std::string source_locator,
           std::map<std::string, OntologyTerm> terms,
           std::optional<std::string> version_info = std::nullopt);

  const std::string& acronym() const { return acronym_; }
  const std::string& source_locator() const { return source_locator_; }
  const std::optional<std::string>& version_info() const { return version_info_; }
  const std::map<std::string, OntologyTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  void set_acronym(std::string acronym) { acronym_ = std::move(acronym); }
  void set_source_locator(std::string locator) {
    source_locator_ = std::move(locator);
  }

  // Lookup by full IRI or by CURIE.
  const OntologyTerm* Find(std::string_view iri_or_curie) const;
  // Resolves an IRI or CURIE to the IRI used as key, if the term exists.
  std::optional<std::string> Resolve(std::string_view iri_or_curie) const;

  // IRIs referenced as parents or instances that have no term of their own.
  const std::set<std::string>& dangling() const { return dangling_; }

  // Content equality; acronym and locator included, indexes excluded.
  bool operator==(const Ontology& other) const {
    return acronym_ == other.acronym_ &&
           source_locator_ == other.source_locator_ &&
           version_info_ == other.version_info_ && terms_ == other.terms_;
  }

 private:
  void Reindex();

  std::string acronym_;
  std::string source_locator_;
  std::optional<std::string> version_info_;
  std::map<std::string, OntologyTerm> terms_;
  std::unordered_map<std::string, std::string> curie_to_iri_;
  std::set<std::string> dangling_;
};

// Derives a CURIE from an IRI: ".../obo/MONDO_0004975" -> "MONDO:0004975",
// ".../efo/EFO_0003777" -> "EFO:0003777". Values without a scheme are
// assumed to be CURIEs already and returned unchanged.
std::string CurieFromIri(std::string_view iri);

struct ObographParseStats {
  std::size_t nodes_seen = 0;
  std::size_t nodes_skipped_type = 0;
  std::size_t nodes_missing_id = 0;
};

// Parses OBO Graph JSON. Throws ParseError on malformed JSON and
// EmptyOntologyError when no node yields a term.
Ontology ParseObograph(std::string_view bytes, ObographParseStats* stats = nullptr);

// Parses a delimited term table with a header row. Required columns: iri,
// label. Optional: curie, exact_synonyms, broad_synonyms, definitions,
// parents, instances, deprecated, term_type. Multi-valued cells are
// "|"-joined. Throws FormatError.
Ontology ParseTermTable(std::string_view bytes, char separator = ',');

// Writes every field read by ParseTermTable. Children are not stored: they
// are rebuilt from parent links.
std::string SerializeTermTable(const Ontology& ontology, char separator = ',');

// Loads an ontology from a local path or http(s) URL. Files ending in .csv,
// .tsv or .txt are read as term tables, everything else as OBO Graph JSON.
Ontology LoadOntology(const std::string& locator, const std::string& acronym = "");

using TermSet = std::vector<const OntologyTerm*>;

// Keeps terms whose IRI starts with any of `base_iris` (all terms when the
// list is empty), optionally dropping deprecated terms, restricted by type.
// Output is in ascending IRI order.
TermSet FilterTerms(const Ontology& ontology,
                    const std::vector<std::string>& base_iris,
                    bool exclude_deprecated, TermTypeFilter term_type);
TermSet FilterTerms(const TermSet& terms,
                    const std::vector<std::string>& base_iris,
                    bool exclude_deprecated, TermTypeFilter term_type);

}  // namespace termmap

#endif  // TERMMAP_ONTOLOGY_HPP_
