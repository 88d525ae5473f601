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

#ifndef TERMMAP_CACHE_HPP_
#define TERMMAP_CACHE_HPP_

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "termmap/ontology.hpp"

namespace termmap {

struct CacheEntry {
  std::string acronym;
  std::filesystem::path path;
  std::chrono::system_clock::time_point created_at;
  std::string source_locator;
  std::size_t term_count = 0;
};

struct OntologySetRow {
  std::string acronym;
  std::string locator;
};

struct CacheFailure {
  std::string acronym;
  std::string locator;
  std::string reason;
};

struct CacheSetResult {
  std::vector<CacheEntry> entries;
  std::vector<CacheFailure> failures;
  std::vector<std::string> warnings;
};

// Processed ontologies stored under <root>/<acronym>. Each acronym is a
// symlink to a versioned directory holding `manifest.txt` and `terms.tsv`;
// replacing the symlink by rename makes (re)caching atomic for readers.
class OntologyCache {
 public:
  explicit OntologyCache(std::filesystem::path root);

  // $TERMMAP_CACHE_DIR, else ./.termmap-cache.
  static std::filesystem::path DefaultRoot();

  const std::filesystem::path& root() const { return root_; }

  CacheEntry CacheOntology(const std::string& source_locator, const std::string& acronym);
  CacheEntry Store(const Ontology& ontology, const std::string& acronym);
  CacheSetResult CacheOntologySet(const std::vector<OntologySetRow>& rows);

  bool Contains(const std::string& acronym) const;
  std::vector<std::string> Acronyms() const;
  CacheEntry Entry(const std::string& acronym) const;
  Ontology Load(const std::string& acronym) const;

 private:
  std::filesystem::path root_;
};

// Reads a cache-set table: header row with an `acronym` column and one of
// `locator`, `url` or `path`.
std::vector<OntologySetRow> ParseOntologySetTable(std::string_view bytes,
                                                  char separator = ',');

bool IsValidAcronym(std::string_view acronym);

}  // namespace termmap

#endif  // TERMMAP_CACHE_HPP_
