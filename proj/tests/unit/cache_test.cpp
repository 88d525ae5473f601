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

#include "termmap/cache.hpp"

#include <gtest/gtest.h>

#include <fstream>

#include "support/temp_dir.hpp"
#include "termmap/error.hpp"

namespace termmap {
namespace {

const std::string kData = TERMMAP_TEST_DATA;
using testing_support::TempDir;

TEST(OntologyCacheTest, RoundTripPreservesEveryTerm) {
  TempDir dir;
  OntologyCache cache(dir.path());
  auto original = LoadOntology(kData + "/mini_disease.json");
  auto entry = cache.CacheOntology(kData + "/mini_disease.json", "MINI");
  EXPECT_EQ(entry.acronym, "MINI");
  EXPECT_EQ(entry.term_count, original.size());
  auto loaded = cache.Load("MINI");
  EXPECT_EQ(loaded.terms(), original.terms());
  EXPECT_EQ(loaded.acronym(), "MINI");
  EXPECT_EQ(loaded.source_locator(), kData + "/mini_disease.json");
  EXPECT_EQ(loaded.version_info(), original.version_info());
}

TEST(OntologyCacheTest, RecachingReplacesTheEntry) {
  TempDir dir;
  OntologyCache cache(dir.path());
  cache.CacheOntology(kData + "/mini_disease.json", "X");
  cache.CacheOntology(kData + "/mini_terms.csv", "X");
  EXPECT_EQ(cache.Load("X").size(), 6u);
  EXPECT_EQ(cache.Acronyms(), std::vector<std::string>{"X"});
  // The replaced entry directory is gone.
  std::size_t dirs = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir.path() / ".entries")) {
    (void)e;
    ++dirs;
  }
  EXPECT_EQ(dirs, 1u);
}

TEST(OntologyCacheTest, MissingAcronymListsAvailable) {
  TempDir dir;
  OntologyCache cache(dir.path());
  cache.CacheOntology(kData + "/mini_terms.csv", "ANIMALS");
  try {
    cache.Load("EFO");
    FAIL();
  } catch (const NotFoundError& e) {
    EXPECT_NE(std::string(e.what()).find("ANIMALS"), std::string::npos);
  }
  EXPECT_FALSE(cache.Contains("EFO"));
  EXPECT_TRUE(cache.Contains("ANIMALS"));
}

TEST(OntologyCacheTest, RejectsUnsafeAcronyms) {
  TempDir dir;
  OntologyCache cache(dir.path());
  EXPECT_THROW(cache.CacheOntology(kData + "/mini_terms.csv", "../escape"), ConfigError);
  EXPECT_TRUE(IsValidAcronym("EFO_3-62"));
  EXPECT_FALSE(IsValidAcronym(""));
  EXPECT_FALSE(IsValidAcronym("a b"));
}

TEST(OntologyCacheTest, SetIsolatesFailuresAndDeduplicates) {
  TempDir dir;
  OntologyCache cache(dir.path());
  auto result = cache.CacheOntologySet({{"A", kData + "/mini_terms.csv"},
                                        {"B", kData + "/missing.json"},
                                        {"A", kData + "/mini_disease.json"}});
  ASSERT_EQ(result.entries.size(), 1u);
  ASSERT_EQ(result.failures.size(), 1u);
  EXPECT_EQ(result.failures[0].acronym, "B");
  EXPECT_EQ(result.warnings.size(), 1u);
  // The later row for a duplicate acronym wins.
  EXPECT_EQ(cache.Load("A").size(), 13u);
  EXPECT_THROW(cache.CacheOntologySet({}), InputError);
}

TEST(OntologySetTableTest, Parses) {
  auto rows = ParseOntologySetTable("acronym,locator\nEFO,/tmp/efo.json\nHP,http://x/hp.json\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].locator, "http://x/hp.json");
  EXPECT_THROW(ParseOntologySetTable("name,where\na,b\n"), FormatError);
}

}  // namespace
}  // namespace termmap
