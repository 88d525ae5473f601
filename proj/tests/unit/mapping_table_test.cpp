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

#include "termmap/mapping.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "support/generators.hpp"
#include "termmap/error.hpp"

namespace termmap {
namespace {

using gen::RandomTable;

TEST(MappingTableTest, EnumNamesRoundTrip) {
  for (int i = 0; i < 8; ++i) {
    auto m = static_cast<Mapper>(i);
    EXPECT_EQ(ParseMapper(ToString(m)), m);
  }
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(ParseMappingType(ToString(static_cast<MappingType>(i))), static_cast<MappingType>(i));
    EXPECT_EQ(ParseApproval(ToString(static_cast<Approval>(i))), static_cast<Approval>(i));
  }
  EXPECT_FALSE(ParseMappingType("Close"));
}

TEST(MappingTableTest, FormatsHeaderMetadataAndScore) {
  MappingTable table;
  table.metadata = {{"tool", "termmap"}};
  Mapping row;
  row.source = MakeSourceTerm("heart disease", std::string("S1"));
  row.target_iri = "http://www.ebi.ac.uk/efo/EFO_0003777";
  row.target_curie = "EFO:0003777";
  row.target_label = "heart disease";
  row.score = 0.98765;
  row.rank = 1;
  row.matched_string = "heart disease";
  table.rows.push_back(row);
  EXPECT_EQ(FormatMappingTable(table),
            "# tool: termmap\n" + std::string(kMappingTableHeader) +
                "\nheart disease,S1,,heart disease,EFO:0003777,"
                "http://www.ebi.ac.uk/efo/EFO_0003777,0.988,1,tfidf,heart disease,Exact,Unapproved\n");
}

TEST(MappingTableTest, UnmappedRowsOnlyWhenRequested) {
  MappingTable table;
  table.metadata = {{"incl_unmapped", "false"}};
  table.unmapped.push_back(MakeSourceTerm("zzz"));
  EXPECT_EQ(FormatMappingTable(table).find("zzz"), std::string::npos);
  table.metadata = {{"incl_unmapped", "true"}};
  auto text = FormatMappingTable(table);
  EXPECT_NE(text.find("zzz,,unmapped,"), std::string::npos);
  EXPECT_EQ(ParseMappingTable(text), table);
}

TEST(MappingTableTest, RandomTablesRoundTrip) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    auto table = RandomTable(rng);
    auto text = FormatMappingTable(table);
    auto back = ParseMappingTable(text);
    ASSERT_EQ(back, table) << text;
    EXPECT_EQ(FormatMappingTable(back), text);
  }
}

TEST(MappingTableTest, FileRoundTrip) {
  std::mt19937_64 rng(1);
  auto table = RandomTable(rng);
  auto path = std::filesystem::temp_directory_path() / "termmap_table_test.csv";
  WriteMappingTable(table, path.string());
  EXPECT_EQ(ReadMappingTable(path.string()), table);
  std::filesystem::remove(path);
}

TEST(MappingTableTest, ErrorsNameTheLine) {
  std::string good = std::string(kMappingTableHeader) + "\n";
  try {
    ParseMappingTable("# a: b\n" + good + "x,,,l,c,http://i,abc,1,tfidf,,Exact,Unapproved\n");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(ParseMappingTable("a,b,c\n"), FormatError);
  EXPECT_THROW(ParseMappingTable(good + "x,,,l,c,http://i,0.5,1,magic,,Exact,Unapproved\n"),
               FormatError);
  EXPECT_THROW(ParseMappingTable(good + "x,,,l,c,http://i,0.5,1,tfidf,,Exact\n"), FormatError);
  EXPECT_THROW(ParseMappingTable(good + "x,,,l,c,http://i,0.5,1,tfidf,,Exact,Maybe\n"),
               FormatError);
  EXPECT_THROW(ParseMappingTable(""), FormatError);
}

TEST(MappingConfigTest, ValidateRanges) {
  MappingConfig config;
  EXPECT_NO_THROW(config.Validate());
  config.max_mappings = 0;
  EXPECT_THROW(config.Validate(), ConfigError);
  config.max_mappings = 1;
  config.min_score = 1.5;
  EXPECT_THROW(config.Validate(), ConfigError);
  config.min_score = 0.3;
  config.ngram_size = 0;
  EXPECT_THROW(config.Validate(), ConfigError);
}

}  // namespace
}  // namespace termmap
