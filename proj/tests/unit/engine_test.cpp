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

#include "termmap/engine.hpp"

#include <gtest/gtest.h>

#include "json.hpp"
#include "termmap/error.hpp"
#include "termmap/hierarchy.hpp"

namespace termmap {
namespace {

const std::string kData = TERMMAP_TEST_DATA;

Ontology Mini() { return LoadOntology(kData + "/mini_disease.json", "MINI"); }

std::vector<SourceTerm> Terms(std::initializer_list<const char*> texts) {
  std::vector<SourceTerm> out;
  for (const char* t : texts) out.push_back(MakeSourceTerm(t));
  return out;
}

TEST(ReadSourceTermsTest, PlainLines) {
  MappingConfig config;
  auto terms = ReadSourceTerms("heart disease\r\n\n  \nasthma\n", config);
  ASSERT_EQ(terms.size(), 2u);
  EXPECT_EQ(terms[1].normalized, "asthma");
}

TEST(ReadSourceTermsTest, CsvColumnAndIds) {
  MappingConfig config;
  config.csv_column = "trait";
  config.source_terms_ids_column = "sample";
  auto terms = ReadSourceTermsFile(kData + "/source_terms.csv", config);
  ASSERT_EQ(terms.size(), 3u);
  EXPECT_EQ(terms[1].text, "Alzheimers disease");
  EXPECT_EQ(terms[1].id, "S2");
}

TEST(ReadSourceTermsTest, MissingColumnListsAvailable) {
  MappingConfig config;
  config.csv_column = "phenotype";
  try {
    ReadSourceTermsFile(kData + "/source_terms.csv", config);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("sample, trait, note"), std::string::npos);
  }
  EXPECT_THROW(ReadSourceTerms("\n\n", MappingConfig{}), InputError);
}

TEST(MapTermsTest, MapsFixtureTerms) {
  auto table = MapTerms(Terms({"heart disease", "alzheimers", "panic attack"}), Mini(), {});
  ASSERT_EQ(table.rows.size(), 3u);
  EXPECT_EQ(table.rows[0].target_curie, "EFO:0003777");
  EXPECT_EQ(table.rows[1].target_curie, "MONDO:0004975");
  EXPECT_EQ(table.rows[2].target_curie, "EFO:0004262");
  EXPECT_EQ(table.rows[2].matched_string, "panic attack");
  for (const auto& row : table.rows) {
    EXPECT_NEAR(row.score, 1.0, 1e-9);
    EXPECT_EQ(row.rank, 1u);
  }
  EXPECT_EQ(*table.Metadata("ontology"), "MINI");
  EXPECT_EQ(*table.Metadata("mapper"), "tfidf");
}

TEST(MapTermsTest, EverySyntacticMapperFindsExactLabels) {
  for (Mapper m : {Mapper::kLevenshtein, Mapper::kJaro, Mapper::kJaroWinkler, Mapper::kJaccard,
                   Mapper::kIndel, Mapper::kTfidf}) {
    MappingConfig config;
    config.mapper = m;
    auto table = MapTerms(Terms({"Coronary Artery Disease"}), Mini(), config);
    ASSERT_EQ(table.rows.size(), 1u) << ToString(m);
    EXPECT_EQ(table.rows[0].target_curie, "MONDO:0005010") << ToString(m);
    EXPECT_NEAR(table.rows[0].score, 1.0, 1e-9);
  }
}

TEST(MapTermsTest, RanksAlternatesAndHonoursLimits) {
  MappingConfig config;
  config.max_mappings = 3;
  config.min_score = 0.1;
  auto table = MapTerms(Terms({"heart disease"}), Mini(), config);
  ASSERT_GE(table.rows.size(), 2u);
  ASSERT_LE(table.rows.size(), 3u);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    EXPECT_EQ(table.rows[i].rank, i + 1);
    EXPECT_GE(table.rows[i].score, 0.1);
    if (i) EXPECT_LE(table.rows[i].score, table.rows[i - 1].score);
  }
}

TEST(MapTermsTest, DeprecatedAndBaseIriFilters) {
  MappingConfig config;
  config.max_mappings = 20;
  config.min_score = 0.0;
  config.excl_deprecated = true;
  config.base_iris = {"http://purl.obolibrary.org/obo/"};
  auto table = MapTerms(Terms({"heart attack disease"}), Mini(), config);
  ASSERT_FALSE(table.rows.empty());
  for (const auto& row : table.rows) {
    EXPECT_EQ(row.target_iri.rfind("http://purl.obolibrary.org/obo/", 0), 0u);
    EXPECT_NE(row.target_curie, "EFO:0001234");
  }
}

TEST(MapTermsTest, UnmappedTermsAreKeptAside) {
  MappingConfig config;
  config.min_score = 0.9;
  config.incl_unmapped = true;
  auto table = MapTerms(Terms({"heart disease", "qqqq"}), Mini(), config);
  ASSERT_EQ(table.rows.size(), 1u);
  ASSERT_EQ(table.unmapped.size(), 1u);
  EXPECT_EQ(table.unmapped[0].text, "qqqq");
  EXPECT_TRUE(table.include_unmapped());
}

TEST(MapTermsTest, BlocklistedTermsBecomeIgnoredRows) {
  MappingConfig config;
  config.blocklist = {"n/?a"};
  config.templates = {"family history of (.+)"};
  auto table = MapTerms(Terms({"NA", "Family history of heart disease"}), Mini(), config);
  ASSERT_EQ(table.rows.size(), 2u);
  EXPECT_TRUE(table.rows[0].source.ignored());
  EXPECT_FALSE(table.rows[0].has_target());
  EXPECT_EQ(table.rows[1].target_curie, "EFO:0003777");
  EXPECT_TRUE(table.rows[1].source.has_tag("rewritten:0"));
}

TEST(MapTermsTest, PropertiesOnlyWhenRequested) {
  MappingConfig config;
  auto classes = MapTerms(Terms({"has part"}), Mini(), config);
  config.term_type = TermTypeFilter::kProperties;
  auto props = MapTerms(Terms({"has part"}), Mini(), config);
  ASSERT_EQ(props.rows.size(), 1u);
  EXPECT_EQ(props.rows[0].target_curie, "BFO:0000051");
  for (const auto& row : classes.rows) EXPECT_NE(row.target_curie, "BFO:0000051");
}

TEST(MapTermsTest, InvalidConfigIsRejected) {
  MappingConfig config;
  config.max_mappings = 0;
  EXPECT_THROW(MapTerms(Terms({"x"}), Mini(), config), ConfigError);
}

TEST(ExportTermGraphsTest, DiamondNeighbourhood) {
  auto ontology = ParseTermTable(
      "iri,label,parents\n"
      "http://x/T,top,\n"
      "http://x/L,left,http://x/T\n"
      "http://x/R,right,http://x/T\n"
      "http://x/B,bottom,http://x/L|http://x/R\n"
      "http://x/C,child,http://x/B\n");
  auto hierarchy = BuildHierarchy(ontology);
  MappingTable table;
  Mapping row;
  row.source = MakeSourceTerm("bottom");
  row.target_iri = "http://x/B";
  row.target_curie = ontology.Find("http://x/B")->curie;
  row.rank = 1;
  table.rows = {row, row};
  auto doc = nlohmann::json::parse(ExportTermGraphs(table, ontology, hierarchy));
  ASSERT_EQ(doc.size(), 1u);
  const auto& graph = doc.begin().value();
  EXPECT_EQ(graph["label"], "bottom");
  EXPECT_TRUE(graph["directed"].get<bool>());
  EXPECT_EQ(graph["nodes"].size(), 5u);
  // B->L, B->R, L->T, R->T, C->B: each edge exactly once.
  EXPECT_EQ(graph["links"].size(), 5u);
  std::set<std::pair<std::string, std::string>> links;
  for (const auto& l : graph["links"]) links.emplace(l["source"], l["target"]);
  EXPECT_EQ(links.size(), 5u);
}

TEST(ConfigMetadataTest, RecordsSettings) {
  MappingConfig config;
  config.min_score = 0.25;
  config.base_iris = {"http://a/", "http://b/"};
  auto meta = ConfigMetadata(config);
  auto find = [&](const std::string& key) {
    for (const auto& [k, v] : meta) if (k == key) return v;
    return std::string("<missing>");
  };
  EXPECT_EQ(find("min_score"), "0.25");
  EXPECT_EQ(find("mapper"), "tfidf");
  EXPECT_EQ(find("incl_unmapped"), "false");
  EXPECT_NE(find("base_iris"), "<missing>");
}

}  // namespace
}  // namespace termmap
