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

#include "termmap/preprocess.hpp"

#include <gtest/gtest.h>

#include "termmap/error.hpp"

namespace termmap {
namespace {

TEST(NormalizeTest, LowercasesTrimsAndCollapses) {
  EXPECT_EQ(Normalize("  Heart\t\tDISEASE \n"), "heart disease");
  EXPECT_EQ(Normalize(""), "");
  EXPECT_EQ(Normalize("   "), "");
}

TEST(NormalizeTest, ComposesToNfc) {
  // "e" + combining acute accent becomes the precomposed code point.
  EXPECT_EQ(Normalize("Caf\x65\xCC\x81"), "caf\xC3\xA9");
  EXPECT_EQ(Normalize("ÄRZTE"), "ärzte");
}

TEST(NormalizeTest, NoBreakSpaceIsWhitespace) {
  EXPECT_EQ(Normalize("a\xC2\xA0\xC2\xA0" "b"), "a b");
}

TEST(SourceTermTest, MakeNormalizes) {
  auto t = MakeSourceTerm(" Asthma ", std::string("S1"), {"x"});
  EXPECT_EQ(t.text, " Asthma ");
  EXPECT_EQ(t.normalized, "asthma");
  EXPECT_EQ(t.id, "S1");
  EXPECT_TRUE(t.has_tag("x"));
  EXPECT_FALSE(t.ignored());
}

TEST(TemplatesTest, FirstMatchingTemplateRewrites) {
  auto terms = ApplyRegexTemplates(
      {MakeSourceTerm("Family history of asthma"), MakeSourceTerm("asthma"),
       MakeSourceTerm("history of Gout")},
      {R"(family history of (.+))", R"(history of (.+))"});
  EXPECT_EQ(terms[0].text, "asthma");
  EXPECT_EQ(terms[0].normalized, "asthma");
  EXPECT_TRUE(terms[0].has_tag("rewritten:0"));
  EXPECT_EQ(terms[1].tags.size(), 0u);
  EXPECT_EQ(terms[2].normalized, "gout");
  EXPECT_TRUE(terms[2].has_tag("rewritten:1"));
}

TEST(TemplatesTest, RequireExactlyOneGroup) {
  EXPECT_THROW(ApplyRegexTemplates({MakeSourceTerm("a")}, {"no group"}), ConfigError);
  EXPECT_THROW(ApplyRegexTemplates({MakeSourceTerm("a")}, {"(a)(b)"}), ConfigError);
  EXPECT_THROW(ApplyRegexTemplates({MakeSourceTerm("a")}, {"(unclosed"}), ConfigError);
}

TEST(BlocklistTest, FullMatchMarksIgnored) {
  auto terms = ApplyBlocklist({MakeSourceTerm("N/A"), MakeSourceTerm("Unknown"),
                               MakeSourceTerm("unknown disease")},
                              {"n/a", "unknown"});
  EXPECT_TRUE(terms[0].ignored());
  EXPECT_TRUE(terms[1].ignored());
  EXPECT_FALSE(terms[2].ignored());
}

TEST(PatternFileTest, SkipsCommentsAndBlankLines) {
  EXPECT_EQ(ParsePatternFile("# header\n\nfoo (.+)\r\n  # note\nbar\n"),
            (std::vector<std::string>{"foo (.+)", "bar"}));
}

}  // namespace
}  // namespace termmap
