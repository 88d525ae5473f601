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

#include "termmap/remote.hpp"

#include <gtest/gtest.h>

#include <deque>
#include <mutex>

#include "termmap/engine.hpp"
#include "termmap/error.hpp"

namespace termmap {
namespace {

using std::chrono::milliseconds;

// Replays canned responses and records every request.
class StubTransport : public HttpTransport {
 public:
  explicit StubTransport(std::deque<HttpResponse> script, HttpResponse fallback = {200, "[]", ""})
      : script_(std::move(script)), fallback_(std::move(fallback)) {}

  HttpResponse Send(const HttpRequest& request) override {
    std::lock_guard<std::mutex> lock(mu_);
    requests.push_back(request);
    if (script_.empty()) return fallback_;
    auto r = script_.front();
    script_.pop_front();
    return r;
  }

  std::vector<HttpRequest> requests;

 private:
  std::mutex mu_;
  std::deque<HttpResponse> script_;
  HttpResponse fallback_;
};

RemoteOptions Quiet(std::vector<milliseconds>* sleeps = nullptr) {
  RemoteOptions options;
  options.base_url = "http://annotator.test";
  options.max_in_flight = 1;
  options.sleep = [sleeps](milliseconds d) {
    if (sleeps) sleeps->push_back(d);
  };
  return options;
}

const char* kBioportalHit = R"([{
  "annotatedClass": {"@id": "http://www.ebi.ac.uk/efo/EFO_0003777", "prefLabel": "heart disease",
                     "links": {"ontology": "http://data.bioontology.org/ontologies/EFO"}},
  "annotations": [{"from": 1, "to": 13, "matchType": "PREF", "text": "HEART DISEASE"}]
}])";

TEST(BioportalTest, BuildsRequestAndParsesAnnotations) {
  StubTransport transport({{200, kBioportalHit, ""}});
  auto result = BioportalAnnotate({MakeSourceTerm("heart disease")}, "EFO,HPO", "secret", transport,
                                  Quiet());
  ASSERT_EQ(transport.requests.size(), 1u);
  const auto& req = transport.requests[0];
  EXPECT_EQ(req.url.rfind("http://annotator.test/annotator?text=heart%20disease", 0), 0u) << req.url;
  EXPECT_NE(req.url.find("ontologies=EFO%2CHPO"), std::string::npos);
  EXPECT_NE(req.url.find("include=prefLabel"), std::string::npos);
  EXPECT_EQ(req.headers[0], (std::pair<std::string, std::string>{"Authorization", "apikey token=secret"}));
  ASSERT_EQ(result.annotations.size(), 1u);
  EXPECT_EQ(result.annotations[0].term_iri, "http://www.ebi.ac.uk/efo/EFO_0003777");
  EXPECT_EQ(result.annotations[0].term_label, "heart disease");
  EXPECT_EQ(result.annotations[0].ontology_acronym, "EFO");
  EXPECT_DOUBLE_EQ(result.annotations[0].score, 1.0);
  EXPECT_TRUE(result.failures.empty());
}

TEST(BioportalTest, MissingKeyFailsBeforeAnyRequest) {
  StubTransport transport({});
  EXPECT_THROW(BioportalAnnotate({MakeSourceTerm("x")}, "EFO", "", transport, Quiet()),
               CredentialError);
  EXPECT_TRUE(transport.requests.empty());
}

TEST(BioportalTest, RejectedKeyIsFatal) {
  StubTransport transport({{401, "", ""}});
  EXPECT_THROW(BioportalAnnotate({MakeSourceTerm("x")}, "EFO", "bad", transport, Quiet()),
               CredentialError);
}

TEST(BioportalTest, RetriesRateLimitWithBackoff) {
  std::vector<milliseconds> sleeps;
  StubTransport transport({{429, "", ""}, {429, "", ""}, {200, kBioportalHit, ""}});
  auto options = Quiet(&sleeps);
  options.request_delay = milliseconds(0);
  auto result = BioportalAnnotate({MakeSourceTerm("heart disease")}, "EFO", "k", transport, options);
  EXPECT_EQ(transport.requests.size(), 3u);
  EXPECT_EQ(result.requests, 3u);
  EXPECT_EQ(result.annotations.size(), 1u);
  EXPECT_EQ(sleeps, (std::vector<milliseconds>{milliseconds(500), milliseconds(1000)}));
}

TEST(BioportalTest, GivesUpAfterMaxRetries) {
  std::vector<milliseconds> sleeps;
  StubTransport transport({}, {503, "", ""});
  auto options = Quiet(&sleeps);
  options.request_delay = milliseconds(0);
  auto result = BioportalAnnotate({MakeSourceTerm("a")}, "EFO", "k", transport, options);
  EXPECT_EQ(transport.requests.size(), 5u);
  ASSERT_EQ(result.failures.size(), 1u);
  EXPECT_NE(result.failures[0].reason.find("503"), std::string::npos);
  EXPECT_EQ(sleeps.back(), milliseconds(4000));
}

TEST(BioportalTest, BatchesAttributeAnnotationsByOffset) {
  const char* body = R"([
    {"annotatedClass": {"@id": "http://x/A", "prefLabel": "asthma"},
     "annotations": [{"from": 1, "to": 6}]},
    {"annotatedClass": {"@id": "http://x/G", "prefLabel": "gout"},
     "annotations": [{"from": 8, "to": 11}]}])";
  StubTransport transport({{200, body, ""}});
  auto options = Quiet();
  options.batch_size = 2;
  auto result = BioportalAnnotate({MakeSourceTerm("asthma"), MakeSourceTerm("gout")}, "X", "k",
                                  transport, options);
  ASSERT_EQ(transport.requests.size(), 1u);
  EXPECT_NE(transport.requests[0].url.find("asthma%0Agout"), std::string::npos);
  ASSERT_EQ(result.annotations.size(), 2u);
  EXPECT_EQ(result.annotations[0].source_index, 0u);
  EXPECT_EQ(result.annotations[1].source_index, 1u);
  EXPECT_EQ(result.annotations[1].term_iri, "http://x/G");
}

TEST(BioportalTest, UnparsableBodyIsAPerTermFailure) {
  StubTransport transport({{200, "<html>", ""}});
  auto result = BioportalAnnotate({MakeSourceTerm("a")}, "EFO", "k", transport, Quiet());
  ASSERT_EQ(result.failures.size(), 1u);
  EXPECT_TRUE(result.annotations.empty());
}

TEST(ZoomaTest, ConfidenceTable) {
  EXPECT_EQ(ZoomaConfidenceScore("HIGH"), (std::pair<double, bool>{1.0, true}));
  EXPECT_EQ(ZoomaConfidenceScore("GOOD"), (std::pair<double, bool>{0.75, true}));
  EXPECT_EQ(ZoomaConfidenceScore("MEDIUM"), (std::pair<double, bool>{0.5, true}));
  EXPECT_EQ(ZoomaConfidenceScore("LOW"), (std::pair<double, bool>{0.25, true}));
  EXPECT_EQ(ZoomaConfidenceScore("SHAKY"), (std::pair<double, bool>{0.25, false}));
}

TEST(ZoomaTest, ParsesSemanticTagsAndWarnsOnUnknownConfidence) {
  const char* high = R"([{"confidence": "HIGH",
                          "semanticTags": ["http://www.ebi.ac.uk/efo/EFO_0003777"]}])";
  const char* odd = R"([{"confidence": "WEIRD", "semanticTags": ["http://x/Q"]}])";
  StubTransport transport({{200, high, ""}, {200, odd, ""}, {200, "", ""}});
  auto result = ZoomaAnnotate(
      {MakeSourceTerm("heart disease"), MakeSourceTerm("odd"), MakeSourceTerm("none")}, "EFO,HP",
      transport, Quiet());
  ASSERT_EQ(transport.requests.size(), 3u);
  EXPECT_NE(transport.requests[0].url.find("propertyValue=heart%20disease"), std::string::npos);
  EXPECT_NE(transport.requests[0].url.find(
                "filter=required%3A%5Bnone%5D%2Contologies%3A%5Befo%2Chp%5D"),
            std::string::npos)
      << transport.requests[0].url;
  ASSERT_EQ(result.annotations.size(), 2u);
  EXPECT_DOUBLE_EQ(result.annotations[0].score, 1.0);
  EXPECT_EQ(result.annotations[0].ontology_acronym, "EFO");
  EXPECT_DOUBLE_EQ(result.annotations[1].score, 0.25);
  EXPECT_EQ(result.warnings.size(), 1u);
  EXPECT_TRUE(result.failures.empty());
}

TEST(ZoomaTest, IgnoredTermsAreNotSent) {
  StubTransport transport({});
  auto ignored = MakeSourceTerm("n/a", std::nullopt, {"ignored"});
  ZoomaAnnotate({ignored, MakeSourceTerm("x")}, "", transport, Quiet());
  EXPECT_EQ(transport.requests.size(), 1u);
}

TEST(RemoteMapTermsTest, FailuresBecomeTaggedUnmappedRows) {
  auto transport = std::make_shared<StubTransport>(std::deque<HttpResponse>{}, HttpResponse{404, "", ""});
  MappingConfig config;
  config.mapper = Mapper::kZooma;
  config.remote_base_url = "http://annotator.test";
  config.incl_unmapped = true;
  auto table = MapTerms({MakeSourceTerm("x")}, std::string("EFO"), config, transport.get());
  EXPECT_TRUE(table.rows.empty());
  ASSERT_EQ(table.unmapped.size(), 1u);
  EXPECT_EQ(table.unmapped[0].tags.size(), 1u);
  EXPECT_EQ(table.unmapped[0].tags[0].rfind("failed:", 0), 0u);
}

TEST(RemoteMapTermsTest, ZoomaHitsBecomeRows) {
  const char* high = R"([{"confidence": "GOOD", "semanticTags": ["http://www.ebi.ac.uk/efo/EFO_0003777"]}])";
  StubTransport transport({{200, high, ""}});
  MappingConfig config;
  config.mapper = Mapper::kZooma;
  config.remote_base_url = "http://annotator.test";
  auto table = MapTerms({MakeSourceTerm("heart disease")}, std::string("EFO"), config, &transport);
  ASSERT_EQ(table.rows.size(), 1u);
  EXPECT_EQ(table.rows[0].target_curie, "EFO:0003777");
  EXPECT_DOUBLE_EQ(table.rows[0].score, 0.75);
  EXPECT_EQ(table.rows[0].mapper, Mapper::kZooma);
}

TEST(UrlEncodeTest, ReservedCharacters) {
  EXPECT_EQ(UrlEncode("a b,c/é"), "a%20b%2Cc%2F%C3%A9");
  EXPECT_EQ(UrlEncode("A-z_0.~"), "A-z_0.~");
}

}  // namespace
}  // namespace termmap
