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

#ifndef TERMMAP_REMOTE_HPP_
#define TERMMAP_REMOTE_HPP_

#include <chrono>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "termmap/preprocess.hpp"

namespace termmap {

struct HttpRequest {
  std::string method = "GET";
  std::string url;
  std::vector<std::pair<std::string, std::string>> headers;
  std::string body;
  std::chrono::milliseconds timeout{30000};
};

// status == 0 means the request never produced a response; `error` says why.
struct HttpResponse {
  int status = 0;
  std::string body;
  std::string error;
};

// Injected into the annotator clients so they can run against stubs.
class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpResponse Send(const HttpRequest& request) = 0;
};

std::unique_ptr<HttpTransport> MakeHttpTransport();

struct RetryPolicy {
  int max_retries = 4;
  std::chrono::milliseconds initial_backoff{500};
  double multiplier = 2.0;
  std::chrono::milliseconds max_backoff{8000};
};

struct RemoteOptions {
  std::string base_url;  // empty: the service's public endpoint
  std::size_t batch_size = 1;
  std::chrono::milliseconds request_delay{250};
  std::chrono::milliseconds timeout{30000};
  RetryPolicy retry;
  std::size_t max_in_flight = 2;
  // Defaults to std::this_thread::sleep_for; tests substitute a recorder.
  std::function<void(std::chrono::milliseconds)> sleep;
};

inline constexpr std::string_view kBioportalBaseUrl = "https://data.bioontology.org";
inline constexpr std::string_view kZoomaBaseUrl = "https://www.ebi.ac.uk/spot/zooma/v2/api";

struct RemoteAnnotation {
  std::size_t source_index = 0;  // position in the input term list
  std::string source_text;
  std::string term_iri;
  std::string term_label;
  std::string ontology_acronym;
  double score = 0.0;
  std::string raw_payload;  // JSON fragment the annotation came from
  bool operator==(const RemoteAnnotation&) const = default;
};

struct RemoteFailure {
  std::size_t source_index = 0;
  std::string reason;
};

struct RemoteResult {
  std::vector<RemoteAnnotation> annotations;  // ordered by source_index
  std::vector<RemoteFailure> failures;
  std::vector<std::string> warnings;
  std::size_t requests = 0;  // including retries
};

// BioPortal Annotator. `ontologies` is a comma-separated acronym list or
// "all". Every annotation scores 1.0. Throws CredentialError on an empty key
// or HTTP 401/403; exhausted retries are reported per term in `failures`.
RemoteResult BioportalAnnotate(const std::vector<SourceTerm>& terms, const std::string& ontologies,
                               const std::string& api_key, HttpTransport& transport,
                               const RemoteOptions& options = {});

// Zooma. Confidence levels map to scores HIGH 1.0, GOOD 0.75, MEDIUM 0.5,
// LOW 0.25; anything else scores 0.25 with a warning. Zooma annotates one
// value per request, so batch_size is ignored.
RemoteResult ZoomaAnnotate(const std::vector<SourceTerm>& terms, const std::string& ontologies,
                           HttpTransport& transport, const RemoteOptions& options = {});

// Returns the score and whether the level was recognized.
std::pair<double, bool> ZoomaConfidenceScore(std::string_view confidence);

std::string UrlEncode(std::string_view text);

}  // namespace termmap

#endif  // TERMMAP_REMOTE_HPP_
