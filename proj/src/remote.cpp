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

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include <spdlog/spdlog.h>

#include "httplib.h"
#include "json.hpp"
#include "termmap/error.hpp"
#include "termmap/ontology.hpp"

namespace termmap {
namespace {

using json = nlohmann::json;
using Millis = std::chrono::milliseconds;

class HttplibTransport : public HttpTransport {
 public:
  HttpResponse Send(const HttpRequest& request) override {
    auto scheme_end = request.url.find("://");
    if (scheme_end == std::string::npos) return {0, "", "malformed URL " + request.url};
    auto path_start = request.url.find('/', scheme_end + 3);
    std::string origin = request.url.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/" : request.url.substr(path_start);

    httplib::Client client(origin);
    client.set_follow_location(true);
    client.set_connection_timeout(request.timeout);
    client.set_read_timeout(request.timeout);
    client.set_write_timeout(request.timeout);
    httplib::Headers headers(request.headers.begin(), request.headers.end());
    httplib::Result res = request.method == "POST"
                              ? client.Post(path, headers, request.body, "application/json")
                              : client.Get(path, headers);
    if (!res) return {0, "", httplib::to_string(res.error())};
    return {res->status, res->body, ""};
  }
};

// Spaces requests at least `delay` apart across all workers.
class Throttle {
 public:
  Throttle(Millis delay, std::function<void(Millis)> sleep)
      : delay_(delay), sleep_(std::move(sleep)) {}

  void Wait() {
    Millis wait{0};
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto now = std::chrono::steady_clock::now();
      if (next_ > now) wait = std::chrono::duration_cast<Millis>(next_ - now);
      next_ = std::max(now, next_) + delay_;
    }
    if (wait.count() > 0) sleep_(wait);
  }

 private:
  Millis delay_;
  std::function<void(Millis)> sleep_;
  std::mutex mu_;
  std::chrono::steady_clock::time_point next_{};
};

struct Batch {
  std::vector<std::size_t> indices;
  HttpRequest request;
  std::vector<std::size_t> offsets;  // byte offset of each term inside the batch text
};

struct BatchOutcome {
  std::optional<std::string> body;
  std::string failure;
  std::size_t attempts = 0;
};

BatchOutcome SendWithRetry(HttpTransport& transport, const HttpRequest& request,
                           const RetryPolicy& policy, Throttle& throttle,
                           const std::function<void(Millis)>& sleep) {
  BatchOutcome outcome;
  Millis backoff = policy.initial_backoff;
  for (int attempt = 0;; ++attempt) {
    throttle.Wait();
    HttpResponse response = transport.Send(request);
    ++outcome.attempts;
    if (response.status >= 200 && response.status < 300) {
      outcome.body = std::move(response.body);
      return outcome;
    }
    if (response.status == 401 || response.status == 403) {
      throw CredentialError("annotator rejected the API key (HTTP " +
                            std::to_string(response.status) + ")");
    }
    bool retryable = response.status == 0 || response.status == 429 || response.status >= 500;
    if (!retryable || attempt >= policy.max_retries) {
      outcome.failure = response.status == 0
                            ? "transport error: " + response.error
                            : "HTTP " + std::to_string(response.status);
      if (retryable) outcome.failure += " after " + std::to_string(attempt) + " retries";
      return outcome;
    }
    sleep(backoff);
    auto next = std::chrono::duration_cast<Millis>(backoff * policy.multiplier);
    backoff = std::min(next, policy.max_backoff);
  }
}

// Sends every batch with at most `max_in_flight` concurrent requests and
// hands successful bodies to `parse` in input order.
RemoteResult RunBatches(std::vector<Batch>& batches, HttpTransport& transport,
                        const RemoteOptions& options,
                        const std::function<void(const Batch&, const std::string&,
                                                 RemoteResult&)>& parse) {
  std::function<void(Millis)> sleep = options.sleep;
  if (!sleep) sleep = [](Millis d) { std::this_thread::sleep_for(d); };
  Throttle throttle(options.request_delay, sleep);

  std::vector<BatchOutcome> outcomes(batches.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (std::size_t b = next++; b < batches.size() && !abort; b = next++) {
      try {
        outcomes[b] = SendWithRetry(transport, batches[b].request, options.retry, throttle, sleep);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        abort = true;
      }
    }
  };
  std::size_t workers = std::clamp<std::size_t>(options.max_in_flight, 1, std::max<std::size_t>(1, batches.size()));
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  RemoteResult result;
  for (std::size_t b = 0; b < batches.size(); ++b) {
    result.requests += outcomes[b].attempts;
    if (!outcomes[b].body) {
      for (auto idx : batches[b].indices) result.failures.push_back({idx, outcomes[b].failure});
      continue;
    }
    try {
      parse(batches[b], *outcomes[b].body, result);
    } catch (const std::exception& e) {
      for (auto idx : batches[b].indices) {
        result.failures.push_back({idx, std::string("unparsable response: ") + e.what()});
      }
    }
  }
  std::stable_sort(result.annotations.begin(), result.annotations.end(),
                   [](const auto& a, const auto& b) { return a.source_index < b.source_index; });
  return result;
}

std::string AcronymFromIri(const std::string& iri) {
  std::string curie = CurieFromIri(iri);
  auto colon = curie.find(':');
  if (colon == std::string::npos || curie.find("://") != std::string::npos) return {};
  return curie.substr(0, colon);
}

std::string Trimmed(std::string s) {
  while (!s.empty() && s.back() == '/') s.pop_back();
  return s;
}

}  // namespace

std::unique_ptr<HttpTransport> MakeHttpTransport() { return std::make_unique<HttplibTransport>(); }

std::string UrlEncode(std::string_view text) {
  static const char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : text) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

std::pair<double, bool> ZoomaConfidenceScore(std::string_view confidence) {
  if (confidence == "HIGH") return {1.0, true};
  if (confidence == "GOOD") return {0.75, true};
  if (confidence == "MEDIUM") return {0.5, true};
  if (confidence == "LOW") return {0.25, true};
  return {0.25, false};
}

RemoteResult BioportalAnnotate(const std::vector<SourceTerm>& terms, const std::string& ontologies,
                               const std::string& api_key, HttpTransport& transport,
                               const RemoteOptions& options) {
  if (api_key.empty()) throw CredentialError("BioPortal requires an API key");
  std::string base = Trimmed(options.base_url.empty() ? std::string(kBioportalBaseUrl)
                                                      : options.base_url);
  std::size_t batch_size = std::max<std::size_t>(1, options.batch_size);

  std::vector<Batch> batches;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].ignored()) continue;
    if (batches.empty() || batches.back().indices.size() >= batch_size) batches.emplace_back();
    batches.back().indices.push_back(i);
  }
  for (auto& batch : batches) {
    std::string text;
    for (auto idx : batch.indices) {
      if (!text.empty()) text.push_back('\n');
      batch.offsets.push_back(text.size());
      text += terms[idx].text;
    }
    std::string url = base + "/annotator?text=" + UrlEncode(text) +
                      "&include=prefLabel&display_links=true&display_context=false";
    if (!ontologies.empty() && ontologies != "all") url += "&ontologies=" + UrlEncode(ontologies);
    batch.request.url = std::move(url);
    batch.request.headers = {{"Authorization", "apikey token=" + api_key},
                             {"Accept", "application/json"}};
    batch.request.timeout = options.timeout;
  }

  auto parse = [&](const Batch& batch, const std::string& body, RemoteResult& result) {
    json doc = json::parse(body);
    if (!doc.is_array()) throw FormatError("annotator response is not an array");
    for (const auto& item : doc) {
      const json& cls = item.value("annotatedClass", json::object());
      std::string iri = cls.value("@id", "");
      if (iri.empty()) continue;
      std::string label = cls.value("prefLabel", "");
      std::string acronym;
      if (cls.contains("links") && cls["links"].is_object()) {
        std::string link = cls["links"].value("ontology", "");
        acronym = link.substr(link.find_last_of('/') + 1);
      }
      if (acronym.empty()) acronym = AcronymFromIri(iri);

      // Attribute the annotation to the batch term(s) its spans fall in.
      std::vector<std::size_t> owners;
      const json& spans = item.value("annotations", json::array());
      for (const auto& span : spans) {
        std::size_t from = span.value("from", std::size_t{1});
        std::size_t pos = from > 0 ? from - 1 : 0;
        auto it = std::upper_bound(batch.offsets.begin(), batch.offsets.end(), pos);
        std::size_t k = static_cast<std::size_t>(it - batch.offsets.begin()) - 1;
        if (std::find(owners.begin(), owners.end(), k) == owners.end()) owners.push_back(k);
      }
      if (owners.empty() && batch.indices.size() == 1) owners.push_back(0);
      for (auto k : owners) {
        std::size_t idx = batch.indices[k];
        bool seen = std::any_of(result.annotations.begin(), result.annotations.end(),
                                [&](const auto& a) { return a.source_index == idx && a.term_iri == iri; });
        if (seen) continue;
        result.annotations.push_back({idx, terms[idx].text, iri, label, acronym, 1.0, item.dump()});
      }
    }
  };
  return RunBatches(batches, transport, options, parse);
}

RemoteResult ZoomaAnnotate(const std::vector<SourceTerm>& terms, const std::string& ontologies,
                           HttpTransport& transport, const RemoteOptions& options) {
  std::string base = Trimmed(options.base_url.empty() ? std::string(kZoomaBaseUrl)
                                                      : options.base_url);
  std::string filter;
  if (!ontologies.empty() && ontologies != "all") {
    std::string lowered;
    for (char c : ontologies) {
      if (c != ' ') lowered.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    filter = "&filter=" + UrlEncode("required:[none],ontologies:[" + lowered + "]");
  }
  std::vector<Batch> batches;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].ignored()) continue;
    Batch batch;
    batch.indices = {i};
    batch.offsets = {0};
    batch.request.url = base + "/services/annotate?propertyValue=" + UrlEncode(terms[i].text) + filter;
    batch.request.headers = {{"Accept", "application/json"}};
    batch.request.timeout = options.timeout;
    batches.push_back(std::move(batch));
  }

  auto parse = [&](const Batch& batch, const std::string& body, RemoteResult& result) {
    std::size_t idx = batch.indices.front();
    if (body.find_first_not_of(" \t\r\n") == std::string::npos) return;
    json doc = json::parse(body);
    if (!doc.is_array()) throw FormatError("zooma response is not an array");
    for (const auto& item : doc) {
      std::string confidence = item.value("confidence", "");
      auto [score, known] = ZoomaConfidenceScore(confidence);
      if (!known) {
        std::string warning = "unknown Zooma confidence '" + confidence + "' for '" +
                              terms[idx].text + "'; scored 0.25";
        spdlog::warn(warning);
        result.warnings.push_back(std::move(warning));
      }
      const json& tags = item.value("semanticTags", json::array());
      for (const auto& tag : tags) {
        if (!tag.is_string()) continue;
        std::string iri = tag.get<std::string>();
        bool seen = std::any_of(result.annotations.begin(), result.annotations.end(),
                                [&](const auto& a) { return a.source_index == idx && a.term_iri == iri; });
        if (seen) continue;
        result.annotations.push_back(
            {idx, terms[idx].text, iri, "", AcronymFromIri(iri), score, item.dump()});
      }
    }
  };
  return RunBatches(batches, transport, options, parse);
}

}  // namespace termmap
