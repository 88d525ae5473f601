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

#ifndef TERMMAP_SERVICE_HPP_
#define TERMMAP_SERVICE_HPP_

#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>

#include "termmap/remote.hpp"

namespace termmap {

struct ServiceOptions {
  std::size_t workers = 2;
  std::size_t max_payload_bytes = 50u * 1024u * 1024u;
  // Sessions are written here as mapping-table CSVs and reloaded at start.
  std::filesystem::path session_dir = "termmap-sessions";
  std::string cache_root;  // empty: OntologyCache::DefaultRoot()
  // Used by remote mappers; a real HTTP transport when null.
  std::shared_ptr<HttpTransport> transport;
};

// HTTP API for interactive curation:
//   POST  /api/jobs                          submit (multipart form)      -> 202 {job_id}
//   GET   /api/jobs/{id}                     job state
//   GET   /api/jobs/{id}/result              ranked mappings as JSON      (409 until done)
//   GET   /api/jobs/{id}/result.csv          mapping table bytes
//   GET   /api/jobs/{id}/graphs              term graphs document
//   POST  /api/sessions/resume               upload a mapping table       -> 201 {session_id}
//   GET   /api/sessions/{id}[/result.csv]
//   PATCH /api/sessions/{id}/rows/{row}      mapping_type / approval / alternate swap
//   GET   /api/terms/neighborhood?iri=&job=  ancestors, children, instances
// A finished job is also a session with the same id.
class MappingService {
 public:
  explicit MappingService(ServiceOptions options);
  ~MappingService();
  MappingService(const MappingService&) = delete;
  MappingService& operator=(const MappingService&) = delete;

  // Returns the bound port, or -1.
  int BindToAnyPort(const std::string& host = "127.0.0.1");
  bool Bind(const std::string& host, int port);
  // Serves until Stop(); call after a successful bind.
  bool Run();
  void Stop();
  void WaitUntilReady() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace termmap

#endif  // TERMMAP_SERVICE_HPP_
