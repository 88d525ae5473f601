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

#include <csignal>
#include <iostream>

#include "CLI11.hpp"
#include "termmap/cache.hpp"
#include "termmap/service.hpp"

namespace {
termmap::MappingService* g_service = nullptr;
void HandleSignal(int) {
  if (g_service) g_service->Stop();
}
}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"termmap-server: HTTP API for interactive term mapping", "termmap-server"};
  std::string host = "0.0.0.0";
  int port = 8080;
  termmap::ServiceOptions options;
  std::string session_dir = options.session_dir.string();
  std::size_t max_payload_mb = 50;
  app.add_option("--host", host, "Address to listen on")->capture_default_str();
  app.add_option("--port", port, "Port to listen on")->capture_default_str();
  app.add_option("--workers", options.workers, "Concurrent mapping jobs")->capture_default_str();
  app.add_option("--max-upload-mb", max_payload_mb, "Largest accepted request body")
      ->capture_default_str();
  app.add_option("--session-dir", session_dir, "Where curation sessions are kept")
      ->capture_default_str();
  app.add_option("--cache-dir", options.cache_root, "Ontology cache directory (env TERMMAP_CACHE_DIR)");
  CLI11_PARSE(app, argc, argv);

  options.session_dir = session_dir;
  options.max_payload_bytes = max_payload_mb * 1024 * 1024;
  if (options.cache_root.empty()) options.cache_root = termmap::OntologyCache::DefaultRoot().string();

  termmap::MappingService service(options);
  if (!service.Bind(host, port)) {
    std::cerr << "cannot bind " << host << ":" << port << "\n";
    return 2;
  }
  g_service = &service;
  std::signal(SIGINT, HandleSignal);
  std::signal(SIGTERM, HandleSignal);
  std::cout << "listening on " << host << ":" << port << std::endl;
  return service.Run() ? 0 : 2;
}
