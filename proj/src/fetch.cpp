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

#include "termmap/fetch.hpp"

#include <fstream>
#include <sstream>

#include "httplib.h"
#include "termmap/error.hpp"

namespace termmap {

bool IsUrl(const std::string& locator) {
  return locator.rfind("http://", 0) == 0 || locator.rfind("https://", 0) == 0;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string FetchLocator(const std::string& locator, std::chrono::seconds timeout) {
  if (!IsUrl(locator)) return ReadFile(locator);

  auto scheme_end = locator.find("://") + 3;
  auto path_start = locator.find('/', scheme_end);
  std::string origin = locator.substr(0, path_start);
  std::string path = path_start == std::string::npos ? "/" : locator.substr(path_start);

  httplib::Client client(origin);
  client.set_follow_location(true);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  auto res = client.Get(path);
  if (!res) {
    throw TransportError("download failed for " + locator + ": " +
                         httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw TransportError("download failed for " + locator + ": HTTP " +
                         std::to_string(res->status));
  }
  return res->body;
}

}  // namespace termmap
