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

#ifndef TERMMAP_FETCH_HPP_
#define TERMMAP_FETCH_HPP_

#include <chrono>
#include <string>

namespace termmap {

bool IsUrl(const std::string& locator);

// Reads a local file, or downloads an http(s) URL (redirects followed).
// Throws NotFoundError for missing files and TransportError for failed
// downloads.
std::string FetchLocator(const std::string& locator,
                         std::chrono::seconds timeout = std::chrono::seconds(120));

std::string ReadFile(const std::string& path);

}  // namespace termmap

#endif  // TERMMAP_FETCH_HPP_
