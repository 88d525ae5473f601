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

#ifndef TERMMAP_UNICODE_HPP_
#define TERMMAP_UNICODE_HPP_

#include <string>
#include <string_view>

namespace termmap::unicode {

// Lenient UTF-8 decoding: invalid bytes decode to U+FFFD.
std::u32string Decode(std::string_view utf8);
std::string Encode(std::u32string_view text);

// NFC composition followed by full lowercasing (root locale).
std::string NfcLower(std::string_view utf8);

bool IsSpace(char32_t c);

}  // namespace termmap::unicode

#endif  // TERMMAP_UNICODE_HPP_
