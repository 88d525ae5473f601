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

#ifndef TERMMAP_ENGINE_HPP_
#define TERMMAP_ENGINE_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "termmap/hierarchy.hpp"
#include "termmap/mapping.hpp"
#include "termmap/ontology.hpp"
#include "termmap/preprocess.hpp"
#include "termmap/remote.hpp"

namespace termmap {

inline constexpr std::string_view kToolName = "termmap";
inline constexpr std::string_view kToolVersion = "1.0.0";

// Line input (one term per non-empty line) unless config.csv_column is set,
// in which case `content` is a table with a header row and that column.
// Throws InputError for empty input or a missing column.
std::vector<SourceTerm> ReadSourceTerms(std::string_view content, const MappingConfig& config);
std::vector<SourceTerm> ReadSourceTermsFile(const std::string& path, const MappingConfig& config);

// Full pipeline against a loaded ontology: normalize, rewrite, blocklist,
// filter the corpus, match, threshold and truncate. Remote mappers use
// `transport` (a real HTTP transport when null) and the ontology only to
// filter and label their results.
MappingTable MapTerms(std::vector<SourceTerm> terms, const Ontology& ontology,
                      const MappingConfig& config, HttpTransport* transport = nullptr);

// Resolves `target` first: a cached acronym when config.use_cache, else a
// path or URL. Remote mappers take `target` as the acronym list instead.
MappingTable MapTerms(std::vector<SourceTerm> terms, const std::string& target,
                      const MappingConfig& config, HttpTransport* transport = nullptr);

// Resolves a target as MapTerms does (cache or locator).
Ontology ResolveOntology(const std::string& target, const MappingConfig& config);

// Node-link JSON keyed by CURIE: for each distinct mapped term, the term, all
// of its ancestors and its direct children, with direct parent edges among
// those nodes.
std::string ExportTermGraphs(const MappingTable& table, const Ontology& ontology,
                             const HierarchyIndex& hierarchy);

std::vector<std::pair<std::string, std::string>> ConfigMetadata(const MappingConfig& config);

}  // namespace termmap

#endif  // TERMMAP_ENGINE_HPP_
