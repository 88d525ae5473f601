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

#ifndef TERMMAP_HIERARCHY_HPP_
#define TERMMAP_HIERARCHY_HPP_

#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "termmap/ontology.hpp"

namespace termmap {

// Transitive closure over asserted parent links. Only parents that resolve
// to terms of the ontology take part; edges that would close a cycle are
// dropped and listed in `pruned_edges` as (child, parent).
struct HierarchyIndex {
  std::unordered_map<std::string, std::set<std::string>> ancestors;
  std::unordered_map<std::string, std::set<std::string>> descendants;
  std::unordered_map<std::string, std::set<std::string>> direct_parents;
  std::vector<std::pair<std::string, std::string>> pruned_edges;

  // Empty set for unknown IRIs.
  const std::set<std::string>& AncestorsOf(const std::string& iri) const;
  const std::set<std::string>& DescendantsOf(const std::string& iri) const;
  const std::set<std::string>& ParentsOf(const std::string& iri) const;

  bool operator==(const HierarchyIndex&) const = default;
};

HierarchyIndex BuildHierarchy(const Ontology& ontology);

}  // namespace termmap

#endif  // TERMMAP_HIERARCHY_HPP_
