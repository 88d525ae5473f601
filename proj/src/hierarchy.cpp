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

#include "termmap/hierarchy.hpp"

#include <spdlog/spdlog.h>

namespace termmap {
namespace {

const std::set<std::string>& Lookup(
    const std::unordered_map<std::string, std::set<std::string>>& map,
    const std::string& key) {
  static const std::set<std::string> kEmpty;
  auto it = map.find(key);
  return it == map.end() ? kEmpty : it->second;
}

enum class Color { kWhite, kGray, kBlack };

}  // namespace

const std::set<std::string>& HierarchyIndex::AncestorsOf(const std::string& iri) const {
  return Lookup(ancestors, iri);
}
const std::set<std::string>& HierarchyIndex::DescendantsOf(const std::string& iri) const {
  return Lookup(descendants, iri);
}
const std::set<std::string>& HierarchyIndex::ParentsOf(const std::string& iri) const {
  return Lookup(direct_parents, iri);
}

HierarchyIndex BuildHierarchy(const Ontology& ontology) {
  HierarchyIndex index;
  const auto& terms = ontology.terms();
  for (const auto& [iri, term] : terms) {
    auto& parents = index.direct_parents[iri];
    for (const auto& p : term.parents) {
      if (terms.count(p)) parents.insert(p);
    }
    index.ancestors[iri];
    index.descendants[iri];
  }

  // Iterative DFS along parent links in ascending IRI order. An edge into a
  // node still on the stack closes a cycle and is dropped. Ancestor sets are
  // filled at finish time, when every remaining parent is already finished.
  std::unordered_map<std::string, Color> color;
  color.reserve(terms.size());
  struct Frame {
    const std::string* iri;
    std::vector<std::string> parents;  // snapshot; pruning edits the live set
    std::size_t next = 0;
  };
  for (const auto& [root, unused] : terms) {
    if (color[root] != Color::kWhite) continue;
    std::vector<Frame> stack;
    auto push = [&](const std::string& iri) {
      color[iri] = Color::kGray;
      const auto& ps = index.direct_parents[iri];
      stack.push_back(Frame{&iri, std::vector<std::string>(ps.begin(), ps.end())});
    };
    push(root);
    while (!stack.empty()) {
      Frame& frame = stack.back();
      if (frame.next < frame.parents.size()) {
        const std::string& parent = frame.parents[frame.next++];
        Color c = color[parent];
        if (c == Color::kGray) {
          spdlog::warn("hierarchy cycle: ignoring edge {} -> {}", *frame.iri, parent);
          index.direct_parents[*frame.iri].erase(parent);
          index.pruned_edges.emplace_back(*frame.iri, parent);
        } else if (c == Color::kWhite) {
          push(terms.find(parent)->first);
        }
        continue;
      }
      const std::string& iri = *frame.iri;
      auto& anc = index.ancestors[iri];
      for (const auto& p : index.direct_parents[iri]) {
        anc.insert(p);
        const auto& pa = index.ancestors[p];
        anc.insert(pa.begin(), pa.end());
      }
      color[iri] = Color::kBlack;
      stack.pop_back();
    }
  }

  for (const auto& [iri, anc] : index.ancestors) {
    for (const auto& a : anc) index.descendants[a].insert(iri);
  }
  return index;
}

}  // namespace termmap
