// Copyright 2026 The Condensedly Authors
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

#include "condensedly/aho_corasick.hpp"

#include <algorithm>
#include <queue>

namespace condensedly {

AhoCorasick::AhoCorasick(std::span<const std::string> patterns) {
  nodes_.emplace_back();
  for (std::size_t id = 0; id < patterns.size(); ++id) {
    const std::string& p = patterns[id];
    pattern_lengths_.push_back(p.size());
    if (p.empty()) continue;
    std::int32_t cur = 0;
    for (char ch : p) {
      auto byte = static_cast<std::uint8_t>(ch);
      std::int32_t next = Edge(cur, byte);
      if (next < 0) {
        next = static_cast<std::int32_t>(nodes_.size());
        nodes_.emplace_back();
        auto& edges = nodes_[cur].edges;
        auto pos = std::lower_bound(
            edges.begin(), edges.end(), byte,
            [](const auto& e, std::uint8_t b) { return e.first < b; });
        edges.insert(pos, {byte, next});
      }
      cur = next;
    }
    nodes_[cur].outputs.push_back(static_cast<std::int32_t>(id));
  }

  // Breadth-first fail links.
  std::queue<std::int32_t> queue;
  for (const auto& [byte, child] : nodes_[0].edges) {
    nodes_[child].fail = 0;
    queue.push(child);
  }
  while (!queue.empty()) {
    std::int32_t node = queue.front();
    queue.pop();
    for (const auto& [byte, child] : nodes_[node].edges) {
      std::int32_t f = nodes_[node].fail;
      while (f > 0 && Edge(f, byte) < 0) f = nodes_[f].fail;
      std::int32_t target = Edge(f, byte);
      nodes_[child].fail = (target >= 0 && target != child) ? target : 0;
      std::int32_t fl = nodes_[child].fail;
      nodes_[child].output_link = !nodes_[fl].outputs.empty() ? fl : nodes_[fl].output_link;
      queue.push(child);
    }
  }
}

std::int32_t AhoCorasick::Edge(std::int32_t node, std::uint8_t byte) const {
  const auto& edges = nodes_[node].edges;
  auto it = std::lower_bound(edges.begin(), edges.end(), byte,
                             [](const auto& e, std::uint8_t b) { return e.first < b; });
  return (it != edges.end() && it->first == byte) ? it->second : -1;
}

std::int32_t AhoCorasick::Next(std::int32_t state, std::uint8_t byte) const {
  while (true) {
    std::int32_t next = Edge(state, byte);
    if (next >= 0) return next;
    if (state == 0) return 0;
    state = nodes_[state].fail;
  }
}

}  // namespace condensedly
