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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace condensedly {

// Byte-level Aho-Corasick automaton. Immutable once built.
class AhoCorasick {
 public:
  AhoCorasick() = default;
  explicit AhoCorasick(std::span<const std::string> patterns);

  std::size_t pattern_count() const { return pattern_lengths_.size(); }
  std::size_t pattern_length(std::size_t id) const { return pattern_lengths_[id]; }

  // Calls fn(pattern_id, end_offset) for every occurrence of every
  // pattern, including overlapping ones, in order of end offset.
  template <typename Fn>
  void for_each_match(std::string_view text, Fn&& fn) const {
    if (nodes_.empty()) return;
    std::int32_t state = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      state = Next(state, static_cast<std::uint8_t>(text[i]));
      for (std::int32_t s = state; s > 0; s = nodes_[s].output_link) {
        for (std::int32_t id : nodes_[s].outputs) fn(static_cast<std::size_t>(id), i + 1);
      }
    }
  }

 private:
  struct Node {
    std::vector<std::pair<std::uint8_t, std::int32_t>> edges;  // sorted
    std::int32_t fail = 0;
    std::int32_t output_link = -1;  // nearest proper suffix with outputs
    std::vector<std::int32_t> outputs;
  };

  std::int32_t Edge(std::int32_t node, std::uint8_t byte) const;
  std::int32_t Next(std::int32_t state, std::uint8_t byte) const;

  std::vector<Node> nodes_;
  std::vector<std::size_t> pattern_lengths_;
};

}  // namespace condensedly
