// Copyright 2026 The Authors.
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

#include <cstdint>
#include <vector>

#include "infmax/graph.hpp"

namespace infmax {

// Exact influence: integer count of covered node-instance pairs over ell
// instances.  value() is in expected-node units.
struct InfluenceValue {
  std::int64_t pairs = 0;
  std::uint32_t ell = 1;
  double value() const { return double(pairs) / double(ell); }
};

// One selected seed with its exact marginal influence, kept as an integer
// pair count so prefix sums stay exact.
struct SeedEntry {
  Node node = 0;
  std::int64_t marginal_pairs = 0;
};

// Ordered seed selection; the prefix sum of marginals equals the exact
// influence of the prefix.
struct SeedSequence {
  std::vector<SeedEntry> entries;
  std::uint32_t ell = 1;

  std::size_t size() const { return entries.size(); }
  double marginal(std::size_t i) const {
    return double(entries[i].marginal_pairs) / double(ell);
  }
  std::int64_t cumulative_pairs(std::size_t count) const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < count && i < entries.size(); ++i)
      s += entries[i].marginal_pairs;
    return s;
  }
  std::vector<Node> prefix_nodes(std::size_t count) const {
    std::vector<Node> out;
    for (std::size_t i = 0; i < count && i < entries.size(); ++i)
      out.push_back(entries[i].node);
    return out;
  }
};

}  // namespace infmax
