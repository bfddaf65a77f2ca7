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
#include <span>
#include <utility>
#include <vector>

#include "infmax/graph.hpp"
#include "infmax/seeds.hpp"

namespace infmax {

// Exact influence of a seed set: multi-source forward BFS per instance.
InfluenceValue exact_influence(const MultiInstanceGraph& g, std::span<const Node> seeds);

// Incremental covering state shared by the greedy baselines: tracks the
// node-instance pairs covered by the seeds added so far.
class CoverState {
 public:
  explicit CoverState(const MultiInstanceGraph& g);

  // Marginal gain of v in covered pairs, without mutating the state.
  std::int64_t gain(Node v) const;
  // Covers everything reachable from v; returns the newly covered pairs.
  std::int64_t add_seed(Node v);

  std::int64_t covered_pairs() const { return covered_pairs_; }
  bool covered(Node v, std::uint32_t i) const {
    return covered_[std::size_t(i) * g_->n() + v] != 0;
  }

 private:
  template <bool Mark>
  std::int64_t sweep(Node v) const;

  const MultiInstanceGraph* g_;
  mutable std::vector<std::uint8_t> covered_;
  std::int64_t covered_pairs_ = 0;
  mutable std::vector<std::uint32_t> stamp_;
  mutable std::uint32_t cur_ = 0;
  mutable std::vector<Node> queue_;
};

// Exact greedy influence maximization.  Lazy mode re-evaluates marginal
// gains only when a node reaches the top of the queue (valid by
// submodularity); naive mode re-evaluates every node each round and is the
// differential oracle for the lazy path.  Ties break to the smaller id.
SeedSequence exact_greedy(const MultiInstanceGraph& g, std::uint32_t s, bool lazy = true);

// Exhaustive optimum over all size-s subsets; refuses when C(n, s) > 1e6.
std::pair<std::vector<Node>, InfluenceValue> brute_force_optimum(
    const MultiInstanceGraph& g, std::uint32_t s);

// Nodes by decreasing out-degree in the union graph (ties by id), with
// exact marginal influences evaluated along the sequence.
SeedSequence degree_baseline(const MultiInstanceGraph& g, std::uint32_t s);

}  // namespace infmax
