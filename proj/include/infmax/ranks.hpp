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
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "infmax/graph.hpp"

namespace infmax {

// Permutation position over node-instance pairs, starting at 1.
using Rank = std::uint64_t;

// Structured permutation ranks over the n*ell node-instance pairs.  The
// permutation is organized in chunks of n consecutive positions: within a
// chunk every node appears exactly once, and the instance paired with node
// v in chunk j is drawn uniformly from the instances not yet used for v.
// Initially min(k, ell) chunks are materialized (no later position can
// enter a bottom-k sketch); extend() materializes further chunks on demand,
// up to all ell.  Immutable apart from extend(); ranks are exact integers.
class RankAssignment {
 public:
  RankAssignment(Node n, std::uint32_t ell, std::uint32_t k, std::uint64_t seed);

  Node n() const { return n_; }
  std::uint32_t instances() const { return ell_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t universe() const { return std::uint64_t(n_) * ell_; }  // D
  std::uint32_t chunks() const { return chunks_; }
  Rank horizon() const { return Rank(chunks_) * n_; }  // materialized ranks

  // t in [1, horizon()] -> (node, instance)
  std::pair<Node, std::uint32_t> pair_at(Rank t) const;

  // Inverse mapping; nullopt for pairs beyond the materialized horizon.
  std::optional<Rank> rank_of(Node v, std::uint32_t instance) const;

  // Materializes one more chunk; returns false once all ell exist.
  bool extend();

 private:
  void materialize_chunk();

  Node n_;
  std::uint32_t ell_;
  std::uint64_t seed_;
  std::uint32_t chunks_ = 0;
  std::vector<Node> chunk_nodes_;      // chunks_ * n_, node at each position
  std::vector<std::uint32_t> pools_;   // n_ * ell_, random instance order per node
  std::unordered_map<std::uint64_t, Rank> rank_of_;  // key = instance * n + node
};

// Permutation rank T in [1, n*ell] as a uniform rank (T-1)/(n*ell-1).
double to_uniform_rank(Rank t, Node n, std::uint32_t ell);

}  // namespace infmax
