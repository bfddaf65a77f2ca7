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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "infmax/graph.hpp"
#include "infmax/ranks.hpp"

namespace infmax {

// Bottom-k set of permutation ranks over a node's combined reachability
// set.  Ranks are strictly increasing; fewer than k ranks means the whole
// reachability set is listed exactly and the threshold is beyond the rank
// horizon.
struct CombinedSketch {
  std::vector<Rank> ranks;
  std::uint32_t k = 0;

  bool full() const { return ranks.size() >= k; }
  std::optional<Rank> threshold() const {
    if (!full() || ranks.empty()) return std::nullopt;
    return ranks.back();
  }
};

// Combined reachability sketches for all nodes, tied to one rank
// assignment.  Immutable; concurrent queries are safe.
class SketchSet {
 public:
  SketchSet(Node n, std::uint32_t ell, std::uint32_t k, std::uint64_t rank_seed,
            std::vector<CombinedSketch> sketches);

  Node n() const { return n_; }
  std::uint32_t instances() const { return ell_; }
  std::uint32_t k() const { return k_; }
  std::uint64_t rank_seed() const { return rank_seed_; }
  std::uint64_t universe() const { return std::uint64_t(n_) * ell_; }
  const CombinedSketch& of(Node v) const;

  // Influence estimate for a seed set: union cardinality estimate divided
  // by the instance count.  Throws on an empty seed set or unknown ids.
  double query(std::span<const Node> seeds) const;

 private:
  Node n_;
  std::uint32_t ell_, k_;
  std::uint64_t rank_seed_;
  std::vector<CombinedSketch> sketches_;
};

// Pruned reverse searches per instance, merged across instances with an
// O(n k) working set.  The result is exactly the bottom-k of every node's
// combined reachability set under `ra`.
SketchSet build_sketches(const MultiInstanceGraph& g, const RankAssignment& ra,
                         std::uint32_t k);

// Bottom-k cardinality estimate from permutation ranks: |X| when the
// sketch is partial (exact), else 1 + (k-1)(D-1)/(T-1) with T the largest
// retained rank and D = n*ell.
double estimate_cardinality(const CombinedSketch& s, Node n, std::uint32_t ell);

// Large-ell limit of the permutation estimator scaled to influence:
// n(k-1)/(T-1).  Requires T >= 2.
double estimate_influence_limit(Rank t, std::uint32_t k, Node n);

// Union cardinality estimate over a set of sketches from one SketchSet.
// Each distinct rank below the threshold of some full sketch is weighted by
// the inverse uniform rank of the largest such threshold; members of
// partial sketches count exactly (weight 1).  One unit is added when any
// full sketch participates, matching the single-sketch permutation
// estimator.
double union_cardinality_estimate(std::span<const CombinedSketch* const> sketches,
                                  Node n, std::uint32_t ell);

// Sketch file format: "CSKE", version, n, ell, k, rank seed, then per node
// a byte count and sorted 64-bit little-endian ranks.
void write_sketches(std::ostream& out, const SketchSet& s);
void write_sketches_file(const std::string& path, const SketchSet& s);
SketchSet read_sketches(std::istream& in);
SketchSet read_sketches_file(const std::string& path);

}  // namespace infmax
