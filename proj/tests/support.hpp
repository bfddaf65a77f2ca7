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
//
// Brute-force oracles and fixture generators.  Everything here recomputes
// results from first principles (plain BFS, full sorting, naive sums) and
// must stay independent of the library's sketch/greedy implementations.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "infmax/graph.hpp"
#include "infmax/ranks.hpp"
#include "infmax/rng.hpp"
#include "infmax/sketches.hpp"

namespace support {

using namespace infmax;

// Distinct random arcs (tail != head), as a base graph.
inline BaseGraph random_graph(Node n, std::size_t arcs, std::uint64_t seed) {
  Rng rng(derive_seed(seed, seed_domain::graph_gen));
  std::set<Arc> set;
  while (set.size() < arcs) {
    const Node t = Node(bounded(rng, n));
    const Node h = Node(bounded(rng, n));
    if (t != h) set.emplace(t, h);
  }
  return BaseGraph::from_arcs(n, std::vector<Arc>(set.begin(), set.end()));
}

inline MultiInstanceGraph deterministic_instances(const BaseGraph& g, std::uint32_t ell) {
  std::vector<std::vector<Arc>> inst(ell, g.arcs);
  return MultiInstanceGraph(g.n, std::move(inst));
}

// Forward reachability of every node in one instance, by plain BFS.
inline std::vector<std::vector<bool>> reach_matrix(const MultiInstanceGraph& g,
                                                   std::uint32_t instance) {
  std::vector<std::vector<bool>> reach(g.n(), std::vector<bool>(g.n(), false));
  for (Node s = 0; s < g.n(); ++s) {
    std::vector<Node> queue{s};
    reach[s][s] = true;
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (const Node w : g.out(instance, queue[head]))
        if (!reach[s][w]) {
          reach[s][w] = true;
          queue.push_back(w);
        }
  }
  return reach;
}

// Bottom-k of the materialized ranks of all pairs reachable from each node.
inline std::vector<std::vector<Rank>> brute_force_sketches(const MultiInstanceGraph& g,
                                                           const RankAssignment& ra,
                                                           std::uint32_t k) {
  std::vector<std::vector<Rank>> out(g.n());
  for (std::uint32_t i = 0; i < g.instances(); ++i) {
    const auto reach = reach_matrix(g, i);
    for (Node u = 0; u < g.n(); ++u)
      for (Node v = 0; v < g.n(); ++v)
        if (reach[u][v])
          if (const auto r = ra.rank_of(v, i)) out[u].push_back(*r);
  }
  for (auto& ranks : out) {
    std::sort(ranks.begin(), ranks.end());
    if (ranks.size() > k) ranks.resize(k);
  }
  return out;
}

// Independent evaluation of the union estimator: literal max-threshold scan
// over every distinct rank.  A rank held by a partial sketch is a certain
// member (its sentinel threshold beats every real one), otherwise the
// weight comes from the largest threshold among full sketches holding the
// rank below their threshold.
inline double naive_union_estimate(const std::vector<const CombinedSketch*>& sketches,
                                   Node n, std::uint32_t ell) {
  const double d = double(std::uint64_t(n) * ell);
  std::map<Rank, Rank> max_thresh;
  std::set<Rank> certain;
  bool any_full = false;
  for (const CombinedSketch* s : sketches) {
    if (s->full()) {
      any_full = true;
      const Rank thresh = s->ranks.back();
      for (std::size_t j = 0; j + 1 < s->ranks.size(); ++j) {
        auto [it, fresh] = max_thresh.emplace(s->ranks[j], thresh);
        if (!fresh) it->second = std::max(it->second, thresh);
      }
    } else {
      for (const Rank z : s->ranks) certain.insert(z);
    }
  }
  double sum = any_full ? 1.0 : 0.0;
  sum += double(certain.size());
  for (const auto& [z, t] : max_thresh)
    if (!certain.count(z)) sum += (d - 1.0) / double(t - 1);
  return sum;
}

// Exact influence recomputed with per-instance reach matrices.
inline double matrix_influence(const MultiInstanceGraph& g, const std::vector<Node>& seeds) {
  std::int64_t pairs = 0;
  for (std::uint32_t i = 0; i < g.instances(); ++i) {
    const auto reach = reach_matrix(g, i);
    for (Node v = 0; v < g.n(); ++v) {
      bool hit = false;
      for (const Node s : seeds) hit = hit || reach[s][v];
      pairs += hit ? 1 : 0;
    }
  }
  return double(pairs) / double(g.instances());
}

}  // namespace support
