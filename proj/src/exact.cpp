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

#include "infmax/exact.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace infmax {

InfluenceValue exact_influence(const MultiInstanceGraph& g, std::span<const Node> seeds) {
  for (const Node v : seeds)
    if (v >= g.n()) throw std::invalid_argument("exact influence: unknown node id");
  const std::uint32_t ell = g.instances();
  std::int64_t pairs = 0;
  std::vector<std::uint8_t> visited(g.n());
  std::vector<Node> queue;
  for (std::uint32_t i = 0; i < ell; ++i) {
    std::fill(visited.begin(), visited.end(), 0);
    queue.clear();
    for (const Node s : seeds) {
      if (!visited[s]) {
        visited[s] = 1;
        queue.push_back(s);
      }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Node v = queue[head];
      ++pairs;
      for (const Node w : g.out(i, v)) {
        if (!visited[w]) {
          visited[w] = 1;
          queue.push_back(w);
        }
      }
    }
  }
  return {pairs, ell};
}

CoverState::CoverState(const MultiInstanceGraph& g)
    : g_(&g),
      covered_(std::size_t(g.n()) * g.instances(), 0),
      stamp_(g.n(), 0) {}

template <bool Mark>
std::int64_t CoverState::sweep(Node v) const {
  std::int64_t gained = 0;
  const Node n = g_->n();
  for (std::uint32_t i = 0; i < g_->instances(); ++i) {
    const std::size_t base = std::size_t(i) * n;
    if (covered_[base + v]) continue;
    ++cur_;
    queue_.clear();
    queue_.push_back(v);
    stamp_[v] = cur_;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const Node u = queue_[head];
      ++gained;
      if constexpr (Mark) covered_[base + u] = 1;
      for (const Node w : g_->out(i, u)) {
        if (stamp_[w] != cur_ && !covered_[base + w]) {
          stamp_[w] = cur_;
          queue_.push_back(w);
        }
      }
    }
  }
  return gained;
}

std::int64_t CoverState::gain(Node v) const {
  if (v >= g_->n()) throw std::invalid_argument("cover state: unknown node id");
  return sweep<false>(v);
}

std::int64_t CoverState::add_seed(Node v) {
  if (v >= g_->n()) throw std::invalid_argument("cover state: unknown node id");
  const std::int64_t gained = sweep<true>(v);
  covered_pairs_ += gained;
  return gained;
}

namespace {

SeedSequence greedy_naive(const MultiInstanceGraph& g, std::uint32_t s) {
  SeedSequence out;
  out.ell = g.instances();
  CoverState cover(g);
  std::vector<std::uint8_t> taken(g.n(), 0);
  for (std::uint32_t round = 0; round < s; ++round) {
    std::int64_t best = -1;
    Node arg = 0;
    for (Node v = 0; v < g.n(); ++v) {
      if (taken[v]) continue;
      const std::int64_t gv = cover.gain(v);
      if (gv > best) {
        best = gv;
        arg = v;
      }
    }
    if (best < 0) break;
    taken[arg] = 1;
    out.entries.push_back({arg, cover.add_seed(arg)});
  }
  return out;
}

struct QueueEntry {
  std::int64_t gain;
  Node node;
  std::uint32_t round;  // round the gain was evaluated in
};
struct QueueLess {
  bool operator()(const QueueEntry& a, const QueueEntry& b) const {
    if (a.gain != b.gain) return a.gain < b.gain;
    return a.node > b.node;  // smaller id wins ties
  }
};

SeedSequence greedy_lazy(const MultiInstanceGraph& g, std::uint32_t s) {
  SeedSequence out;
  out.ell = g.instances();
  CoverState cover(g);
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueLess> pq;
  for (Node v = 0; v < g.n(); ++v) pq.push({cover.gain(v), v, 0});
  for (std::uint32_t round = 1; round <= s && !pq.empty(); ++round) {
    for (;;) {
      QueueEntry top = pq.top();
      pq.pop();
      if (top.round == round) {
        out.entries.push_back({top.node, cover.add_seed(top.node)});
        break;
      }
      top.gain = cover.gain(top.node);
      top.round = round;
      pq.push(top);
    }
  }
  return out;
}

}  // namespace

SeedSequence exact_greedy(const MultiInstanceGraph& g, std::uint32_t s, bool lazy) {
  s = std::min<std::uint32_t>(s, g.n());
  return lazy ? greedy_lazy(g, s) : greedy_naive(g, s);
}

std::pair<std::vector<Node>, InfluenceValue> brute_force_optimum(
    const MultiInstanceGraph& g, std::uint32_t s) {
  const Node n = g.n();
  if (s > n) throw std::invalid_argument("optimum: seed count exceeds node count");
  // C(n, s) guard with overflow-safe accumulation.
  double combos = 1.0;
  for (std::uint32_t i = 0; i < s; ++i) combos *= double(n - i) / double(i + 1);
  if (combos > 1e6) throw std::invalid_argument("optimum: C(n, s) exceeds 1e6 guard");

  std::vector<Node> idx(s);
  for (std::uint32_t i = 0; i < s; ++i) idx[i] = i;
  std::vector<Node> best_set;
  InfluenceValue best{-1, g.instances()};
  if (s == 0) return {{}, {0, g.instances()}};
  for (;;) {
    const InfluenceValue val = exact_influence(g, idx);
    if (val.pairs > best.pairs) {
      best = val;
      best_set = idx;
    }
    // next combination in lexicographic order
    std::int32_t i = std::int32_t(s) - 1;
    while (i >= 0 && idx[i] == n - s + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (std::uint32_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
  }
  return {best_set, best};
}

SeedSequence degree_baseline(const MultiInstanceGraph& g, std::uint32_t s) {
  s = std::min<std::uint32_t>(s, g.n());
  // Out-degree in the union of all instance edge sets.
  std::vector<std::uint32_t> deg(g.n(), 0);
  std::vector<Node> scratch;
  for (Node v = 0; v < g.n(); ++v) {
    scratch.clear();
    for (std::uint32_t i = 0; i < g.instances(); ++i)
      for (const Node w : g.out(i, v)) scratch.push_back(w);
    std::sort(scratch.begin(), scratch.end());
    deg[v] = std::uint32_t(std::unique(scratch.begin(), scratch.end()) - scratch.begin());
  }
  std::vector<Node> order(g.n());
  for (Node v = 0; v < g.n(); ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](Node a, Node b) {
    if (deg[a] != deg[b]) return deg[a] > deg[b];
    return a < b;
  });

  SeedSequence out;
  out.ell = g.instances();
  CoverState cover(g);
  for (std::uint32_t i = 0; i < s; ++i)
    out.entries.push_back({order[i], cover.add_seed(order[i])});
  return out;
}

}  // namespace infmax
