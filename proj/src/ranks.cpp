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

#include "infmax/ranks.hpp"

#include <algorithm>
#include <stdexcept>

namespace infmax {

RankAssignment::RankAssignment(Node n, std::uint32_t ell, std::uint32_t k,
                               std::uint64_t seed)
    : n_(n), ell_(ell), seed_(seed) {
  if (n == 0 || ell == 0 || k == 0) throw std::invalid_argument("rank assignment: zero dimension");

  // One random instance order per node, drawn up front so that chunk
  // extension never reshuffles earlier choices.
  pools_.resize(std::size_t(n_) * ell_);
  Rng pool_rng(derive_seed(seed_, seed_domain::rank_pools));
  for (Node v = 0; v < n_; ++v) {
    auto* row = pools_.data() + std::size_t(v) * ell_;
    for (std::uint32_t i = 0; i < ell_; ++i) row[i] = i;
    for (std::uint32_t i = ell_; i > 1; --i)
      std::swap(row[i - 1], row[bounded(pool_rng, i)]);
  }

  const std::uint32_t initial = std::min<std::uint64_t>(k, ell_);
  chunk_nodes_.reserve(std::size_t(initial) * n_);
  rank_of_.reserve(std::size_t(initial) * n_);
  while (chunks_ < initial) materialize_chunk();
}

void RankAssignment::materialize_chunk() {
  const std::uint32_t j = chunks_;
  Rng rng(derive_seed(seed_, seed_domain::rank_chunk, j));
  const std::size_t base = chunk_nodes_.size();
  chunk_nodes_.resize(base + n_);
  auto* perm = chunk_nodes_.data() + base;
  for (Node v = 0; v < n_; ++v) perm[v] = v;
  for (Node i = n_; i > 1; --i) std::swap(perm[i - 1], perm[bounded(rng, i)]);
  for (Node pos = 0; pos < n_; ++pos) {
    const Node v = perm[pos];
    const std::uint32_t inst = pools_[std::size_t(v) * ell_ + j];
    rank_of_.emplace(std::uint64_t(inst) * n_ + v, Rank(base) + pos + 1);
  }
  ++chunks_;
}

std::pair<Node, std::uint32_t> RankAssignment::pair_at(Rank t) const {
  if (t < 1 || t > horizon()) throw std::invalid_argument("rank outside materialized horizon");
  const std::uint64_t idx = t - 1;
  const std::uint32_t j = static_cast<std::uint32_t>(idx / n_);
  const Node v = chunk_nodes_[idx];
  return {v, pools_[std::size_t(v) * ell_ + j]};
}

std::optional<Rank> RankAssignment::rank_of(Node v, std::uint32_t instance) const {
  if (v >= n_ || instance >= ell_) throw std::invalid_argument("pair out of range");
  auto it = rank_of_.find(std::uint64_t(instance) * n_ + v);
  if (it == rank_of_.end()) return std::nullopt;
  return it->second;
}

bool RankAssignment::extend() {
  if (chunks_ >= ell_) return false;
  materialize_chunk();
  return true;
}

double to_uniform_rank(Rank t, Node n, std::uint32_t ell) {
  const std::uint64_t d = std::uint64_t(n) * ell;
  if (t < 1 || t > d) throw std::invalid_argument("permutation rank out of range");
  if (d == 1) return 1.0;
  return double(t - 1) / double(d - 1);
}

}  // namespace infmax
