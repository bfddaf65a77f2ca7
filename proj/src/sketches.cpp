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

#include "infmax/sketches.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

namespace infmax {

SketchSet::SketchSet(Node n, std::uint32_t ell, std::uint32_t k, std::uint64_t rank_seed,
                     std::vector<CombinedSketch> sketches)
    : n_(n), ell_(ell), k_(k), rank_seed_(rank_seed), sketches_(std::move(sketches)) {
  if (sketches_.size() != n_) throw std::invalid_argument("sketch set: wrong node count");
}

const CombinedSketch& SketchSet::of(Node v) const {
  if (v >= n_) throw std::invalid_argument("sketch set: unknown node");
  return sketches_[v];
}

SketchSet build_sketches(const MultiInstanceGraph& g, const RankAssignment& ra,
                         std::uint32_t k) {
  if (k == 0) throw std::invalid_argument("sketch parameter k must be >= 1");
  if (ra.n() != g.n() || ra.instances() != g.instances())
    throw std::invalid_argument("rank assignment does not match graph dimensions");
  if (ra.chunks() < std::min<std::uint64_t>(k, g.instances()))
    throw std::invalid_argument("rank assignment materializes too few chunks");

  const Node n = g.n();
  const std::uint32_t ell = g.instances();

  // Bucket materialized pairs by instance; ranks stay increasing per bucket.
  std::vector<std::vector<std::pair<Rank, Node>>> by_instance(ell);
  for (Rank t = 1; t <= ra.horizon(); ++t) {
    const auto [v, i] = ra.pair_at(t);
    by_instance[i].emplace_back(t, v);
  }

  std::vector<std::vector<Rank>> global(n), local(n);
  std::vector<std::uint32_t> stamp(n, 0);
  std::uint32_t cur = 0;
  std::vector<Node> queue;

  for (std::uint32_t i = 0; i < ell; ++i) {
    for (const auto& [r, u] : by_instance[i]) {
      // Pruned reverse search: a node whose local sketch already holds k
      // smaller ranks can neither take r nor pass it on to its ancestors.
      ++cur;
      queue.clear();
      queue.push_back(u);
      stamp[u] = cur;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const Node v = queue[head];
        if (local[v].size() >= k) continue;
        local[v].push_back(r);
        for (const Node w : g.in(i, v)) {
          if (stamp[w] != cur) {
            stamp[w] = cur;
            queue.push_back(w);
          }
        }
      }
    }
    // Merge this instance's sketches into the global ones, keeping k.
    std::vector<Rank> merged;
    for (Node v = 0; v < n; ++v) {
      if (local[v].empty()) continue;
      auto& gl = global[v];
      merged.clear();
      std::merge(gl.begin(), gl.end(), local[v].begin(), local[v].end(),
                 std::back_inserter(merged));
      if (merged.size() > k) merged.resize(k);
      gl.assign(merged.begin(), merged.end());
      local[v].clear();
    }
  }

  std::vector<CombinedSketch> out(n);
  for (Node v = 0; v < n; ++v) out[v] = CombinedSketch{std::move(global[v]), k};
  return SketchSet(n, ell, k, ra.seed(), std::move(out));
}

double estimate_cardinality(const CombinedSketch& s, Node n, std::uint32_t ell) {
  if (!s.full()) return double(s.ranks.size());
  const double d = double(std::uint64_t(n) * ell);
  const Rank t = s.ranks.back();
  if (s.k <= 1 || t <= 1) return 1.0;
  return 1.0 + double(s.k - 1) * (d - 1.0) / double(t - 1);
}

double estimate_influence_limit(Rank t, std::uint32_t k, Node n) {
  if (t < 2) throw std::invalid_argument("degenerate sketch: threshold rank below 2");
  if (k < 2) throw std::invalid_argument("influence limit needs k >= 2");
  return double(n) * double(k - 1) / double(t - 1);
}

double union_cardinality_estimate(std::span<const CombinedSketch* const> sketches,
                                  Node n, std::uint32_t ell) {
  if (sketches.empty()) throw std::invalid_argument("union estimate: empty seed set");
  const std::uint64_t d = std::uint64_t(n) * ell;

  std::unordered_set<Rank> seen;
  double sum = 0.0;
  bool any_full = false;

  // Partial sketches enumerate their reachability sets exactly: weight 1,
  // no threshold contributed.
  for (const CombinedSketch* s : sketches) {
    if (s->full()) {
      any_full = true;
      continue;
    }
    for (const Rank z : s->ranks)
      if (seen.insert(z).second) sum += 1.0;
  }
  if (!any_full) return sum;

  // Full sketches in decreasing threshold order; the first sketch holding a
  // rank below its threshold supplies that rank's weight.
  std::vector<const CombinedSketch*> full;
  for (const CombinedSketch* s : sketches)
    if (s->full()) full.push_back(s);
  std::sort(full.begin(), full.end(), [](const CombinedSketch* a, const CombinedSketch* b) {
    return a->ranks.back() > b->ranks.back();
  });
  for (const CombinedSketch* s : full) {
    const Rank thresh = s->ranks.back();
    const double weight = double(d - 1) / double(thresh - 1);
    for (std::size_t j = 0; j + 1 < s->ranks.size(); ++j)
      if (seen.insert(s->ranks[j]).second) sum += weight;
  }
  // The set-aside threshold element of the permutation-rank estimator.
  return sum + 1.0;
}

double SketchSet::query(std::span<const Node> seeds) const {
  if (seeds.empty()) throw std::invalid_argument("influence query: empty seed set");
  std::vector<const CombinedSketch*> ptrs;
  ptrs.reserve(seeds.size());
  std::unordered_set<Node> dedup;
  for (const Node v : seeds) {
    if (v >= n_) throw std::invalid_argument("influence query: unknown node");
    if (dedup.insert(v).second) ptrs.push_back(&sketches_[v]);
  }
  return union_cardinality_estimate(ptrs, n_, ell_) / double(ell_);
}

namespace {

constexpr char kCskeMagic[4] = {'C', 'S', 'K', 'E'};
constexpr std::uint32_t kCskeVersion = 1;

void put_u32(std::ostream& out, std::uint32_t x) {
  unsigned char b[4] = {static_cast<unsigned char>(x), static_cast<unsigned char>(x >> 8),
                        static_cast<unsigned char>(x >> 16),
                        static_cast<unsigned char>(x >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ostream& out, std::uint64_t x) {
  put_u32(out, static_cast<std::uint32_t>(x));
  put_u32(out, static_cast<std::uint32_t>(x >> 32));
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4))
    throw std::runtime_error("sketch file: truncated");
  return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 | std::uint32_t(b[2]) << 16 |
         std::uint32_t(b[3]) << 24;
}

std::uint64_t get_u64(std::istream& in) {
  const std::uint64_t lo = get_u32(in);
  const std::uint64_t hi = get_u32(in);
  return lo | hi << 32;
}

}  // namespace

void write_sketches(std::ostream& out, const SketchSet& s) {
  out.write(kCskeMagic, 4);
  put_u32(out, kCskeVersion);
  put_u32(out, s.n());
  put_u32(out, s.instances());
  put_u32(out, s.k());
  put_u64(out, s.rank_seed());
  for (Node v = 0; v < s.n(); ++v) {
    const auto& ranks = s.of(v).ranks;
    put_u32(out, static_cast<std::uint32_t>(ranks.size() * 8));
    for (const Rank r : ranks) put_u64(out, r);
  }
  if (!out) throw std::runtime_error("sketch file: write failed");
}

void write_sketches_file(const std::string& path, const SketchSet& s) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  write_sketches(f, s);
}

SketchSet read_sketches(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kCskeMagic, 4) != 0)
    throw std::runtime_error("sketch file: bad magic");
  if (get_u32(in) != kCskeVersion) throw std::runtime_error("sketch file: bad version");
  const Node n = get_u32(in);
  const std::uint32_t ell = get_u32(in);
  const std::uint32_t k = get_u32(in);
  const std::uint64_t seed = get_u64(in);
  std::vector<CombinedSketch> sk(n);
  for (Node v = 0; v < n; ++v) {
    const std::uint32_t bytes = get_u32(in);
    if (bytes % 8 != 0 || bytes / 8 > k) throw std::runtime_error("sketch file: bad length");
    sk[v].k = k;
    sk[v].ranks.resize(bytes / 8);
    for (auto& r : sk[v].ranks) r = get_u64(in);
    if (!std::is_sorted(sk[v].ranks.begin(), sk[v].ranks.end()))
      throw std::runtime_error("sketch file: ranks not sorted");
  }
  return SketchSet(n, ell, k, seed, std::move(sk));
}

SketchSet read_sketches_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  return read_sketches(f);
}

}  // namespace infmax
