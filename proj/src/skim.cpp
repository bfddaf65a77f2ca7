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

#include "infmax/skim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace infmax {

double discrepancy_confidence(std::uint32_t k2, double tau, double delta, double eps) {
  if (!(tau > 0.0 && tau <= 1.0)) throw std::invalid_argument("tau must be in (0,1]");
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const double mu = tau * delta * (1.0 + eps);
  const double nu = 1.0 - double(k2) / mu;
  if (nu <= 0.0) return 1.0;
  const double rest = 1.0 - nu;  // k2 / mu
  const double log_bound = mu * (-nu - (rest > 0.0 ? rest * std::log(rest) : 0.0));
  return std::min(1.0, std::exp(log_bound));
}

ErrorLedger::ErrorLedger(Node n, std::uint32_t ell) : cap_(double(n)), ell_(ell) {
  if (n == 0) throw std::invalid_argument("ledger: empty node set");
  const double lo = 1e-4 * cap_;
  bucket_value_.resize(kBuckets);
  for (std::size_t i = 0; i < kBuckets; ++i)
    bucket_value_[i] = lo * std::pow(cap_ / lo, double(i) / double(kBuckets - 1));
  bucket_value_.back() = cap_;
  // [0] holds mass at exactly zero, [1..kBuckets] the grid, back() overflow.
  mass_.assign(kBuckets + 2, 0.0);
  mass_[0] = 1.0;
  eps_grid_ = {0.01, 0.02, 0.05, 0.1};
}

std::size_t ErrorLedger::bucket_index(double d) const {
  if (d <= 0.0) return 0;
  const auto it = std::lower_bound(bucket_value_.begin(), bucket_value_.end(), d);
  if (it == bucket_value_.end()) return mass_.size() - 1;  // overflow
  return std::size_t(it - bucket_value_.begin()) + 1;
}

double ErrorLedger::snap_up(double d) const {
  const std::size_t idx = bucket_index(d);
  if (idx == 0) return 0.0;
  if (idx == mass_.size() - 1) return cap_ * 2.0;  // sentinel beyond grid
  return bucket_value_[idx - 1];
}

void ErrorLedger::add_distribution(std::span<const std::pair<double, double>> points) {
  std::vector<double> next(mass_.size(), 0.0);
  const std::size_t overflow = mass_.size() - 1;
  for (std::size_t i = 0; i < mass_.size(); ++i) {
    if (mass_[i] == 0.0) continue;
    const double base = (i == 0) ? 0.0 : (i == overflow ? -1.0 : bucket_value_[i - 1]);
    for (const auto& [d, m] : points) {
      if (m <= 0.0) continue;
      const std::size_t target = (i == overflow) ? overflow : bucket_index(base + d);
      next[target] += mass_[i] * m;
    }
  }
  mass_ = std::move(next);
}

void ErrorLedger::add(const LedgerRecord& rec) {
  records_.push_back(rec);
  if (rec.exact || rec.delta_pairs <= 0) return;  // zero-discrepancy iteration
  const double delta_nodes = double(rec.delta_pairs) / double(ell_);
  // P(discrepancy > eps_i * delta) <= p_i; pessimistically place the
  // remaining mass at the next grid level, and the tail at the cap.
  std::vector<double> fail(eps_grid_.size());
  double prev = 1.0;
  for (std::size_t i = 0; i < eps_grid_.size(); ++i) {
    double p = discrepancy_confidence(rec.second_size, rec.tau,
                                      double(rec.delta_pairs), eps_grid_[i]);
    p = std::min(p, prev);  // monotone in the threshold
    fail[i] = p;
    prev = p;
  }
  std::vector<std::pair<double, double>> points;
  points.reserve(eps_grid_.size() + 1);
  points.emplace_back(eps_grid_[0] * delta_nodes, 1.0 - fail[0]);
  for (std::size_t i = 1; i < eps_grid_.size(); ++i)
    points.emplace_back(eps_grid_[i] * delta_nodes, fail[i - 1] - fail[i]);
  points.emplace_back(cap_, fail.back());
  add_distribution(points);
}

double ErrorLedger::confidence_at(double d) const {
  double c = mass_[0];
  for (std::size_t i = 0; i < kBuckets; ++i)
    if (bucket_value_[i] <= d) c += mass_[i + 1];
  return c;
}

std::vector<std::pair<double, double>> ErrorLedger::curve() const {
  std::vector<std::pair<double, double>> out;
  out.reserve(kBuckets);
  double cum = mass_[0];
  for (std::size_t i = 0; i < kBuckets; ++i) {
    cum += mass_[i + 1];
    out.emplace_back(bucket_value_[i], cum);
  }
  return out;
}

SkimEngine::SkimEngine(const MultiInstanceGraph& g, SkimOptions opt)
    : g_(g),
      opt_(opt),
      n_(g.n()),
      ell_(g.instances()),
      ra_(g.n(), g.instances(), opt.k, opt.seed),
      covered_(std::size_t(g.n()) * g.instances(), 0),
      seeded_(g.n(), 0),
      size_(g.n(), 0),
      size_hist_(std::size_t(opt.k) + 1, 0),
      stamp_(g.n(), 0) {
  if (opt.k == 0) throw std::invalid_argument("skim: k must be >= 1");
  size_hist_[0] = n_;
}

std::uint32_t SkimEngine::histogram_max_excluding(std::uint32_t value_of_selected) const {
  for (std::uint32_t s = opt_.k; s > 0; --s) {
    std::uint32_t c = size_hist_[s];
    if (s == value_of_selected && c > 0) --c;
    if (c > 0) return s;
  }
  return 0;
}

void SkimEngine::commit_bfs_sizes() {
  for (const Node v : bfs_scanned_) {
    --size_hist_[size_[v] - 1];
    ++size_hist_[size_[v]];
  }
  bfs_scanned_.clear();
}

std::optional<Node> SkimEngine::advance() {
  const std::uint64_t universe = ra_.universe();
  while (cursor_ < universe) {
    if (cursor_ >= ra_.horizon()) {
      ra_.extend();
      continue;
    }
    const Rank t = cursor_ + 1;
    const auto [u, i] = ra_.pair_at(t);
    ++cursor_;
    if (covered_[key(u, i)]) continue;

    // Reverse search from (u, i): every scanned node gains rank t in its
    // partial sketch.  The first node to reach k entries has the largest
    // estimated residual influence (its threshold is t, everyone else's is
    // strictly beyond) and aborts the search as the next seed.
    ++cur_stamp_;
    queue_.clear();
    bfs_scanned_.clear();
    queue_.push_back(u);
    stamp_[u] = cur_stamp_;
    auto& entry = index_[key(u, i)];
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const Node v = queue_[head];
      ++size_[v];
      ++insertions_;
      entry.push_back(v);
      bfs_scanned_.push_back(v);
      if (size_[v] == opt_.k) {
        if (opt_.verify >= 1) {
          for (Node w = 0; w < n_; ++w) {
            if (w != v && size_[w] >= opt_.k)
              throw std::logic_error("selection soundness violated: competing full sketch");
          }
        }
        // The abort rank is not part of any other sketch for the bound:
        // size_hist_ has not absorbed this search yet.
        last_record_ = {histogram_max_excluding(opt_.k - 1),
                        to_uniform_rank(t, n_, ell_), 0, false};
        commit_bfs_sizes();
        return v;
      }
      for (const Node w : g_.in(i, v)) {
        if (stamp_[w] != cur_stamp_ && !covered_[key(w, i)]) {
          stamp_[w] = cur_stamp_;
          queue_.push_back(w);
        }
      }
    }
    commit_bfs_sizes();
  }

  // Every pair has been processed, so the partial sketches hold the exact
  // residual coverage counts and the argmax selection is exact greedy.
  Node best = 0;
  std::uint32_t best_size = 0;
  for (Node v = 0; v < n_; ++v) {
    if (size_[v] > best_size) {
      best_size = size_[v];
      best = v;
    }
  }
  if (best_size == 0) return std::nullopt;  // graph exhausted
  last_record_ = {histogram_max_excluding(best_size), 1.0, 0, true};
  return best;
}

std::int64_t SkimEngine::apply_residual(Node x) {
  if (x >= n_) throw std::invalid_argument("skim: unknown node id");
  if (seeded_[x]) throw std::invalid_argument("skim: node already selected");
  seeded_[x] = 1;
  std::int64_t covered_now = 0;
  for (std::uint32_t i = 0; i < ell_; ++i) {
    if (covered_[key(x, i)]) continue;
    ++cur_stamp_;
    queue_.clear();
    queue_.push_back(x);
    stamp_[x] = cur_stamp_;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const Node v = queue_[head];
      covered_[key(v, i)] = 1;
      ++covered_now;
      // Unwind rank t = rank(v, i) from every sketch holding it.
      auto it = index_.find(key(v, i));
      if (it != index_.end()) {
        for (const Node w : it->second) {
          --size_hist_[size_[w]];
          ++size_hist_[size_[w] - 1];
          --size_[w];
        }
        index_.erase(it);
      }
      for (const Node w : g_.out(i, v)) {
        if (stamp_[w] != cur_stamp_ && !covered_[key(w, i)]) {
          stamp_[w] = cur_stamp_;
          queue_.push_back(w);
        }
      }
    }
  }
  return covered_now;
}

std::vector<Rank> SkimEngine::partial_sketch(Node v) const {
  std::vector<Rank> out;
  for (const auto& [pair_key, nodes] : index_) {
    if (std::find(nodes.begin(), nodes.end(), v) == nodes.end()) continue;
    const Node u = Node(pair_key % n_);
    const auto inst = std::uint32_t(pair_key / n_);
    out.push_back(*ra_.rank_of(u, inst));
  }
  std::sort(out.begin(), out.end());
  return out;
}

void SkimEngine::verify_residual_invariants() const {
  // Maintained partial sketches, reconstructed from the inverted index.
  std::vector<std::vector<Rank>> maintained(n_);
  for (const auto& [pair_key, nodes] : index_) {
    const Node u = Node(pair_key % n_);
    const auto inst = std::uint32_t(pair_key / n_);
    const Rank r = *ra_.rank_of(u, inst);
    for (const Node w : nodes) maintained[w].push_back(r);
  }
  std::vector<std::uint32_t> stamp(n_, 0);
  std::uint32_t cur = 0;
  std::vector<Node> queue;
  std::vector<Rank> reach_ranks;
  for (Node u = 0; u < n_; ++u) {
    std::sort(maintained[u].begin(), maintained[u].end());
    if (maintained[u].size() != size_[u])
      throw std::logic_error("residual check: size counter out of sync");
    // Brute-force residual reachability of u across instances.
    reach_ranks.clear();
    for (std::uint32_t i = 0; i < ell_; ++i) {
      if (covered_[key(u, i)]) continue;
      ++cur;
      queue.clear();
      queue.push_back(u);
      stamp[u] = cur;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const Node v = queue[head];
        if (const auto r = ra_.rank_of(v, i)) reach_ranks.push_back(*r);
        for (const Node w : g_.out(i, v)) {
          if (stamp[w] != cur && !covered_[key(w, i)]) {
            stamp[w] = cur;
            queue.push_back(w);
          }
        }
      }
    }
    std::sort(reach_ranks.begin(), reach_ranks.end());
    if (reach_ranks.size() > opt_.k) reach_ranks.resize(opt_.k);
    while (!reach_ranks.empty() && reach_ranks.back() > cursor_) reach_ranks.pop_back();
    if (reach_ranks != maintained[u])
      throw std::logic_error("residual check: partial sketch diverges from rebuild");
  }
}

SkimResult SkimEngine::run(std::uint32_t s) {
  s = std::min<std::uint32_t>(s, n_);
  SeedSequence seeds;
  seeds.ell = ell_;
  ErrorLedger ledger(n_, ell_);
  bool exhausted = false;
  while (seeds.entries.size() < s) {
    const auto x = advance();
    if (!x) {
      exhausted = true;
      break;
    }
    const std::int64_t gain = apply_residual(*x);
    if (opt_.verify >= 2) verify_residual_invariants();
    LedgerRecord rec = last_record_;
    rec.delta_pairs = gain;
    ledger.add(rec);
    seeds.entries.push_back({*x, gain});
  }
  if (exhausted) {
    // Complete the permutation: remaining nodes carry whatever of their own
    // pairs is still uncovered (zero once every pair is covered).
    for (Node v = 0; v < n_ && seeds.entries.size() < s; ++v) {
      if (seeded_[v]) continue;
      const std::int64_t gain = apply_residual(v);
      ledger.add({0, 1.0, gain, true});
      seeds.entries.push_back({v, gain});
    }
  }
  return {std::move(seeds), std::move(ledger), insertions_};
}

SkimResult skim_run(const MultiInstanceGraph& g, std::uint32_t k, std::uint32_t s,
                    std::uint64_t seed, int verify) {
  if (k < 2) throw std::invalid_argument("skim: k must be >= 2");
  SkimEngine engine(g, SkimOptions{k, seed, verify});
  return engine.run(s);
}

}  // namespace infmax
