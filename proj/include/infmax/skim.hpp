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
#include <span>
#include <unordered_map>
#include <vector>

#include "infmax/graph.hpp"
#include "infmax/ranks.hpp"
#include "infmax/seeds.hpp"

namespace infmax {

// Chernoff lower-tail bound (exp(-nu) / (1-nu)^(1-nu))^mu with
// mu = tau * delta * (1 + eps) and nu = 1 - k2 / mu.  Bounds the failure
// probability that a competitor with residual coverage above
// (1 + eps) * delta would show a sketch of size at most k2 when ranks up to
// uniform position tau have been processed.  delta is the exact marginal
// gain of the selected seed in covered-pair units.  Returns 1 when the
// bound is vacuous (nu <= 0).
double discrepancy_confidence(std::uint32_t k2, double tau, double delta, double eps);

// Per-iteration evidence for the adaptive error ledger.
struct LedgerRecord {
  std::uint32_t second_size = 0;  // largest sketch among non-selected nodes
  double tau = 0.0;               // uniform rank of the last processed pair
  std::int64_t delta_pairs = 0;   // exact marginal gain of the seed, in pairs
  bool exact = false;             // selection provably exact (rank horizon spent)
};

// Confidence distribution over the total discrepancy (sum over iterations
// of max-gain minus selected gain, in expected-node units).  Discrepancy is
// discretized on a geometric grid; after each iteration the running
// distribution is convolved with that iteration's bound.
class ErrorLedger {
 public:
  static constexpr std::size_t kBuckets = 512;

  ErrorLedger(Node n, std::uint32_t ell);

  // Iteration bounds evaluated on the eps grid {0.01, 0.02, 0.05, 0.1}.
  void add(const LedgerRecord& rec);
  // Raw convolution step: points are (discrepancy in nodes, probability
  // mass); masses must sum to 1.
  void add_distribution(std::span<const std::pair<double, double>> points);

  // P(total discrepancy <= d); nondecreasing in d.
  double confidence_at(double d) const;
  // (discrepancy bound, confidence) per grid bucket.
  std::vector<std::pair<double, double>> curve() const;

  // Smallest representable value >= d (used to snap convolution inputs).
  double snap_up(double d) const;
  double cap() const { return cap_; }

  const std::vector<LedgerRecord>& records() const { return records_; }
  std::span<const double> eps_grid() const { return eps_grid_; }

 private:
  std::size_t bucket_index(double d) const;

  double cap_;                        // n, the largest per-iteration bound
  std::vector<double> bucket_value_;  // geometric grid
  std::vector<double> mass_;          // [0]=zero, buckets, [last]=overflow
  std::vector<LedgerRecord> records_;
  std::vector<double> eps_grid_;
  std::uint32_t ell_;
};

struct SkimOptions {
  std::uint32_t k = 64;
  std::uint64_t seed = 0;
  // 0: off, 1: selection-soundness asserts, 2: also rebuild residual
  // sketches by brute force after every iteration (small graphs only).
  int verify = 0;
};

struct SkimResult {
  SeedSequence seeds;
  ErrorLedger ledger;
  std::uint64_t rank_insertions = 0;
};

// Greedy influence maximization in sketch space.  Node-instance pairs are
// processed by increasing permutation rank with a reverse search per pair;
// the first node collecting k ranks has the maximum estimated residual
// influence and becomes the next seed.  Covering its forward reachability
// then shrinks the problem, and sketch building resumes past the abort
// rank.  The rank horizon starts at min(k, ell) chunks and is extended on
// demand; once all n*ell pairs are processed, selections fall back to the
// exact argmax of the (now complete) residual sketch sizes.
class SkimEngine {
 public:
  SkimEngine(const MultiInstanceGraph& g, SkimOptions opt);

  // Advances sketch building to the next candidate seed.  Returns nullopt
  // once every node-instance pair is covered.
  std::optional<Node> advance();

  // Covers the forward reachability of x in every instance and unwinds the
  // affected sketch entries; returns the exact marginal gain in pairs.
  std::int64_t apply_residual(Node x);

  // Full loop: s seeds (clamped to n).  After exhaustion the permutation is
  // completed in node-id order with the nodes' remaining self-coverage.
  SkimResult run(std::uint32_t s);

  // Checks the residual-sketch identity: the maintained partial sketch of
  // every node equals the entries of its brute-force residual sketch with
  // rank at most the last processed rank.  Throws std::logic_error on any
  // mismatch.
  void verify_residual_invariants() const;

  std::uint32_t sketch_size(Node v) const { return size_[v]; }
  Rank cursor() const { return cursor_; }
  std::uint64_t insertions() const { return insertions_; }
  bool covered(Node v, std::uint32_t i) const { return covered_[key(v, i)] != 0; }
  bool selected(Node v) const { return seeded_[v] != 0; }
  const RankAssignment& ranks() const { return ra_; }
  std::vector<Rank> partial_sketch(Node v) const;
  const LedgerRecord& last_record() const { return last_record_; }

 private:
  std::uint64_t key(Node v, std::uint32_t i) const { return std::uint64_t(i) * n_ + v; }
  std::uint32_t histogram_max_excluding(std::uint32_t value_of_selected) const;
  void commit_bfs_sizes();

  const MultiInstanceGraph& g_;
  SkimOptions opt_;
  Node n_;
  std::uint32_t ell_;
  RankAssignment ra_;

  std::vector<std::uint8_t> covered_;
  std::vector<std::uint8_t> seeded_;
  std::vector<std::uint32_t> size_;
  std::vector<std::uint32_t> size_hist_;  // sizes excluding the running search
  std::unordered_map<std::uint64_t, std::vector<Node>> index_;
  Rank cursor_ = 0;
  std::uint64_t insertions_ = 0;

  std::vector<std::uint32_t> stamp_;
  std::uint32_t cur_stamp_ = 0;
  std::vector<Node> queue_;
  std::vector<Node> bfs_scanned_;

  LedgerRecord last_record_;
};

// k >= 2; s may be g.n() for the full permutation.
SkimResult skim_run(const MultiInstanceGraph& g, std::uint32_t k, std::uint32_t s,
                    std::uint64_t seed, int verify = 0);

}  // namespace infmax
