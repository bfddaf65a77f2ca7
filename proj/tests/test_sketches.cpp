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

#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "infmax/exact.hpp"
#include "infmax/sketches.hpp"
#include "support.hpp"

using namespace infmax;

TEST_CASE("sink node sketch lists its own pairs") {
  // node 2 has no outgoing arcs in either instance
  const BaseGraph g = BaseGraph::from_arcs(3, {{0, 2}, {1, 2}});
  const auto mig = support::deterministic_instances(g, 2);
  const RankAssignment ra(3, 2, 4, 8);
  const SketchSet s = build_sketches(mig, ra, 4);
  std::vector<Rank> own{*ra.rank_of(2, 0), *ra.rank_of(2, 1)};
  std::sort(own.begin(), own.end());
  CHECK(s.of(2).ranks == own);
}

TEST_CASE("complete graph: every sketch is the global bottom-k") {
  const Node n = 6;
  std::vector<Arc> arcs;
  for (Node a = 0; a < n; ++a)
    for (Node b = 0; b < n; ++b)
      if (a != b) arcs.emplace_back(a, b);
  const auto mig = support::deterministic_instances(BaseGraph::from_arcs(n, arcs), 3);
  const std::uint32_t k = 5;
  const RankAssignment ra(n, 3, k, 2);
  const SketchSet s = build_sketches(mig, ra, k);
  const std::vector<Rank> global{1, 2, 3, 4, 5};
  for (Node v = 0; v < n; ++v) CHECK(s.of(v).ranks == global);
}

TEST_CASE("8-node DAG matches brute force") {
  const BaseGraph g = BaseGraph::from_arcs(
      8, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}, {2, 6}, {6, 7}});
  std::vector<std::vector<Arc>> inst{g.arcs, {{0, 1}, {1, 3}, {3, 4}, {2, 6}}};
  const MultiInstanceGraph mig(8, std::move(inst));
  const RankAssignment ra(8, 2, 4, 12345);
  const SketchSet s = build_sketches(mig, ra, 4);
  const auto brute = support::brute_force_sketches(mig, ra, 4);
  for (Node v = 0; v < 8; ++v) CHECK(s.of(v).ranks == brute[v]);
}

TEST_CASE("construction exactness on random graphs") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const BaseGraph g = support::random_graph(30, 90, seed);
    const auto mig = sample_instances(assign_uniform(g, 0.5), 3, seed + 100);
    for (const std::uint32_t k : {2u, 4u, 16u}) {
      const RankAssignment ra(mig.n(), mig.instances(), k, seed);
      const SketchSet s = build_sketches(mig, ra, k);
      const auto brute = support::brute_force_sketches(mig, ra, k);
      for (Node v = 0; v < mig.n(); ++v) REQUIRE(s.of(v).ranks == brute[v]);
    }
  }
}

TEST_CASE("single-instance sketches coincide with classical reachability sketches") {
  const BaseGraph g = support::random_graph(25, 70, 4);
  const auto mig = support::deterministic_instances(g, 1);
  const RankAssignment ra(25, 1, 4, 6);
  const SketchSet s = build_sketches(mig, ra, 4);
  const auto reach = support::reach_matrix(mig, 0);
  for (Node u = 0; u < 25; ++u) {
    std::vector<Rank> ranks;
    for (Node v = 0; v < 25; ++v)
      if (reach[u][v]) ranks.push_back(*ra.rank_of(v, 0));
    std::sort(ranks.begin(), ranks.end());
    if (ranks.size() > 4) ranks.resize(4);
    CHECK(s.of(u).ranks == ranks);
  }
}

TEST_CASE("dimension mismatches are rejected") {
  const BaseGraph g = support::random_graph(10, 30, 1);
  const auto mig = support::deterministic_instances(g, 2);
  const RankAssignment wrong_n(9, 2, 4, 1);
  CHECK_THROWS_AS(build_sketches(mig, wrong_n, 4), std::invalid_argument);
  const RankAssignment short_horizon(10, 2, 1, 1);  // one chunk < min(k, ell)
  CHECK_THROWS_AS(build_sketches(mig, short_horizon, 4), std::invalid_argument);
}

TEST_CASE("cardinality estimator cases") {
  CombinedSketch partial{{5, 9}, 4};
  CHECK(estimate_cardinality(partial, 10, 10) == 2.0);

  // D = 100, k = 4, T = 10 -> 1 + 3 * 99 / 9 = 34
  CombinedSketch full{{2, 5, 7, 10}, 4};
  CHECK(estimate_cardinality(full, 25, 4) == doctest::Approx(34.0).epsilon(1e-15));

  // whole universe: T = k gives exactly D
  CombinedSketch universe{{1, 2, 3}, 3};
  CHECK(estimate_cardinality(universe, 4, 3) == doctest::Approx(12.0).epsilon(1e-15));
}

TEST_CASE("influence limit estimator") {
  CHECK(estimate_influence_limit(21, 5, 100) == doctest::Approx(20.0).epsilon(1e-15));
  // algebraic fixed point: T = (k-1) n + 1 -> estimate 1
  CHECK(estimate_influence_limit(4 * 100 + 1, 5, 100) == doctest::Approx(1.0));
  CHECK_THROWS_AS(estimate_influence_limit(1, 5, 100), std::invalid_argument);
  // limit of the finite-ell estimator divided by ell
  const double n = 100, k = 5, t = 21, ell = 1e6;
  const double finite = (1.0 + (k - 1) * (n * ell - 1) / (t - 1)) / ell;
  CHECK(estimate_influence_limit(21, 5, 100) == doctest::Approx(finite).epsilon(1e-5));
}

TEST_CASE("query: single full sketch reduces to the cardinality estimate") {
  const BaseGraph g = support::random_graph(40, 200, 9);
  const auto mig = sample_instances(assign_uniform(g, 0.6), 4, 5);
  const RankAssignment ra(40, 4, 4, 77);
  const SketchSet s = build_sketches(mig, ra, 4);
  for (Node v = 0; v < 40; ++v) {
    if (!s.of(v).full()) continue;
    const Node seeds[] = {v};
    CHECK(s.query(seeds) ==
          doctest::Approx(estimate_cardinality(s.of(v), 40, 4) / 4.0).epsilon(1e-12));
  }
}

TEST_CASE("query: identical sketches collapse to one") {
  // two nodes in a 2-cycle reach exactly the same set in every instance
  const BaseGraph g = BaseGraph::from_arcs(6, {{0, 1}, {1, 0}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
  const auto mig = support::deterministic_instances(g, 2);
  const RankAssignment ra(6, 2, 3, 4);
  const SketchSet s = build_sketches(mig, ra, 3);
  REQUIRE(s.of(0).ranks == s.of(1).ranks);
  const Node one[] = {0};
  const Node both[] = {0, 1};
  CHECK(s.query(both) == doctest::Approx(s.query(one)).epsilon(1e-12));
}

TEST_CASE("query: path graph against the independent estimator") {
  const BaseGraph g = BaseGraph::from_arcs(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  const auto mig = support::deterministic_instances(g, 1);
  const RankAssignment ra(5, 1, 2, 271);
  const SketchSet s = build_sketches(mig, ra, 2);
  const std::vector<const CombinedSketch*> seeds{&s.of(0), &s.of(2)};
  const Node ids[] = {0, 2};
  CHECK(s.query(ids) ==
        doctest::Approx(support::naive_union_estimate(seeds, 5, 1) / 1.0).epsilon(1e-12));
}

TEST_CASE("query matches the independent estimator on random inputs") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const BaseGraph g = support::random_graph(30, 80, seed + 50);
    const auto mig = sample_instances(assign_uniform(g, 0.4), 3, seed);
    const RankAssignment ra(30, 3, 3, seed);
    const SketchSet s = build_sketches(mig, ra, 3);
    Rng rng(seed);
    std::vector<Node> ids;
    std::vector<const CombinedSketch*> ptrs;
    for (int pick = 0; pick < 5; ++pick) {
      const Node v = Node(bounded(rng, 30));
      if (std::find(ids.begin(), ids.end(), v) != ids.end()) continue;
      ids.push_back(v);
      ptrs.push_back(&s.of(v));
      CHECK(s.query(ids) ==
            doctest::Approx(support::naive_union_estimate(ptrs, 30, 3) / 3.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("query: domain errors") {
  const BaseGraph g = support::random_graph(10, 20, 2);
  const auto mig = support::deterministic_instances(g, 1);
  const RankAssignment ra(10, 1, 2, 1);
  const SketchSet s = build_sketches(mig, ra, 2);
  CHECK_THROWS_AS(s.query({}), std::invalid_argument);
  const Node bad[] = {10};
  CHECK_THROWS_AS(s.query(bad), std::invalid_argument);
}

TEST_CASE("query grows when the added sketch brings disjoint ranks") {
  // Distinct ranks from the new sketch can only add nonnegative weight.
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const BaseGraph g = support::random_graph(25, 75, seed + 7);
    const auto mig = sample_instances(assign_uniform(g, 0.5), 4, seed);
    const RankAssignment ra(25, 4, 4, seed + 1);
    const SketchSet s = build_sketches(mig, ra, 4);
    std::vector<Node> ids;
    std::set<Rank> held;
    double prev = 0.0;
    for (Node v = 0; v < 25; ++v) {
      bool disjoint = true;
      for (const Rank r : s.of(v).ranks) disjoint = disjoint && !held.count(r);
      if (!disjoint) continue;
      ids.push_back(v);
      held.insert(s.of(v).ranks.begin(), s.of(v).ranks.end());
      const double est = s.query(ids);
      CHECK(est >= prev - 1e-12);
      prev = est;
    }
  }
}

TEST_CASE("query is not pointwise monotone under shared larger thresholds") {
  // The max-threshold rule lowers a shared rank's weight when a seed with a
  // sparser reachability set (larger threshold) joins.  Statistically this
  // is what keeps the estimator unbiased; pointwise it can shrink.
  const std::uint64_t d = 1000;  // n = 1000, ell = 1
  CombinedSketch wide{{5, 9}, 2};    // threshold 9: dense set
  CombinedSketch narrow{{5, 800}, 2};  // threshold 800: sparse set sharing rank 5
  const std::vector<const CombinedSketch*> one{&wide};
  const std::vector<const CombinedSketch*> both{&wide, &narrow};
  const double before = union_cardinality_estimate(one, Node(d), 1);
  const double after = union_cardinality_estimate(both, Node(d), 1);
  CHECK(before == doctest::Approx(1.0 + 999.0 / 8.0));
  CHECK(after == doctest::Approx(1.0 + 999.0 / 799.0));
  CHECK(after < before);
}

TEST_CASE("estimator unbiasedness over rank seeds (small version)") {
  const BaseGraph g = support::random_graph(40, 150, 33);
  const auto mig = sample_instances(assign_uniform(g, 0.5), 8, 3);
  const std::vector<Node> seeds{1, 17};
  const double exact = exact_influence(mig, seeds).value();
  const std::size_t trials = 600;
  double sum = 0.0, sumsq = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const RankAssignment ra(mig.n(), mig.instances(), 8, 9000 + t);
    const SketchSet s = build_sketches(mig, ra, 8);
    const double est = s.query(seeds);
    sum += est;
    sumsq += est * est;
  }
  const double mean = sum / trials;
  const double var = sumsq / trials - mean * mean;
  const double se = std::sqrt(var / trials);
  CHECK(std::abs(mean - exact) <= 3.0 * se + 1.0 / mig.instances());
}

TEST_CASE("query time scales like s log s") {
  const BaseGraph g = support::random_graph(2000, 8000, 61);
  const auto mig = sample_instances(assign_weighted_cascade(g), 16, 4);
  const RankAssignment ra(2000, 16, 16, 8);
  const SketchSet s = build_sketches(mig, ra, 16);
  Rng rng(12);

  auto time_queries = [&](std::uint32_t size, int reps) {
    std::vector<std::vector<Node>> sets(reps);
    for (auto& set : sets) {
      std::set<Node> pick;
      while (pick.size() < size) pick.insert(Node(bounded(rng, 2000)));
      set.assign(pick.begin(), pick.end());
    }
    double sink = 0.0;
    const auto start = std::chrono::steady_clock::now();
    for (const auto& set : sets) sink += s.query(set);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(sink > 0.0);
    return secs / reps;
  };
  const double t1 = time_queries(1, 3000) + 1e-9;
  const double t50 = time_queries(50, 300);
  // generous smoke bound: within 10x of the s log s scaling
  CHECK(t50 <= 10.0 * t1 * 50.0 * std::log(50.0));
}

TEST_CASE("CSKE round trip") {
  const BaseGraph g = support::random_graph(20, 60, 21);
  const auto mig = sample_instances(assign_uniform(g, 0.5), 3, 2);
  const RankAssignment ra(20, 3, 4, 55);
  const SketchSet s = build_sketches(mig, ra, 4);
  std::stringstream buf;
  write_sketches(buf, s);
  const SketchSet back = read_sketches(buf);
  CHECK(back.n() == s.n());
  CHECK(back.instances() == s.instances());
  CHECK(back.k() == s.k());
  CHECK(back.rank_seed() == s.rank_seed());
  for (Node v = 0; v < 20; ++v) CHECK(back.of(v).ranks == s.of(v).ranks);
}
