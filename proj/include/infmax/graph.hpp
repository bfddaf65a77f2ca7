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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "infmax/rng.hpp"

namespace infmax {

using Node = std::uint32_t;
using Arc = std::pair<Node, Node>;  // (tail, head)

// Compressed adjacency; immutable after construction.
struct Csr {
  std::vector<std::uint32_t> offsets;  // size n + 1
  std::vector<Node> targets;

  std::span<const Node> neighbors(Node v) const {
    return {targets.data() + offsets[v], targets.data() + offsets[v + 1]};
  }
  std::uint32_t degree(Node v) const { return offsets[v + 1] - offsets[v]; }

  // reverse=false indexes by tail, reverse=true by head.
  static Csr build(Node n, std::span<const Arc> arcs, bool reverse);
};

// Directed graph with dense node ids 0..n-1.  Arcs are kept sorted and
// deduplicated; `in` is the exact transpose of `out`.
struct BaseGraph {
  Node n = 0;
  std::vector<Arc> arcs;
  Csr out, in;

  static BaseGraph from_arcs(Node n, std::vector<Arc> arcs);
  std::uint32_t in_degree(Node v) const { return in.degree(v); }
  std::uint32_t out_degree(Node v) const { return out.degree(v); }
};

// Whitespace-separated "tail head" lines; '#' lines are comments; blank
// lines are skipped.  n = 1 + max id seen.  Undirected input yields both
// arc directions.  Throws std::runtime_error with the line number on
// malformed input and on empty input.
BaseGraph load_edge_list(std::istream& in, bool directed);
BaseGraph load_edge_list_file(const std::string& path, bool directed);

// Same loader but remaps sparse ids to a dense range.  original_ids[v] is
// the input id of node v.
struct CompactLoadResult {
  BaseGraph graph;
  std::vector<std::uint64_t> original_ids;
};
CompactLoadResult load_edge_list_compact(std::istream& in, bool directed);

// Independent-cascade model: per-arc probabilities aligned with graph.arcs.
struct ICModel {
  BaseGraph graph;
  std::vector<double> prob;
};

ICModel assign_uniform(BaseGraph g, double p);
ICModel assign_weighted_cascade(BaseGraph g);

// A set of propagation instances over one node set.  Immutable; safe to
// share across threads.
class MultiInstanceGraph {
 public:
  MultiInstanceGraph(Node n, std::vector<std::vector<Arc>> instance_arcs);

  Node n() const { return n_; }
  std::uint32_t instances() const { return static_cast<std::uint32_t>(fwd_.size()); }
  std::uint64_t pair_universe() const { return std::uint64_t(n_) * instances(); }

  std::span<const Node> out(std::uint32_t i, Node v) const { return fwd_[i].neighbors(v); }
  std::span<const Node> in(std::uint32_t i, Node v) const { return rev_[i].neighbors(v); }
  std::uint32_t in_degree(std::uint32_t i, Node v) const { return rev_[i].degree(v); }
  const std::vector<Arc>& arcs(std::uint32_t i) const { return arcs_[i]; }
  std::uint64_t arc_count(std::uint32_t i) const { return arcs_[i].size(); }
  std::uint64_t total_arcs() const;

  // m = sum over nodes of the maximum in-degree across instances.
  std::uint64_t max_indegree_sum() const { return m_stat_; }

  bool operator==(const MultiInstanceGraph& o) const {
    return n_ == o.n_ && arcs_ == o.arcs_;
  }

 private:
  Node n_;
  std::vector<std::vector<Arc>> arcs_;
  std::vector<Csr> fwd_, rev_;
  std::uint64_t m_stat_ = 0;
};

// Includes each arc in each instance independently with its model
// probability.  Instance i draws from the (seed, domain, i) stream, so
// sampling is order-independent.
MultiInstanceGraph sample_instances(const ICModel& model, std::uint32_t ell,
                                    std::uint64_t seed,
                                    std::uint64_t domain = seed_domain::train_instance);

// Binary instance-set format: "MIGR", version, n, ell, then per instance an
// arc count and sorted (tail, head) pairs, all 32-bit little-endian.
void write_instances(std::ostream& out, const MultiInstanceGraph& g);
void write_instances_file(const std::string& path, const MultiInstanceGraph& g);
MultiInstanceGraph read_instances(std::istream& in);
MultiInstanceGraph read_instances_file(const std::string& path);

}  // namespace infmax
