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

#include "infmax/graph.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace infmax {

Csr Csr::build(Node n, std::span<const Arc> arcs, bool reverse) {
  Csr csr;
  csr.offsets.assign(std::size_t(n) + 1, 0);
  for (const auto& [t, h] : arcs) csr.offsets[(reverse ? h : t) + 1]++;
  for (Node v = 0; v < n; ++v) csr.offsets[v + 1] += csr.offsets[v];
  csr.targets.resize(arcs.size());
  std::vector<std::uint32_t> cursor(csr.offsets.begin(), csr.offsets.end() - 1);
  for (const auto& [t, h] : arcs) {
    const Node key = reverse ? h : t;
    csr.targets[cursor[key]++] = reverse ? t : h;
  }
  return csr;
}

BaseGraph BaseGraph::from_arcs(Node n, std::vector<Arc> arcs) {
  for (const auto& [t, h] : arcs)
    if (t >= n || h >= n) throw std::invalid_argument("arc endpoint out of range");
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  BaseGraph g;
  g.n = n;
  g.out = Csr::build(n, arcs, false);
  g.in = Csr::build(n, arcs, true);
  g.arcs = std::move(arcs);
  return g;
}

namespace {

std::vector<std::pair<std::uint64_t, std::uint64_t>> parse_edge_lines(std::istream& in,
                                                                      bool directed) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    std::istringstream ls(line);
    std::uint64_t t, h;
    if (!(ls >> t >> h)) {
      throw std::runtime_error("edge list: malformed line " + std::to_string(line_no));
    }
    std::string extra;
    if (ls >> extra) {
      throw std::runtime_error("edge list: malformed line " + std::to_string(line_no) +
                               " (expected exactly two ids)");
    }
    raw.emplace_back(t, h);
    if (!directed) raw.emplace_back(h, t);
  }
  if (raw.empty()) throw std::runtime_error("edge list: empty input");
  return raw;
}

}  // namespace

BaseGraph load_edge_list(std::istream& in, bool directed) {
  auto raw = parse_edge_lines(in, directed);
  std::uint64_t max_id = 0;
  for (const auto& [t, h] : raw) max_id = std::max({max_id, t, h});
  if (max_id >= std::numeric_limits<Node>::max())
    throw std::runtime_error("edge list: node id too large for dense storage");
  std::vector<Arc> arcs;
  arcs.reserve(raw.size());
  for (const auto& [t, h] : raw) arcs.emplace_back(Node(t), Node(h));
  return BaseGraph::from_arcs(Node(max_id + 1), std::move(arcs));
}

BaseGraph load_edge_list_file(const std::string& path, bool directed) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return load_edge_list(f, directed);
}

CompactLoadResult load_edge_list_compact(std::istream& in, bool directed) {
  auto raw = parse_edge_lines(in, directed);
  std::map<std::uint64_t, Node> remap;
  for (const auto& [t, h] : raw) {
    remap.emplace(t, 0);
    remap.emplace(h, 0);
  }
  CompactLoadResult res;
  res.original_ids.reserve(remap.size());
  Node next = 0;
  for (auto& [orig, dense] : remap) {
    dense = next++;
    res.original_ids.push_back(orig);
  }
  std::vector<Arc> arcs;
  arcs.reserve(raw.size());
  for (const auto& [t, h] : raw) arcs.emplace_back(remap[t], remap[h]);
  res.graph = BaseGraph::from_arcs(next, std::move(arcs));
  return res;
}

ICModel assign_uniform(BaseGraph g, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability outside [0,1]");
  ICModel m;
  m.prob.assign(g.arcs.size(), p);
  m.graph = std::move(g);
  return m;
}

ICModel assign_weighted_cascade(BaseGraph g) {
  if (g.n == 0 || g.arcs.empty()) throw std::invalid_argument("weighted cascade on empty graph");
  ICModel m;
  m.prob.resize(g.arcs.size());
  for (std::size_t e = 0; e < g.arcs.size(); ++e)
    m.prob[e] = 1.0 / double(g.in_degree(g.arcs[e].second));
  m.graph = std::move(g);
  return m;
}

MultiInstanceGraph::MultiInstanceGraph(Node n, std::vector<std::vector<Arc>> instance_arcs)
    : n_(n), arcs_(std::move(instance_arcs)) {
  if (arcs_.empty()) throw std::invalid_argument("instance count must be >= 1");
  fwd_.reserve(arcs_.size());
  rev_.reserve(arcs_.size());
  for (auto& a : arcs_) {
    for (const auto& [t, h] : a)
      if (t >= n_ || h >= n_) throw std::invalid_argument("instance arc out of range");
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    fwd_.push_back(Csr::build(n_, a, false));
    rev_.push_back(Csr::build(n_, a, true));
  }
  for (Node v = 0; v < n_; ++v) {
    std::uint32_t mx = 0;
    for (const auto& r : rev_) mx = std::max(mx, r.degree(v));
    m_stat_ += mx;
  }
}

std::uint64_t MultiInstanceGraph::total_arcs() const {
  std::uint64_t s = 0;
  for (const auto& a : arcs_) s += a.size();
  return s;
}

MultiInstanceGraph sample_instances(const ICModel& model, std::uint32_t ell,
                                    std::uint64_t seed, std::uint64_t domain) {
  if (ell == 0) throw std::invalid_argument("instance count must be >= 1");
  const auto& arcs = model.graph.arcs;
  std::vector<std::vector<Arc>> inst(ell);
  for (std::uint32_t i = 0; i < ell; ++i) {
    Rng rng(derive_seed(seed, domain, i));
    auto& out = inst[i];
    for (std::size_t e = 0; e < arcs.size(); ++e)
      if (unit_double(rng) < model.prob[e]) out.push_back(arcs[e]);
  }
  return MultiInstanceGraph(model.graph.n, std::move(inst));
}

namespace {

constexpr char kMigrMagic[4] = {'M', 'I', 'G', 'R'};
constexpr std::uint32_t kMigrVersion = 1;

void put_u32(std::ostream& out, std::uint32_t x) {
  unsigned char b[4] = {static_cast<unsigned char>(x), static_cast<unsigned char>(x >> 8),
                        static_cast<unsigned char>(x >> 16),
                        static_cast<unsigned char>(x >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4))
    throw std::runtime_error("instance file: truncated");
  return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 | std::uint32_t(b[2]) << 16 |
         std::uint32_t(b[3]) << 24;
}

}  // namespace

void write_instances(std::ostream& out, const MultiInstanceGraph& g) {
  out.write(kMigrMagic, 4);
  put_u32(out, kMigrVersion);
  put_u32(out, g.n());
  put_u32(out, g.instances());
  for (std::uint32_t i = 0; i < g.instances(); ++i) {
    const auto& arcs = g.arcs(i);
    if (arcs.size() > std::numeric_limits<std::uint32_t>::max())
      throw std::runtime_error("instance too large for format");
    put_u32(out, static_cast<std::uint32_t>(arcs.size()));
    for (const auto& [t, h] : arcs) {
      put_u32(out, t);
      put_u32(out, h);
    }
  }
  if (!out) throw std::runtime_error("instance file: write failed");
}

void write_instances_file(const std::string& path, const MultiInstanceGraph& g) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  write_instances(f, g);
}

MultiInstanceGraph read_instances(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMigrMagic, 4) != 0)
    throw std::runtime_error("instance file: bad magic");
  if (get_u32(in) != kMigrVersion) throw std::runtime_error("instance file: bad version");
  const std::uint32_t n = get_u32(in);
  const std::uint32_t ell = get_u32(in);
  if (ell == 0) throw std::runtime_error("instance file: zero instances");
  std::vector<std::vector<Arc>> inst(ell);
  for (std::uint32_t i = 0; i < ell; ++i) {
    const std::uint32_t cnt = get_u32(in);
    inst[i].reserve(cnt);
    for (std::uint32_t e = 0; e < cnt; ++e) {
      const Node t = get_u32(in);
      const Node h = get_u32(in);
      if (t >= n || h >= n) throw std::runtime_error("instance file: arc out of range");
      inst[i].emplace_back(t, h);
    }
  }
  return MultiInstanceGraph(n, std::move(inst));
}

MultiInstanceGraph read_instances_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  return read_instances(f);
}

}  // namespace infmax
