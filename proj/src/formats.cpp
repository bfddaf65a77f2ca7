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

#include "infmax/formats.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace infmax {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

void write_seed_csv(std::ostream& out, const SeedSequence& seq,
                    const std::vector<double>* heldout) {
  out << "position,node,marginal,cumulative,marginal_num";
  if (heldout) out << ",influence_heldout";
  out << "\n";
  std::int64_t cum = 0;
  for (std::size_t i = 0; i < seq.entries.size(); ++i) {
    const auto& e = seq.entries[i];
    cum += e.marginal_pairs;
    out << (i + 1) << ',' << e.node << ',' << format_double(seq.marginal(i)) << ','
        << format_double(double(cum) / double(seq.ell)) << ',' << e.marginal_pairs;
    if (heldout) out << ',' << format_double((*heldout)[i]);
    out << "\n";
  }
}

Json seed_rows_json(const SeedSequence& seq, const std::vector<double>* heldout) {
  Json rows = Json::array();
  std::int64_t cum = 0;
  for (std::size_t i = 0; i < seq.entries.size(); ++i) {
    const auto& e = seq.entries[i];
    cum += e.marginal_pairs;
    Json row;
    row["position"] = i + 1;
    row["node"] = e.node;
    row["marginal"] = seq.marginal(i);
    row["cumulative"] = double(cum) / double(seq.ell);
    row["marginal_num"] = e.marginal_pairs;
    if (heldout) row["influence_heldout"] = (*heldout)[i];
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Node> read_seed_csv_nodes(std::istream& in) {
  std::vector<Node> nodes;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("seed csv: empty file");
  if (line.rfind("position,node,", 0) != 0)
    throw std::runtime_error("seed csv: unexpected header");
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    if (!std::getline(ls, field, ',') || !std::getline(ls, field, ','))
      throw std::runtime_error("seed csv: malformed line " + std::to_string(line_no));
    nodes.push_back(Node(std::stoul(field)));
  }
  return nodes;
}

Json ledger_json(const ErrorLedger& ledger) {
  Json j;
  j["eps_grid"] = std::vector<double>(ledger.eps_grid().begin(), ledger.eps_grid().end());
  Json recs = Json::array();
  for (const auto& r : ledger.records()) {
    Json e;
    e["second_size"] = r.second_size;
    e["tau"] = r.tau;
    e["delta_pairs"] = r.delta_pairs;
    e["exact"] = r.exact;
    recs.push_back(std::move(e));
  }
  j["records"] = std::move(recs);
  Json curve = Json::array();
  for (const auto& [d, c] : ledger.curve()) {
    Json pt;
    pt["discrepancy"] = d;
    pt["confidence"] = c;
    curve.push_back(std::move(pt));
  }
  j["curve"] = std::move(curve);
  return j;
}

}  // namespace infmax
