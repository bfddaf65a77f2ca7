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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "infmax/seeds.hpp"
#include "infmax/skim.hpp"

namespace infmax {

using Json = nlohmann::ordered_json;

// Seed CSV: "position,node,marginal,cumulative,marginal_num" with an
// optional trailing "influence_heldout" column (cumulative influence of the
// prefix on held-out instances).  marginal_num is the exact integer pair
// count with implied denominator ell.
void write_seed_csv(std::ostream& out, const SeedSequence& seq,
                    const std::vector<double>* heldout = nullptr);

// Same rows as a JSON array.
Json seed_rows_json(const SeedSequence& seq, const std::vector<double>* heldout = nullptr);

// Nodes listed in a seed CSV, in row order.
std::vector<Node> read_seed_csv_nodes(std::istream& in);

Json ledger_json(const ErrorLedger& ledger);

// Fixed-precision float formatting shared by all text outputs.
std::string format_double(double x);

}  // namespace infmax
