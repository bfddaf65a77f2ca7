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

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "infmax/exact.hpp"
#include "infmax/formats.hpp"
#include "infmax/graph.hpp"
#include "infmax/ranks.hpp"
#include "infmax/rng.hpp"
#include "infmax/seeds.hpp"
#include "infmax/sketches.hpp"
#include "infmax/skim.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using namespace infmax;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string input;
  std::string scheme = "wc";
  bool undirected = false;
  std::uint32_t ell = 64;
  std::uint32_t k = 64;
  std::string s = "all";
  std::uint64_t seed = 0;
  std::uint32_t eval_ell = 512;
  bool eval = false;
  std::string format = "csv";
  std::string output;
  bool naive_greedy = false;
  bool compact_ids = false;
  int verify = 0;
  std::string sketches_path;
  std::string seeds_file;
  std::vector<std::uint64_t> nodes;
};

class Timer {
 public:
  explicit Timer(std::string label) : label_(std::move(label)), start_(clock::now()) {}
  ~Timer() {
    const auto us =
        std::chrono::duration_cast<std::chrono::microseconds>(clock::now() - start_).count();
    std::cerr << "time_" << label_ << "_us=" << us << "\n";
  }

 private:
  using clock = std::chrono::steady_clock;
  std::string label_;
  clock::time_point start_;
};

ICModel apply_scheme(BaseGraph g, const std::string& scheme) {
  if (scheme == "wc") return assign_weighted_cascade(std::move(g));
  if (scheme.rfind("un:", 0) == 0) {
    double p = 0.0;
    try {
      p = std::stod(scheme.substr(3));
    } catch (const std::exception&) {
      throw UsageError("bad probability in scheme '" + scheme + "'");
    }
    if (!(p >= 0.0 && p <= 1.0)) throw UsageError("scheme probability outside [0,1]");
    return assign_uniform(std::move(g), p);
  }
  throw UsageError("unknown scheme '" + scheme + "' (expected wc or un:<p>)");
}

bool is_instance_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  char magic[4] = {};
  f.read(magic, 4);
  return f.gcount() == 4 && magic[0] == 'M' && magic[1] == 'I' && magic[2] == 'G' &&
         magic[3] == 'R';
}

// Instances either straight from a MIGR file or sampled from graph+scheme.
MultiInstanceGraph load_instances(const Config& cfg,
                                  std::uint64_t domain = seed_domain::train_instance) {
  if (cfg.input.empty()) throw UsageError("--input is required");
  if (is_instance_file(cfg.input)) return read_instances_file(cfg.input);
  BaseGraph g = load_edge_list_file(cfg.input, !cfg.undirected);
  const ICModel model = apply_scheme(std::move(g), cfg.scheme);
  return sample_instances(model, cfg.ell, cfg.seed, domain);
}

std::uint32_t parse_s(const Config& cfg, Node n) {
  if (cfg.s == "all") return n;
  try {
    const long long v = std::stoll(cfg.s);
    if (v < 0) throw UsageError("--s must be nonnegative or 'all'");
    return std::uint32_t(std::min<long long>(v, n));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("--s must be an integer or 'all'");
  }
}

void write_text_output(const Config& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.output, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + cfg.output);
  f << text;
}

Json config_json(const Config& cfg, const std::string& command) {
  Json j;
  j["command"] = command;
  j["version"] = kVersion;
  Json c;
  c["input"] = cfg.input;
  c["scheme"] = cfg.scheme;
  c["ell"] = cfg.ell;
  c["k"] = cfg.k;
  c["s"] = cfg.s;
  c["seed"] = cfg.seed;
  c["eval_ell"] = cfg.eval_ell;
  j["config"] = std::move(c);
  return j;
}

std::vector<double> heldout_curve(const Config& cfg, const SeedSequence& seq) {
  if (is_instance_file(cfg.input))
    throw UsageError("--eval needs a graph + scheme input to sample held-out instances");
  BaseGraph g = load_edge_list_file(cfg.input, !cfg.undirected);
  const ICModel model = apply_scheme(std::move(g), cfg.scheme);
  const MultiInstanceGraph eval_g =
      sample_instances(model, cfg.eval_ell, cfg.seed, seed_domain::eval_instance);
  CoverState cover(eval_g);
  std::vector<double> out;
  out.reserve(seq.entries.size());
  for (const auto& e : seq.entries) {
    cover.add_seed(e.node);
    out.push_back(double(cover.covered_pairs()) / double(cfg.eval_ell));
  }
  return out;
}

void emit_seed_sequence(const Config& cfg, const std::string& command,
                        const SeedSequence& seq, const ErrorLedger* ledger) {
  std::optional<std::vector<double>> heldout;
  if (cfg.eval) heldout = heldout_curve(cfg, seq);
  const std::vector<double>* ho = heldout ? &*heldout : nullptr;
  if (cfg.format == "json") {
    Json j = config_json(cfg, command);
    j["seeds"] = seed_rows_json(seq, ho);
    if (ledger) j["ledger"] = ledger_json(*ledger);
    write_text_output(cfg, j.dump(2) + "\n");
    return;
  }
  std::ostringstream csv;
  write_seed_csv(csv, seq, ho);
  write_text_output(cfg, csv.str());
  if (ledger) {
    const std::string path = (cfg.output.empty() ? std::string("skim") : cfg.output) +
                             ".ledger.json";
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << ledger_json(*ledger).dump(2) << "\n";
  }
}

std::vector<Node> parse_seed_nodes(const Config& cfg, Node n) {
  std::vector<Node> seeds;
  if (!cfg.seeds_file.empty()) {
    std::ifstream f(cfg.seeds_file);
    if (!f) throw std::runtime_error("cannot open " + cfg.seeds_file);
    seeds = read_seed_csv_nodes(f);
  }
  for (const std::uint64_t v : cfg.nodes) seeds.push_back(Node(v));
  if (seeds.empty()) throw UsageError("no seed nodes given");
  std::string unknown;
  for (const Node v : seeds)
    if (v >= n) unknown += (unknown.empty() ? "" : " ") + std::to_string(v);
  if (!unknown.empty()) throw std::runtime_error("unknown node ids: " + unknown);
  return seeds;
}

int cmd_sample(const Config& cfg) {
  Timer t("sample");
  if (cfg.output.empty()) throw UsageError("--output is required for sample");
  if (cfg.input.empty()) throw UsageError("--input is required");
  BaseGraph g;
  if (cfg.compact_ids) {
    std::ifstream f(cfg.input);
    if (!f) throw std::runtime_error("cannot open " + cfg.input);
    auto res = load_edge_list_compact(f, !cfg.undirected);
    g = std::move(res.graph);
    std::ofstream map(cfg.output + ".ids.csv", std::ios::binary);
    if (!map) throw std::runtime_error("cannot open " + cfg.output + ".ids.csv");
    map << "node,original_id\n";
    for (Node v = 0; v < g.n; ++v) map << v << ',' << res.original_ids[v] << "\n";
  } else {
    g = load_edge_list_file(cfg.input, !cfg.undirected);
  }
  const ICModel model = apply_scheme(std::move(g), cfg.scheme);
  const MultiInstanceGraph inst = sample_instances(model, cfg.ell, cfg.seed);
  write_instances_file(cfg.output, inst);
  return 0;
}

int cmd_sketch(const Config& cfg) {
  Timer t("sketch");
  if (cfg.output.empty()) throw UsageError("--output is required for sketch");
  const MultiInstanceGraph g = load_instances(cfg);
  const RankAssignment ra(g.n(), g.instances(), cfg.k,
                          derive_seed(cfg.seed, seed_domain::rank_assignment));
  const SketchSet s = build_sketches(g, ra, cfg.k);
  write_sketches_file(cfg.output, s);
  return 0;
}

int cmd_skim(const Config& cfg) {
  Timer t("skim");
  const MultiInstanceGraph g = load_instances(cfg);
  const SkimResult res = skim_run(g, cfg.k, parse_s(cfg, g.n()),
                                  derive_seed(cfg.seed, seed_domain::rank_assignment),
                                  cfg.verify);
  std::cerr << "rank_insertions=" << res.rank_insertions << "\n";
  emit_seed_sequence(cfg, "skim", res.seeds, &res.ledger);
  return 0;
}

int cmd_greedy(const Config& cfg) {
  Timer t("greedy");
  const MultiInstanceGraph g = load_instances(cfg);
  const SeedSequence seq = exact_greedy(g, parse_s(cfg, g.n()), !cfg.naive_greedy);
  emit_seed_sequence(cfg, "greedy", seq, nullptr);
  return 0;
}

int cmd_degree(const Config& cfg) {
  Timer t("degree");
  const MultiInstanceGraph g = load_instances(cfg);
  const SeedSequence seq = degree_baseline(g, parse_s(cfg, g.n()));
  emit_seed_sequence(cfg, "degree", seq, nullptr);
  return 0;
}

int cmd_query(const Config& cfg) {
  const std::optional<SketchSet> from_file =
      cfg.sketches_path.empty() ? std::nullopt
                                : std::optional<SketchSet>(read_sketches_file(cfg.sketches_path));
  std::optional<SketchSet> built;
  if (!from_file) {
    const MultiInstanceGraph g = load_instances(cfg);
    const RankAssignment ra(g.n(), g.instances(), cfg.k,
                            derive_seed(cfg.seed, seed_domain::rank_assignment));
    built = build_sketches(g, ra, cfg.k);
  }
  const SketchSet& sketches = from_file ? *from_file : *built;
  const std::vector<Node> seeds = parse_seed_nodes(cfg, sketches.n());

  const auto start = std::chrono::steady_clock::now();
  const double estimate = sketches.query(seeds);
  const auto us = std::chrono::duration_cast<std::chrono::microseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  std::cerr << "time_query_us=" << us << "\n";

  if (cfg.format == "json") {
    Json j = config_json(cfg, "query");
    j["seeds"] = seeds;
    j["estimate"] = estimate;
    write_text_output(cfg, j.dump(2) + "\n");
  } else {
    write_text_output(cfg, "s,estimate\n" + std::to_string(seeds.size()) + "," +
                               format_double(estimate) + "\n");
  }
  return 0;
}

int cmd_eval(const Config& cfg) {
  Timer t("eval");
  MultiInstanceGraph g = [&] {
    if (is_instance_file(cfg.input)) return read_instances_file(cfg.input);
    BaseGraph base = load_edge_list_file(cfg.input, !cfg.undirected);
    const ICModel model = apply_scheme(std::move(base), cfg.scheme);
    return sample_instances(model, cfg.eval_ell, cfg.seed, seed_domain::eval_instance);
  }();
  const std::vector<Node> seeds = parse_seed_nodes(cfg, g.n());
  const InfluenceValue v = exact_influence(g, seeds);
  if (cfg.format == "json") {
    Json j = config_json(cfg, "eval");
    j["seeds"] = seeds;
    j["pairs"] = v.pairs;
    j["influence"] = v.value();
    write_text_output(cfg, j.dump(2) + "\n");
  } else {
    write_text_output(cfg, "s,pairs,influence\n" + std::to_string(seeds.size()) + "," +
                               std::to_string(v.pairs) + "," + format_double(v.value()) +
                               "\n");
  }
  return 0;
}

int cmd_optimum(const Config& cfg) {
  Timer t("optimum");
  const MultiInstanceGraph g = load_instances(cfg);
  if (cfg.s == "all") throw UsageError("optimum needs an explicit --s");
  const auto [set, v] = brute_force_optimum(g, parse_s(cfg, g.n()));
  std::string joined;
  for (const Node x : set) joined += (joined.empty() ? "" : ";") + std::to_string(x);
  if (cfg.format == "json") {
    Json j = config_json(cfg, "optimum");
    j["nodes"] = set;
    j["pairs"] = v.pairs;
    j["influence"] = v.value();
    write_text_output(cfg, j.dump(2) + "\n");
  } else {
    write_text_output(cfg, "nodes,pairs,influence\n" + joined + "," +
                               std::to_string(v.pairs) + "," + format_double(v.value()) +
                               "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sketch-based influence maximization and influence oracles"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Config cfg;
  auto add_common = [&](CLI::App* sub, bool with_k = true) {
    sub->add_option("--input", cfg.input, "edge list or MIGR instance file");
    sub->add_option("--scheme", cfg.scheme, "IC scheme: wc or un:<p> (default wc)");
    sub->add_flag("--undirected", cfg.undirected, "treat edge list as undirected");
    sub->add_option("--ell", cfg.ell, "number of sampled instances (default 64)");
    if (with_k) sub->add_option("--k", cfg.k, "sketch size parameter (default 64)");
    sub->add_option("--seed", cfg.seed, "master RNG seed (default 0)");
    sub->add_option("--format", cfg.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", cfg.output, "output path (default stdout)");
    return sub;
  };

  auto* sample = add_common(app.add_subcommand("sample", "sample instances to a MIGR file"),
                            false);
  sample->add_flag("--compact-ids", cfg.compact_ids,
                   "remap sparse input ids densely, writing <output>.ids.csv");

  add_common(app.add_subcommand("sketch", "build combined reachability sketches"));

  auto* skim = add_common(app.add_subcommand("skim", "sketch-based greedy seed selection"));
  skim->add_option("--s", cfg.s, "seed count or 'all' (default all)");
  skim->add_flag("--eval", cfg.eval, "evaluate prefixes on held-out instances");
  skim->add_option("--eval-ell", cfg.eval_ell, "held-out instance count (default 512)");
  skim->add_option("--verify", cfg.verify, "in-run assertion level (0-2)");

  auto* greedy = add_common(app.add_subcommand("greedy", "exact greedy seed selection"), false);
  greedy->add_option("--s", cfg.s, "seed count or 'all' (default all)");
  greedy->add_flag("--naive-greedy", cfg.naive_greedy, "disable lazy re-evaluation");
  greedy->add_flag("--eval", cfg.eval, "evaluate prefixes on held-out instances");
  greedy->add_option("--eval-ell", cfg.eval_ell, "held-out instance count (default 512)");

  auto* degree = add_common(app.add_subcommand("degree", "degree-ordered baseline"), false);
  degree->add_option("--s", cfg.s, "seed count or 'all' (default all)");
  degree->add_flag("--eval", cfg.eval, "evaluate prefixes on held-out instances");
  degree->add_option("--eval-ell", cfg.eval_ell, "held-out instance count (default 512)");

  auto* query = add_common(app.add_subcommand("query", "influence oracle query"));
  query->add_option("--sketches", cfg.sketches_path, "prebuilt CSKE sketch file");
  query->add_option("nodes", cfg.nodes, "seed node ids");

  auto* eval = add_common(app.add_subcommand("eval", "exact influence of a seed set"), false);
  eval->add_option("--eval-ell", cfg.eval_ell, "held-out instance count (default 512)");
  eval->add_option("--seeds-file", cfg.seeds_file, "seed CSV produced by skim/greedy/degree");
  eval->add_option("nodes", cfg.nodes, "seed node ids");

  auto* optimum = add_common(app.add_subcommand("optimum", "brute-force best seed set"), false);
  optimum->add_option("--s", cfg.s, "seed set size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sample->parsed()) return cmd_sample(cfg);
    if (app.get_subcommand("sketch")->parsed()) return cmd_sketch(cfg);
    if (skim->parsed()) return cmd_skim(cfg);
    if (greedy->parsed()) return cmd_greedy(cfg);
    if (degree->parsed()) return cmd_degree(cfg);
    if (query->parsed()) return cmd_query(cfg);
    if (eval->parsed()) return cmd_eval(cfg);
    if (optimum->parsed()) return cmd_optimum(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
