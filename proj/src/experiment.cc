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

#include "fairsub/experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "fairsub/adaptive.h"
#include "fairsub/benchmarks.h"
#include "fairsub/errors.h"
#include "fairsub/nonadaptive.h"
#include "fairsub/random.h"
#include "fairsub/stats.h"
#include "json.hpp"

namespace fairsub {
namespace {

using nlohmann::json;

constexpr uint64_t kGroupStream = 0x67727073ULL;
constexpr uint64_t kObjectiveStream = 0x6f626aULL;
constexpr uint64_t kSolverStream = 0x736f6cULL;
constexpr uint64_t kEvalStream = 0x6576616cULL;

Grouping ParseGrouping(const std::string& s) {
  if (s == "random") return Grouping::kRandom;
  if (s == "gaussian") return Grouping::kGaussian;
  throw InputError("unknown grouping '" + s + "' (expected random|gaussian)");
}

SolverKind ParseSolver(const std::string& s) {
  std::string u = s;
  std::transform(u.begin(), u.end(), u.begin(), ::toupper);
  if (u == "SG") return SolverKind::kSg;
  if (u == "ASG") return SolverKind::kAsg;
  if (u == "HI") return SolverKind::kHi;
  if (u == "AHI") return SolverKind::kAhi;
  throw InputError("unknown solver '" + s + "' (expected SG|ASG|HI|AHI)");
}

template <typename T>
std::vector<T> AsList(const json& v, const char* key) {
  if (v.is_array()) return v.get<std::vector<T>>();
  if (v.is_primitive() && !v.is_null()) return {v.get<T>()};
  throw InputError(std::string("'") + key + "' must be a value or a list");
}

void CheckKeys(const json& obj, std::initializer_list<const char*> allowed,
               const std::string& where) {
  for (const auto& [k, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw InputError("unknown key '" + k + "' in " + where);
  }
}

std::string Num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string CsvSafe(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
  }
  return s;
}

struct Cell {
  int grouping_index;
  int m_index;
  int p_index;
  int alpha;
  SolverKind solver;
};

struct Shared {
  const ExperimentConfig* cfg;
  std::vector<std::shared_ptr<const Graph>> graphs;  // per p_edge
  // [grouping][m]
  std::vector<std::vector<GroupedGroundSet>> grounds;
  uint64_t objective_seed, solver_seed, eval_seed;
};

std::string JoinBranches(const std::vector<PolicyRun>& runs) {
  std::set<std::string> names;
  for (const PolicyRun& r : runs) names.insert(r.branch);
  std::string out;
  for (const std::string& n : names) out += (out.empty() ? "" : "|") + n;
  return out;
}

ExperimentRow RunCell(const Shared& sh, const Cell& cell) {
  const ExperimentConfig& cfg = *sh.cfg;
  ExperimentRow row;
  row.solver = cell.solver;
  row.alpha = cell.alpha;
  row.p_edge = cfg.p_edge[cell.p_index];
  row.m = cfg.m[cell.m_index];
  row.grouping = cfg.groupings[cell.grouping_index];
  row.seed = cfg.seed;
  row.p_used = cfg.p;
  const GroupedGroundSet& ground = sh.grounds[cell.grouping_index][cell.m_index];
  row.k_min = ground.min_group_size();
  row.group_sizes = ground.group_sizes();
  const std::shared_ptr<const Graph>& g = sh.graphs[cell.p_index];

  auto start = std::chrono::steady_clock::now();
  try {
    if (cell.solver == SolverKind::kSg || cell.solver == SolverKind::kHi) {
      SetObjective f = MakeIcObjective(g, cfg.objective_samples, sh.objective_seed);
      std::vector<uint64_t> worlds(cfg.rounds);
      for (int i = 0; i < cfg.rounds; ++i) {
        worlds[i] = HiddenWorldSeed(DeriveSeed(sh.eval_seed, {static_cast<uint64_t>(i)}));
      }
      // Run r reuses episode seed r, so its coin stream matches the adaptive
      // episode r; every run is scored on the shared evaluation worlds.
      std::vector<double> values;
      std::set<std::string> branches;
      row.feasible = true;
      double seeds = 0.0;
      for (int r = 0; r < cfg.runs; ++r) {
        uint64_t run_seed = DeriveSeed(sh.eval_seed, {static_cast<uint64_t>(r)});
        Solution s;
        if (cell.solver == SolverKind::kSg) {
          SolverConfig sc;
          sc.p = cfg.p;
          sc.seed = run_seed;
          sc.padding = cfg.padding;
          s = SolveGroupEquality(f, ground, cell.alpha, sc);
        } else {
          s = RunBenchmarkHi(f, ground, cell.alpha, cfg.p, run_seed);
        }
        std::vector<double> w = IcWorldValues(s.set, *g, worlds);
        values.push_back(Summarize(w).mean);
        row.feasible = row.feasible && IsGroupEqual(s.set, ground, cell.alpha);
        branches.insert(s.branch);
        seeds += static_cast<double>(s.set.size());
        if (r == 0) row.set = s.set;
      }
      MeanEstimate est = Summarize(values);
      row.mean_utility = est.mean;
      row.std_error = est.std_error;
      row.mean_seeds = seeds / cfg.runs;
      for (const std::string& b : branches) {
        row.branch += (row.branch.empty() ? "" : "|") + b;
      }
    } else {
      IcAdaptiveInstance instance(g, IcEstimator{false, cfg.adaptive_samples});
      const bool benchmark = cell.solver == SolverKind::kAhi;
      const int alpha = cell.alpha;
      const double p = cfg.p;
      PolicyRunner runner = [&](uint64_t episode_seed) {
        AdaptiveConfig ac{p, episode_seed, cfg.padding};
        return benchmark ? RunBenchmarkAhi(instance, ground, alpha, ac)
                         : SolveAdaptive(instance, ground, alpha, ac);
      };
      PolicyValue pv = EstimatePolicyValue(runner, cfg.episodes, sh.eval_seed);
      row.mean_utility = pv.estimate.mean;
      row.std_error = pv.estimate.std_error;
      row.feasible = true;
      double seeds = 0.0;
      for (const PolicyRun& r : pv.runs) {
        row.feasible = row.feasible && IsGroupEqual(r.set, ground, alpha);
        seeds += static_cast<double>(r.set.size());
      }
      row.mean_seeds = seeds / static_cast<double>(pv.runs.size());
      row.branch = JoinBranches(pv.runs);
    }
  } catch (const Error& e) {
    row.error = e.what();
    row.feasible = false;
    row.branch = "error";
  }
  if (cfg.timing) {
    row.runtime_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  }
  return row;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

PaddingOrder ParsePadding(const std::string& s) {
  if (s == "index") return PaddingOrder::kIndex;
  if (s == "shuffled") return PaddingOrder::kShuffled;
  if (s == "ranked") return PaddingOrder::kRanked;
  throw InputError("unknown padding '" + s + "' (expected index|shuffled|ranked)");
}

std::string PaddingName(PaddingOrder p) {
  switch (p) {
    case PaddingOrder::kIndex: return "index";
    case PaddingOrder::kShuffled: return "shuffled";
    case PaddingOrder::kRanked: return "ranked";
  }
  return "?";
}

std::string GroupingName(Grouping g) {
  return g == Grouping::kRandom ? "random" : "gaussian";
}

std::string SolverName(SolverKind s) {
  switch (s) {
    case SolverKind::kSg: return "SG";
    case SolverKind::kAsg: return "ASG";
    case SolverKind::kHi: return "HI";
    case SolverKind::kAhi: return "AHI";
  }
  return "?";
}

ExperimentConfig ParseExperimentConfig(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("config must be a JSON object");
  CheckKeys(j,
            {"dataset", "synthetic", "padding", "groupings", "grouping", "sigma", "m",
             "alpha", "p_edge", "solvers", "p", "episodes", "runs", "rounds",
             "objective_samples", "adaptive_samples", "seed", "workers",
             "timing", "output", "json_output"},
            "config");
  ExperimentConfig cfg;
  try {
    if (j.contains("dataset") && !j["dataset"].is_null()) {
      cfg.dataset = j["dataset"].get<std::string>();
    }
    if (j.contains("synthetic")) {
      const json& s = j["synthetic"];
      CheckKeys(s, {"nodes", "exponent", "max_out_degree", "sink_fraction",
                    "popularity", "seed"},
                "synthetic");
      SyntheticGraphOptions& o = cfg.synthetic;
      o.nodes = s.value("nodes", o.nodes);
      o.exponent = s.value("exponent", o.exponent);
      o.max_out_degree = s.value("max_out_degree", o.max_out_degree);
      o.sink_fraction = s.value("sink_fraction", o.sink_fraction);
      o.popularity = s.value("popularity", o.popularity);
      cfg.graph_seed = s.value("seed", cfg.graph_seed);
    }
    const char* gkey = j.contains("groupings") ? "groupings" : "grouping";
    if (j.contains(gkey)) {
      cfg.groupings.clear();
      for (const std::string& s : AsList<std::string>(j[gkey], gkey)) {
        cfg.groupings.push_back(ParseGrouping(s));
      }
    }
    cfg.sigma = j.value("sigma", cfg.sigma);
    if (j.contains("padding")) cfg.padding = ParsePadding(j["padding"].get<std::string>());
    if (j.contains("m")) cfg.m = AsList<int>(j["m"], "m");
    if (j.contains("alpha")) cfg.alpha = AsList<int>(j["alpha"], "alpha");
    if (j.contains("p_edge")) cfg.p_edge = AsList<double>(j["p_edge"], "p_edge");
    if (j.contains("solvers")) {
      cfg.solvers.clear();
      for (const std::string& s : AsList<std::string>(j["solvers"], "solvers")) {
        cfg.solvers.push_back(ParseSolver(s));
      }
    }
    if (j.contains("p")) {
      cfg.p = j["p"].get<double>();
      cfg.p_from_config = true;
    }
    cfg.episodes = j.value("episodes", cfg.episodes);
    cfg.runs = j.value("runs", cfg.runs);
    cfg.rounds = j.value("rounds", cfg.rounds);
    cfg.objective_samples = j.value("objective_samples", cfg.objective_samples);
    cfg.adaptive_samples = j.value("adaptive_samples", cfg.adaptive_samples);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.workers = j.value("workers", cfg.workers);
    cfg.timing = j.value("timing", cfg.timing);
    cfg.output = j.value("output", cfg.output);
    cfg.json_output = j.value("json_output", cfg.json_output);
  } catch (const json::exception& e) {
    throw InputError(std::string("bad config value: ") + e.what());
  }
  ValidateExperimentConfig(cfg);
  return cfg;
}

void ValidateExperimentConfig(const ExperimentConfig& cfg) {
  if (cfg.groupings.empty() || cfg.m.empty() || cfg.alpha.empty() ||
      cfg.p_edge.empty() || cfg.solvers.empty()) {
    throw InputError("every sweep must be non-empty");
  }
  for (int m : cfg.m) {
    if (m < 1) throw InputError("m must be at least 1");
  }
  for (int a : cfg.alpha) {
    if (a < 0) throw InputError("alpha must be non-negative");
  }
  for (double pe : cfg.p_edge) {
    if (!(pe >= 0.0 && pe <= 1.0)) throw InputError("p_edge must lie in [0, 1]");
  }
  if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) throw InputError("p must lie in [0, 1]");
  if (cfg.episodes < 1) throw InputError("episodes must be at least 1");
  if (cfg.runs < 1) throw InputError("runs must be at least 1");
  if (cfg.rounds < 1) throw InputError("rounds must be at least 1");
  if (cfg.objective_samples < 1 || cfg.adaptive_samples < 1) {
    throw InputError("sample counts must be at least 1");
  }
  if (cfg.workers < 1) throw InputError("workers must be at least 1");
  if (cfg.dataset.empty() && cfg.synthetic.nodes < 1) {
    throw InputError("synthetic graph needs at least one node");
  }
  if (!cfg.dataset.empty() && !std::filesystem::exists(cfg.dataset)) {
    throw IoError("dataset '" + cfg.dataset + "' does not exist");
  }
}

ExperimentResult RunExperiment(const ExperimentConfig& cfg) {
  ValidateExperimentConfig(cfg);
  Shared sh;
  sh.cfg = &cfg;
  sh.objective_seed = DeriveSeed(cfg.seed, {kObjectiveStream});
  sh.solver_seed = DeriveSeed(cfg.seed, {kSolverStream});
  sh.eval_seed = DeriveSeed(cfg.seed, {kEvalStream});

  Graph base;
  std::string text;
  if (cfg.dataset.empty()) {
    base = SyntheticPowerLawGraph(cfg.synthetic, cfg.graph_seed);
  } else {
    text = ReadFile(cfg.dataset);
    base = ParseEdgeList(text, 0.0);
  }
  for (double pe : cfg.p_edge) {
    sh.graphs.push_back(std::make_shared<const Graph>(
        cfg.dataset.empty() ? base.WithUniformProbability(pe)
                            : ParseEdgeList(text, pe)));
  }
  const int n = base.num_nodes();
  for (size_t gi = 0; gi < cfg.groupings.size(); ++gi) {
    std::vector<GroupedGroundSet> per_m;
    for (int m : cfg.m) {
      uint64_t s = DeriveSeed(cfg.seed, {kGroupStream, static_cast<uint64_t>(gi),
                                         static_cast<uint64_t>(m)});
      std::vector<int> assign = cfg.groupings[gi] == Grouping::kRandom
                                    ? RandomGroups(n, m, s)
                                    : GaussianGroups(n, m, cfg.sigma, s);
      per_m.push_back(GroupedGroundSet::FromAssignment(std::move(assign), m));
    }
    sh.grounds.push_back(std::move(per_m));
  }

  std::vector<Cell> cells;
  for (size_t gi = 0; gi < cfg.groupings.size(); ++gi) {
    for (size_t mi = 0; mi < cfg.m.size(); ++mi) {
      for (size_t pi = 0; pi < cfg.p_edge.size(); ++pi) {
        for (int a : cfg.alpha) {
          for (SolverKind s : cfg.solvers) {
            cells.push_back({static_cast<int>(gi), static_cast<int>(mi),
                             static_cast<int>(pi), a, s});
          }
        }
      }
    }
  }

  ExperimentResult result;
  result.num_nodes = n;
  result.num_edges = base.num_edges();
  result.rows.resize(cells.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t k = next++; k < cells.size(); k = next++) {
      result.rows[k] = RunCell(sh, cells[k]);
    }
  };
  const int workers = std::min<int>(cfg.workers, static_cast<int>(cells.size()));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  return result;
}

std::string FormatCsv(const ExperimentResult& result) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const ExperimentRow& r : result.rows) {
    out += SolverName(r.solver) + "," + std::to_string(r.alpha) + "," +
           Num(r.p_edge) + "," + std::to_string(r.m) + "," +
           GroupingName(r.grouping) + "," + std::to_string(r.seed) + ",";
    if (r.error) {
      out += ",,";
    } else {
      out += Num(r.mean_utility) + "," + Num(r.std_error) + ",";
    }
    if (r.runtime_ms) out += Num(*r.runtime_ms);
    out += std::string(",") + (r.feasible ? "true" : "false") + ",";
    out += r.error ? CsvSafe("error: " + *r.error) : CsvSafe(r.branch);
    out += "\n";
  }
  return out;
}

std::string FormatJson(const ExperimentConfig& cfg,
                       const ExperimentResult& result) {
  json j;
  json c;
  c["dataset"] = cfg.dataset.empty() ? json(nullptr) : json(cfg.dataset);
  c["synthetic"] = {{"nodes", cfg.synthetic.nodes},
                    {"exponent", cfg.synthetic.exponent},
                    {"max_out_degree", cfg.synthetic.max_out_degree},
                    {"sink_fraction", cfg.synthetic.sink_fraction},
                    {"popularity", cfg.synthetic.popularity},
                    {"seed", cfg.graph_seed}};
  std::vector<std::string> groupings, solvers;
  for (Grouping g : cfg.groupings) groupings.push_back(GroupingName(g));
  for (SolverKind s : cfg.solvers) solvers.push_back(SolverName(s));
  c["groupings"] = groupings;
  c["sigma"] = cfg.sigma;
  c["m"] = cfg.m;
  c["alpha"] = cfg.alpha;
  c["p_edge"] = cfg.p_edge;
  c["solvers"] = solvers;
  c["p"] = cfg.p;
  c["padding"] = PaddingName(cfg.padding);
  c["episodes"] = cfg.episodes;
  c["runs"] = cfg.runs;
  c["rounds"] = cfg.rounds;
  c["objective_samples"] = cfg.objective_samples;
  c["adaptive_samples"] = cfg.adaptive_samples;
  c["seed"] = cfg.seed;
  j["config"] = c;
  j["graph"] = {{"nodes", result.num_nodes}, {"edges", result.num_edges}};
  json rows = json::array();
  for (const ExperimentRow& r : result.rows) {
    json o;
    o["solver"] = SolverName(r.solver);
    o["alpha"] = r.alpha;
    o["p_edge"] = r.p_edge;
    o["m"] = r.m;
    o["grouping"] = GroupingName(r.grouping);
    o["seed"] = r.seed;
    o["feasible"] = r.feasible;
    o["branch"] = r.branch;
    o["p_used"] = r.p_used;
    o["p_source"] = cfg.p_from_config ? "config" : "experiment default";
    o["k_min"] = r.k_min;
    o["group_sizes"] = r.group_sizes;
    if (r.error) {
      o["error"] = *r.error;
    } else {
      o["mean_utility"] = r.mean_utility;
      o["std_error"] = r.std_error;
      o["mean_seeds"] = r.mean_seeds;
    }
    if (r.runtime_ms) o["runtime_ms"] = *r.runtime_ms;
    if (!r.set.empty()) o["set"] = r.set;
    rows.push_back(std::move(o));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

}  // namespace fairsub
