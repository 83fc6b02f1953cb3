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


// Command-line front end. Talks to the library only through the C API.
//
//   fairsub solve      --instance inst.json [--mode M --alpha A ...]
//   fairsub adaptive   --instance inst.json [--episodes N --optimum ...]
//   fairsub experiment --config sweep.json [--seed S --output out.csv ...]
//   fairsub check      [--level fast|full] [--criteria 1,2]
//   fairsub oracle     --instance inst.json [--constraint C ...]
//
// Exit codes: 0 success, 1 check failure, 2 input or runtime error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fairsub/fairsub.h"
#include "json.hpp"

using nlohmann::json;

namespace {

constexpr int kExitCheckFailure = 1;
constexpr int kExitError = 2;

struct CliError {
  std::string message;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{"cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw CliError{"cannot write '" + path + "'"};
}

json ParseFile(const std::string& path) {
  try {
    return json::parse(ReadFile(path), nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw CliError{path + ": " + e.what()};
  }
}

void Check(fs_status s, const char* what) {
  if (s != FS_OK) {
    throw CliError{std::string(what) + ": " + fs_status_name(s) + ": " + fs_last_error()};
  }
}

// Owns a string returned by the library.
struct Owned {
  char* p = nullptr;
  ~Owned() { fs_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

template <typename T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() { Free(p); }
};
using Ground = Handle<fs_ground, fs_ground_free>;
using Objective = Handle<fs_objective, fs_objective_free>;
using Adaptive = Handle<fs_adaptive, fs_adaptive_free>;

void LoadGround(const json& inst, Ground& g) {
  if (!inst.contains("ground")) throw CliError{"instance has no 'ground'"};
  Check(fs_ground_from_json(inst["ground"].dump().c_str(), &g.p), "ground");
}

// Flags set on the command line, merged over a JSON object.
struct Overrides {
  json values = json::object();
  template <typename T>
  void Add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    app->add_option_function<T>(flag, [this, key](const T& v) { values[key] = v; }, help);
  }
  json Apply(json base) const {
    if (base.is_null()) base = json::object();
    for (const auto& [k, v] : values.items()) base[k] = v;
    return base;
  }
};

void Emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    WriteFile(output, text);
  }
}

std::string Pretty(const std::string& compact) { return json::parse(compact).dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fair submodular selection under group constraints"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fs_version()));

  std::string instance_path, output;

  CLI::App* solve = app.add_subcommand("solve", "non-adaptive solvers");
  Overrides solve_opts;
  solve->add_option("--instance", instance_path, "JSON with 'ground', 'objective', optional 'options'")->required();
  solve->add_option("-o,--output", output, "write the result here instead of stdout");
  solve_opts.Add<std::string>(solve, "--mode", "mode", "group_equality | cardinality | monotone | hi");
  solve_opts.Add<int>(solve, "--alpha", "alpha", "group-equality slack");
  solve_opts.Add<int>(solve, "--cardinality", "cardinality", "global size bound");
  solve_opts.Add<double>(solve, "--p", "p", "sampling rate");
  solve_opts.Add<uint64_t>(solve, "--seed", "seed", "random seed");
  solve_opts.Add<int>(solve, "--repeats", "repeats", "independent runs, best kept");
  solve_opts.Add<std::string>(solve, "--padding", "padding", "index | shuffled | ranked");

  CLI::App* adaptive = app.add_subcommand("adaptive", "adaptive policies");
  Overrides adaptive_opts;
  bool with_optimum = false;
  adaptive->add_option("--instance", instance_path, "JSON with 'ground', 'adaptive', optional 'options'")->required();
  adaptive->add_option("-o,--output", output, "write the result here instead of stdout");
  adaptive->add_flag("--optimum", with_optimum, "also compute the optimal policy value (tabular only)");
  adaptive_opts.Add<std::string>(adaptive, "--mode", "mode", "group_equality | monotone | equity | ahi");
  adaptive_opts.Add<int>(adaptive, "--alpha", "alpha", "group-equality slack");
  adaptive_opts.Add<double>(adaptive, "--p", "p", "sampling rate");
  adaptive_opts.Add<uint64_t>(adaptive, "--seed", "seed", "base episode seed");
  adaptive_opts.Add<int>(adaptive, "--episodes", "episodes", "policy executions");
  adaptive_opts.Add<std::string>(adaptive, "--padding", "padding", "index | shuffled | ranked");
  adaptive_opts.Add<int>(adaptive, "--cardinality", "cardinality", "equity budget");
  adaptive_opts.Add<std::vector<int>>(adaptive, "--low", "low", "equity lower bounds per group");
  adaptive_opts.Add<std::vector<int>>(adaptive, "--high", "high", "equity upper bounds per group");

  CLI::App* experiment = app.add_subcommand("experiment", "influence-maximization sweeps");
  Overrides exp_opts;
  std::string config_path;
  experiment->add_option("--config", config_path, "sweep configuration (JSON, comments allowed)");
  exp_opts.Add<std::string>(experiment, "--dataset", "dataset", "edge-list file");
  exp_opts.Add<std::string>(experiment, "-o,--output", "output", "CSV path (stdout if unset)");
  exp_opts.Add<std::string>(experiment, "--json-output", "json_output", "JSON mirror path");
  exp_opts.Add<uint64_t>(experiment, "--seed", "seed", "sweep seed");
  exp_opts.Add<int>(experiment, "--workers", "workers", "worker threads");
  exp_opts.Add<int>(experiment, "--episodes", "episodes", "adaptive episodes per cell");
  exp_opts.Add<int>(experiment, "--runs", "runs", "non-adaptive runs per cell");
  exp_opts.Add<int>(experiment, "--rounds", "rounds", "evaluation worlds per run");
  exp_opts.Add<int>(experiment, "--objective-samples", "objective_samples", "worlds behind the objective");
  exp_opts.Add<int>(experiment, "--adaptive-samples", "adaptive_samples", "draws per adaptive gain");
  exp_opts.Add<std::vector<int>>(experiment, "--alpha", "alpha", "alpha sweep");
  exp_opts.Add<std::vector<int>>(experiment, "--m", "m", "group-count sweep");
  exp_opts.Add<std::vector<double>>(experiment, "--p-edge", "p_edge", "edge-probability sweep");
  exp_opts.Add<std::vector<std::string>>(experiment, "--grouping", "groupings", "random | gaussian");
  exp_opts.Add<std::vector<std::string>>(experiment, "--solvers", "solvers", "SG ASG HI AHI");
  exp_opts.Add<double>(experiment, "--p", "p", "sampling rate");
  exp_opts.Add<std::string>(experiment, "--padding", "padding", "index | shuffled | ranked");
  exp_opts.Add<bool>(experiment, "--timing", "timing", "record runtime_ms");

  CLI::App* check = app.add_subcommand("check", "property and acceptance suites");
  std::string level = "fast", summary_path = "check_summary.json";
  uint64_t check_seed = 1;
  std::vector<int> criteria;
  check->add_option("--level", level, "fast | full")->check(CLI::IsMember({"fast", "full"}));
  check->add_option("--seed", check_seed, "suite seed");
  check->add_option("--criteria", criteria, "run only these acceptance criteria")->delimiter(',');
  check->add_option("--summary", summary_path, "machine-readable summary path ('' to skip)");

  CLI::App* oracle = app.add_subcommand("oracle", "exhaustive optimum of a small instance");
  Overrides oracle_opts;
  oracle->add_option("--instance", instance_path, "JSON with 'ground' and 'objective' or 'adaptive'")->required();
  oracle->add_option("-o,--output", output, "write the result here instead of stdout");
  oracle_opts.Add<std::string>(oracle, "--constraint", "constraint", "none | group_equality | cardinality | equity");
  oracle_opts.Add<int>(oracle, "--alpha", "alpha", "group-equality slack");
  oracle_opts.Add<int>(oracle, "--cardinality", "cardinality", "global size bound");
  oracle_opts.Add<std::vector<int>>(oracle, "--low", "low", "equity lower bounds");
  oracle_opts.Add<std::vector<int>>(oracle, "--high", "high", "equity upper bounds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*solve) {
      json inst = ParseFile(instance_path);
      Ground g;
      Objective f;
      LoadGround(inst, g);
      if (!inst.contains("objective")) throw CliError{"instance has no 'objective'"};
      Check(fs_objective_from_json(inst["objective"].dump().c_str(), &f.p), "objective");
      json opts = solve_opts.Apply(inst.value("options", json::object()));
      Owned r;
      Check(fs_solve(f.p, g.p, opts.dump().c_str(), &r.p), "solve");
      Emit(Pretty(r.str()), output);
      return 0;
    }
    if (*adaptive) {
      json inst = ParseFile(instance_path);
      Ground g;
      Adaptive a;
      LoadGround(inst, g);
      if (!inst.contains("adaptive")) throw CliError{"instance has no 'adaptive'"};
      Check(fs_adaptive_from_json(inst["adaptive"].dump().c_str(), &a.p), "adaptive instance");
      json opts = adaptive_opts.Apply(inst.value("options", json::object()));
      Owned r;
      Check(fs_adaptive_evaluate(a.p, g.p, opts.dump().c_str(), &r.p), "adaptive");
      json result = json::parse(r.str());
      if (with_optimum) {
        json constraint = json::object();
        const std::string mode = opts.value("mode", "group_equality");
        constraint["constraint"] = mode == "equity" ? "equity" : "group_equality";
        for (const char* k : {"alpha", "cardinality", "low", "high"}) {
          if (opts.contains(k)) constraint[k] = opts[k];
        }
        Owned o;
        Check(fs_adaptive_optimum(a.p, g.p, constraint.dump().c_str(), &o.p), "optimum");
        result["optimum"] = json::parse(o.str());
      }
      Emit(result.dump(2) + "\n", output);
      return 0;
    }
    if (*experiment) {
      json cfg = config_path.empty() ? json::object() : ParseFile(config_path);
      cfg = exp_opts.Apply(std::move(cfg));
      const std::string csv_path = cfg.value("output", "");
      Owned csv, mirror;
      const bool want_json = !cfg.value("json_output", "").empty();
      Check(fs_experiment_run(cfg.dump().c_str(), &csv.p, want_json ? &mirror.p : nullptr),
            "experiment");
      Emit(csv.str(), csv_path);
      if (want_json) WriteFile(cfg["json_output"].get<std::string>(), mirror.str());
      return 0;
    }
    if (*check) {
      json opts = {{"level", level}, {"seed", check_seed}};
      if (!criteria.empty()) opts["criteria"] = criteria;
      int passed = 0;
      Owned summary, text;
      Check(fs_checks_run(opts.dump().c_str(), &passed, &summary.p, &text.p), "check");
      std::cout << text.str();
      if (!summary_path.empty()) WriteFile(summary_path, summary.str());
      std::cout << (passed ? "all checks passed\n" : "checks FAILED\n");
      return passed ? 0 : kExitCheckFailure;
    }
    if (*oracle) {
      json inst = ParseFile(instance_path);
      Ground g;
      LoadGround(inst, g);
      json opts = inst.value("options", json::object());
      json constraint = json::object();
      for (const char* k : {"constraint", "alpha", "cardinality", "low", "high"}) {
        if (opts.contains(k)) constraint[k] = opts[k];
      }
      constraint = oracle_opts.Apply(std::move(constraint));
      Owned r;
      if (inst.contains("adaptive")) {
        Adaptive a;
        Check(fs_adaptive_from_json(inst["adaptive"].dump().c_str(), &a.p), "adaptive instance");
        Check(fs_adaptive_optimum(a.p, g.p, constraint.dump().c_str(), &r.p), "oracle");
      } else {
        if (!inst.contains("objective")) throw CliError{"instance has no 'objective' or 'adaptive'"};
        Objective f;
        Check(fs_objective_from_json(inst["objective"].dump().c_str(), &f.p), "objective");
        Check(fs_brute_force(f.p, g.p, constraint.dump().c_str(), &r.p), "oracle");
      }
      Emit(Pretty(r.str()), output);
      return 0;
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
