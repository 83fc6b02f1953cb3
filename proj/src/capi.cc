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


#include "fairsub/fairsub.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <string>

#include "fairsub/benchmarks.h"
#include "fairsub/checks.h"
#include "fairsub/errors.h"
#include "fairsub/experiment.h"
#include "fairsub/oracle.h"
#include "fairsub/specs.h"
#include "json.hpp"

using nlohmann::json;

struct fs_ground {
  fairsub::GroupedGroundSet ground;
};
struct fs_objective {
  fairsub::SetObjective f;
};
struct fs_adaptive {
  fairsub::AdaptiveSpec spec;
};

namespace {

thread_local std::string last_error;

fs_status Fail(fs_status s, const std::string& message) {
  last_error = message;
  return s;
}

// Runs body, translating library errors into status codes.
template <typename F>
fs_status Guard(F&& body) {
  try {
    body();
    last_error.clear();
    return FS_OK;
  } catch (const fairsub::Error& e) {
    return Fail(static_cast<fs_status>(static_cast<int>(e.code())), e.what());
  } catch (const json::exception& e) {
    return Fail(FS_ERR_INPUT, e.what());
  } catch (const std::bad_alloc&) {
    return Fail(FS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(FS_ERR_INTERNAL, e.what());
  }
}

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void Require(const void* p, const char* what) {
  if (!p) throw fairsub::InputError(std::string(what) + " is null");
}

json Options(const char* text, std::initializer_list<const char*> allowed) {
  json j = text && *text ? fairsub::ParseJson(text, "options") : json::object();
  if (!j.is_object()) throw fairsub::InputError("options must be a JSON object");
  for (const auto& [k, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw fairsub::InputError("unknown option '" + k + "'");
  }
  return j;
}

template <typename T>
T Opt(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

fairsub::FairnessSpec SpecFrom(const json& o, const fairsub::GroupedGroundSet& g) {
  fairsub::FairnessSpec spec;
  spec.alpha = Opt(o, "alpha", 0);
  if (o.contains("cardinality")) spec.cardinality = o.at("cardinality").get<int>();
  if (o.contains("low") || o.contains("high")) {
    fairsub::EquityBounds b;
    b.low = Opt(o, "low", std::vector<int>(g.num_groups(), 0));
    b.high = Opt(o, "high", g.group_sizes());
    if (static_cast<int>(b.low.size()) != g.num_groups() ||
        static_cast<int>(b.high.size()) != g.num_groups()) {
      throw fairsub::InputError("low and high need one entry per group");
    }
    spec.equity = std::move(b);
  }
  spec.Validate(g);
  return spec;
}

fairsub::SetPredicate PredicateFrom(const json& o, const fairsub::GroupedGroundSet& g) {
  const std::string c = Opt<std::string>(o, "constraint", "group_equality");
  fairsub::FairnessSpec spec = SpecFrom(o, g);
  if (c == "none") return fairsub::AnySet();
  if (c == "group_equality") return fairsub::GroupEqualPredicate(g, spec.alpha);
  if (c == "cardinality") {
    if (!spec.cardinality) throw fairsub::InputError("constraint 'cardinality' needs a cardinality");
    return fairsub::CardinalityPredicate(g, spec.alpha, *spec.cardinality);
  }
  if (c == "equity") {
    if (!spec.equity) throw fairsub::InputError("constraint 'equity' needs low/high bounds");
    return fairsub::EquityPredicate(g, spec);
  }
  throw fairsub::InputError("unknown constraint '" + c + "'");
}

json TraceJson(const std::vector<fairsub::GreedyStep>& trace) {
  json out = json::array();
  for (const auto& s : trace) out.push_back({{"item", s.item}, {"gain", s.gain}});
  return out;
}

json RepairsJson(const std::vector<fairsub::RepairRecord>& repairs) {
  json out = json::array();
  for (const auto& r : repairs) {
    out.push_back({{"base", r.base}, {"x", r.x}, {"y", r.y},
                   {"base_value", r.base_value}, {"value_x", r.value_x},
                   {"value_y", r.value_y}, {"chose_x", r.chose_x}});
  }
  return out;
}

}  // namespace

extern "C" {

const char* fs_version(void) { return "0.1.0"; }
const char* fs_last_error(void) { return last_error.c_str(); }
void fs_string_free(char* s) { std::free(s); }

const char* fs_status_name(fs_status status) {
  switch (status) {
    case FS_OK: return "ok";
    case FS_ERR_INPUT: return "input error";
    case FS_ERR_INFEASIBLE: return "infeasible";
    case FS_ERR_CAPABILITY: return "capability exceeded";
    case FS_ERR_CONTRACT: return "contract violation";
    case FS_ERR_IO: return "io error";
    case FS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

fs_status fs_ground_from_groups(const int* group_of, size_t n, int num_groups,
                                fs_ground** out) {
  return Guard([&] {
    Require(out, "out");
    if (n > 0) Require(group_of, "group_of");
    std::vector<int> assign(group_of, group_of + n);
    *out = new fs_ground{fairsub::GroupedGroundSet::FromAssignment(std::move(assign), num_groups)};
  });
}

fs_status fs_ground_from_json(const char* text, fs_ground** out) {
  return Guard([&] {
    Require(text, "json");
    Require(out, "out");
    *out = new fs_ground{fairsub::GroundFromJson(fairsub::ParseJson(text, "ground"))};
  });
}

fs_status fs_ground_load(const char* path, fs_ground** out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = new fs_ground{fairsub::LoadGroupFile(path)};
  });
}

size_t fs_ground_size(const fs_ground* g) { return g ? g->ground.size() : 0; }
int fs_ground_num_groups(const fs_ground* g) { return g ? g->ground.num_groups() : 0; }
void fs_ground_free(fs_ground* g) { delete g; }

fs_status fs_objective_from_json(const char* text, fs_objective** out) {
  return Guard([&] {
    Require(text, "json");
    Require(out, "out");
    *out = new fs_objective{fairsub::ObjectiveFromJson(fairsub::ParseJson(text, "objective"))};
  });
}

fs_status fs_objective_evaluate(const fs_objective* f, const int* items,
                                size_t count, double* value) {
  return Guard([&] {
    Require(f, "objective");
    Require(value, "value");
    if (count > 0) Require(items, "items");
    fairsub::ItemSet s(items, items + count);
    for (fairsub::Item e : s) {
      if (e < 0 || e >= f->f.ground_size()) {
        throw fairsub::InputError("item " + std::to_string(e) + " outside the ground set");
      }
    }
    *value = f->f.Evaluate(s);
  });
}

uint64_t fs_objective_eval_count(const fs_objective* f) {
  return f ? f->f.eval_count() : 0;
}
void fs_objective_free(fs_objective* f) { delete f; }

fs_status fs_solve(const fs_objective* f, const fs_ground* g, const char* options,
                   char** result_json) {
  return Guard([&] {
    Require(f, "objective");
    Require(g, "ground");
    Require(result_json, "result_json");
    using namespace fairsub;
    json o = Options(options, {"mode", "alpha", "cardinality", "p", "seed", "repeats", "padding"});
    const GroupedGroundSet& G = g->ground;
    if (f->f.ground_size() != G.size()) {
      throw InputError("objective has " + std::to_string(f->f.ground_size()) +
                       " items but the ground set has " + std::to_string(G.size()));
    }
    const std::string mode = Opt<std::string>(o, "mode", "group_equality");
    const int alpha = Opt(o, "alpha", 0);
    SolverConfig cfg;
    cfg.seed = Opt<uint64_t>(o, "seed", 0);
    cfg.repeats = Opt(o, "repeats", 1);
    cfg.padding = ParsePadding(Opt<std::string>(o, "padding", "index"));
    if (mode == "hi") cfg.p = kExperimentSamplingRate;
    cfg.p = Opt(o, "p", cfg.p);
    std::optional<int> c;
    if (o.contains("cardinality")) c = o.at("cardinality").get<int>();
    FairnessSpec spec;
    spec.alpha = alpha;
    spec.cardinality = c;
    spec.Validate(G);
    const uint64_t before = f->f.eval_count();
    Solution sol;
    if (mode == "group_equality") {
      sol = SolveGroupEquality(f->f, G, alpha, cfg);
    } else if (mode == "cardinality") {
      if (!c) throw InputError("mode 'cardinality' needs a cardinality");
      sol = SolveWithCardinality(f->f, G, alpha, *c, cfg);
    } else if (mode == "monotone") {
      sol = MonotoneSolve(f->f, G, alpha, c, cfg.seed);
    } else if (mode == "hi") {
      sol = RunBenchmarkHi(f->f, G, alpha, cfg.p, cfg.seed);
    } else {
      throw InputError("unknown mode '" + mode + "'");
    }
    bool feasible = IsGroupEqual(sol.set, G, alpha);
    if (c && mode != "hi") feasible = feasible && static_cast<int>(sol.set.size()) <= *c;
    json r = {{"mode", mode},
              {"set", sol.set},
              {"value", sol.value},
              {"branch", sol.branch},
              {"p_used", sol.p_used},
              {"feasible", feasible},
              {"counts", GroupCounts(sol.set, G)},
              {"trace", TraceJson(sol.trace)},
              {"repairs", RepairsJson(sol.repairs)},
              {"oracle_calls", f->f.eval_count() - before}};
    *result_json = Dup(r.dump());
  });
}

fs_status fs_brute_force(const fs_objective* f, const fs_ground* g, const char* options,
                         char** result_json) {
  return Guard([&] {
    Require(f, "objective");
    Require(g, "ground");
    Require(result_json, "result_json");
    json o = Options(options, {"constraint", "alpha", "cardinality", "low", "high"});
    fairsub::OptResult opt = fairsub::BruteForceOpt(f->f, g->ground, PredicateFrom(o, g->ground));
    json r = {{"set", opt.set}, {"value", opt.value},
              {"counts", fairsub::GroupCounts(opt.set, g->ground)}};
    *result_json = Dup(r.dump());
  });
}

fs_status fs_adaptive_from_json(const char* text, fs_adaptive** out) {
  return Guard([&] {
    Require(text, "json");
    Require(out, "out");
    *out = new fs_adaptive{fairsub::AdaptiveFromJson(fairsub::ParseJson(text, "adaptive instance"))};
  });
}

void fs_adaptive_free(fs_adaptive* a) { delete a; }

fs_status fs_adaptive_evaluate(const fs_adaptive* a, const fs_ground* g,
                               const char* options, char** result_json) {
  return Guard([&] {
    Require(a, "adaptive instance");
    Require(g, "ground");
    Require(result_json, "result_json");
    using namespace fairsub;
    json o = Options(options, {"mode", "alpha", "p", "seed", "episodes", "padding", "low",
                               "high", "cardinality", "runs"});
    const GroupedGroundSet& G = g->ground;
    const AdaptiveInstance& inst = *a->spec.instance;
    if (inst.ground_size() != G.size()) {
      throw InputError("instance has " + std::to_string(inst.ground_size()) +
                       " items but the ground set has " + std::to_string(G.size()));
    }
    const std::string mode = Opt<std::string>(o, "mode", "group_equality");
    const int episodes = Opt(o, "episodes", 1);
    const uint64_t seed = Opt<uint64_t>(o, "seed", 0);
    AdaptiveConfig cfg;
    cfg.padding = ParsePadding(Opt<std::string>(o, "padding", "index"));
    if (mode == "ahi") cfg.p = kExperimentSamplingRate;
    cfg.p = Opt(o, "p", cfg.p);
    FairnessSpec spec = SpecFrom(o, G);
    PolicyRunner runner;
    std::function<bool(const PolicyRun&)> feasible;
    if (mode == "group_equality" || mode == "monotone" || mode == "ahi") {
      auto solve = mode == "group_equality" ? SolveAdaptive
                   : mode == "monotone"     ? MonotoneAdaptiveSolve
                                            : RunBenchmarkAhi;
      runner = [&, solve](uint64_t s) {
        AdaptiveConfig c = cfg;
        c.seed = s;
        return solve(inst, G, spec.alpha, c);
      };
      feasible = [&](const PolicyRun& r) { return IsGroupEqual(r.set, G, spec.alpha); };
    } else if (mode == "equity") {
      if (!spec.equity) throw InputError("mode 'equity' needs low/high bounds");
      const int c = spec.cardinality.value_or(G.size());
      spec.cardinality = c;
      runner = [&, c](uint64_t s) {
        AdaptiveConfig ac = cfg;
        ac.seed = s;
        return EquityAdaptiveSolve(inst, G, *spec.equity, c, ac);
      };
      feasible = [&](const PolicyRun& r) { return EquityFeasible(r.set, G, spec); };
    } else {
      throw InputError("unknown mode '" + mode + "'");
    }
    PolicyValue pv = EstimatePolicyValue(runner, episodes, seed);
    bool all_feasible = true;
    json runs = json::array();
    const int keep = Opt(o, "runs", std::min(episodes, 10));
    for (size_t i = 0; i < pv.runs.size(); ++i) {
      const PolicyRun& r = pv.runs[i];
      const bool ok = feasible(r);
      all_feasible = all_feasible && ok;
      if (static_cast<int>(i) >= keep) continue;
      runs.push_back({{"selections", r.selections}, {"set", r.set}, {"value", r.value},
                      {"branch", r.branch}, {"feasible", ok}, {"observations", r.observations},
                      {"trace", TraceJson(r.trace)}, {"repairs", RepairsJson(r.repairs)}});
    }
    json r = {{"mode", mode},
              {"episodes", episodes},
              {"mean", pv.estimate.mean},
              {"std_error", pv.estimate.std_error},
              {"p_used", pv.runs.empty() ? cfg.p : pv.runs.front().p_used},
              {"feasible", all_feasible},
              {"runs", runs}};
    *result_json = Dup(r.dump());
  });
}

fs_status fs_adaptive_optimum(const fs_adaptive* a, const fs_ground* g,
                              const char* options, char** result_json) {
  return Guard([&] {
    Require(a, "adaptive instance");
    Require(g, "ground");
    Require(result_json, "result_json");
    if (!a->spec.prior || !a->spec.utility) {
      throw fairsub::CapabilityError("optimal policies need a tabular instance");
    }
    json o = Options(options, {"constraint", "alpha", "cardinality", "low", "high"});
    fairsub::SetPredicate pred = PredicateFrom(o, g->ground);
    const double dp = fairsub::BruteForceAdaptiveOpt(*a->spec.utility, *a->spec.prior, g->ground, pred);
    fairsub::OptResult fixed = fairsub::BestFixedSetValue(*a->spec.utility, *a->spec.prior, g->ground, pred);
    json r = {{"policy_value", dp}, {"best_fixed_set", fixed.set}, {"best_fixed_value", fixed.value}};
    *result_json = Dup(r.dump());
  });
}

fs_status fs_experiment_run(const char* config_json, char** csv_out, char** json_out) {
  return Guard([&] {
    Require(config_json, "config");
    Require(csv_out, "csv_out");
    fairsub::ExperimentConfig cfg = fairsub::ParseExperimentConfig(config_json);
    fairsub::ExperimentResult res = fairsub::RunExperiment(cfg);
    std::string csv = fairsub::FormatCsv(res);
    std::string mirror = json_out ? fairsub::FormatJson(cfg, res) : std::string();
    *csv_out = Dup(csv);
    if (json_out) *json_out = Dup(mirror);
  });
}

fs_status fs_checks_run(const char* options, int* passed, char** summary_json,
                        char** summary_text) {
  return Guard([&] {
    Require(passed, "passed");
    json o = Options(options, {"level", "seed", "criteria"});
    const std::string level = Opt<std::string>(o, "level", "fast");
    const uint64_t seed = Opt<uint64_t>(o, "seed", 1);
    fairsub::CheckSummary summary;
    if (o.contains("criteria")) {
      for (int id : o.at("criteria").get<std::vector<int>>()) {
        bool found = false;
        for (const fairsub::Criterion& c : fairsub::AcceptanceCriteria()) {
          if (c.id != id) continue;
          found = true;
          summary.results.push_back(fairsub::RunCriterion(c, seed));
        }
        if (!found) throw fairsub::InputError("no criterion " + std::to_string(id));
      }
    } else if (level == "fast" || level == "full") {
      summary = fairsub::RunChecks(level == "fast" ? fairsub::CheckLevel::kFast
                                                   : fairsub::CheckLevel::kFull,
                                   seed);
    } else {
      throw fairsub::InputError("unknown level '" + level + "' (expected fast|full)");
    }
    *passed = summary.passed() ? 1 : 0;
    if (summary_json) *summary_json = Dup(summary.ToJson());
    if (summary_text) *summary_text = Dup(summary.ToText());
  });
}

}  // extern "C"
