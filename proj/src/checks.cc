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

#include "fairsub/checks.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "fairsub/benchmarks.h"
#include "fairsub/errors.h"
#include "fairsub/experiment.h"
#include "fairsub/influence.h"
#include "fairsub/oracle.h"
#include "fairsub/stats.h"
#include "json.hpp"

namespace fairsub {

namespace {

int UniformInt(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1));
}

double Uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * HashToUnit(rng());
}

std::vector<int> RandomSubset(Rng& rng, int universe, int size) {
  std::vector<int> all(universe);
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::min(size, universe));
  std::sort(all.begin(), all.end());
  return all;
}

std::string Fmt(const char* format, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, format, a);
  return buf;
}

std::string SetString(std::span<const Item> s) {
  std::string out = "{";
  for (size_t k = 0; k < s.size(); ++k) {
    out += (k ? "," : "") + std::to_string(s[k]);
  }
  return out + "}";
}

std::string CountsString(std::span<const Item> s, const GroupedGroundSet& g) {
  std::vector<int> c = GroupCounts(s, g);
  std::string out = "(";
  for (size_t k = 0; k < c.size(); ++k) {
    out += (k ? "," : "") + std::to_string(c[k]);
  }
  return out + ")";
}

// Records the first failure; later ones only bump the count.
class Tally {
 public:
  explicit Tally(std::string name) { r_.name = std::move(name); }
  void Check(bool ok, const std::function<std::string()>& why) {
    ++r_.checked;
    if (!ok && r_.passed) {
      r_.passed = false;
      r_.detail = why();
    }
  }
  void Fail(const std::string& why) {
    Check(false, [&] { return why; });
  }
  void Note(const std::string& detail) {
    if (r_.passed) r_.detail = detail;
  }
  CheckResult& result() { return r_; }

 private:
  CheckResult r_;
};

template <typename F>
CheckResult Timed(F&& body) {
  auto start = std::chrono::steady_clock::now();
  CheckResult r = body();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            start)
                  .count();
  return r;
}

EquityBounds RandomEquity(Rng& rng, const GroupedGroundSet& g, int& budget) {
  EquityBounds b;
  int low_total = 0;
  for (int i = 0; i < g.num_groups(); ++i) {
    int k = g.group_size(i);
    int lo = UniformInt(rng, 0, k);
    b.low.push_back(lo);
    b.high.push_back(UniformInt(rng, lo, k));
    low_total += lo;
  }
  budget = UniformInt(rng, low_total, std::max(low_total, g.size()));
  return b;
}

}  // namespace

// ---------------------------------------------------------------------------
// Instances.

SetObjective MakeRandomObjective(Rng& rng, int n, bool monotone) {
  const int universe = n + UniformInt(rng, 1, n + 1);
  auto random_sets = [&](int max_size) {
    std::vector<std::vector<int>> sets(n);
    for (auto& s : sets) s = RandomSubset(rng, universe, UniformInt(rng, 0, max_size));
    return sets;
  };
  auto random_weights = [&](int k) {
    std::vector<double> w(k);
    for (double& v : w) v = Uniform(rng, 0.5, 3.0);
    return w;
  };
  int kind = UniformInt(rng, 0, 2);
  if (monotone) {
    if (kind == 0) {
      std::vector<double> w(n);
      for (double& v : w) v = std::floor(Uniform(rng, 0.0, 10.0));
      return MakeModular(w);
    }
    if (kind == 1) return MakeCoverage(random_sets(4), random_weights(universe));
    MnlParams p;
    const int types = UniformInt(rng, 1, 3);
    p.theta.assign(types, 1.0 / types);
    p.nu.assign(n, std::vector<double>(types));
    for (auto& row : p.nu) {
      for (double& v : row) v = Uniform(rng, 0.0, 2.0);
    }
    p.nu0.assign(types, 1.0);
    return MakeMnl(std::move(p));
  }
  if (kind == 0) {
    std::vector<WeightedEdge> edges;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (HashToUnit(rng()) < 0.4) edges.push_back({u, v, Uniform(rng, 0.5, 3.0)});
      }
    }
    return MakeCut(n, std::move(edges), /*directed=*/false);
  }
  if (kind == 1) return MakeConcaveOverlap(random_sets(4), random_weights(universe));
  std::vector<WeightedEdge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v && HashToUnit(rng()) < 0.25) edges.push_back({u, v, Uniform(rng, 0.5, 2.0)});
    }
  }
  return MakeSum({MakeCoverage(random_sets(3)), MakeCut(n, std::move(edges), true)});
}

RandomInstance MakeRandomInstance(Rng& rng, int max_n, int max_m) {
  const int n = UniformInt(rng, 1, max_n);
  const int m = UniformInt(rng, 1, max_m);
  std::vector<int> assign(n);
  for (int& a : assign) a = UniformInt(rng, 0, m - 1);
  const bool monotone = HashToUnit(rng()) < 0.5;
  SetObjective f = MakeRandomObjective(rng, n, monotone);
  std::string kind = f.label();
  return {GroupedGroundSet::FromAssignment(std::move(assign), m), std::move(f), kind};
}

RandomInstance MakeRandomInstanceWithSizes(Rng& rng, std::vector<int> sizes) {
  int n = 0;
  for (int k : sizes) n += k;
  std::vector<int> assign;
  for (size_t i = 0; i < sizes.size(); ++i) assign.insert(assign.end(), sizes[i], static_cast<int>(i));
  std::shuffle(assign.begin(), assign.end(), rng);
  const bool monotone = HashToUnit(rng()) < 0.3;
  SetObjective f = MakeRandomObjective(rng, n, monotone);
  std::string kind = f.label();
  return {GroupedGroundSet::FromAssignment(std::move(assign), static_cast<int>(sizes.size())),
          std::move(f), kind};
}

RandomAdaptive MakeRandomAdaptive(Rng& rng, int n, bool monotone, int mc_samples) {
  const int universe = 2 * n + 2;
  std::vector<std::vector<std::vector<int>>> covers(n);
  for (auto& per_state : covers) {
    per_state.resize(2);
    per_state[0] = RandomSubset(rng, universe, UniformInt(rng, 0, 2));
    per_state[1] = RandomSubset(rng, universe, UniformInt(rng, 1, 3));
  }
  std::vector<double> weights(universe);
  for (double& w : weights) w = Uniform(rng, 0.5, 2.0);
  std::vector<std::vector<double>> dist(n);
  for (auto& d : dist) {
    double q = Uniform(rng, 0.2, 0.8);
    d = {1.0 - q, q};
  }
  StatePrior prior = StatePrior::Independent(std::move(dist));
  AdaptiveObjective f = monotone ? MakePairCoverageUtility(covers, weights)
                                 : MakePairOverlapUtility(covers, weights);
  EstimatorConfig est;
  if (mc_samples > 0) {
    est.exact = false;
    est.samples = mc_samples;
  }
  auto inst = std::make_shared<TabularInstance>(prior, f, est);
  return {std::move(inst), std::move(prior), std::move(f)};
}

SolverSuite SolverSuite::Default() {
  SolverSuite s;
  s.group_equality = SolveGroupEquality;
  s.cardinality = SolveWithCardinality;
  s.monotone = MonotoneSolve;
  s.hi = RunBenchmarkHi;
  s.adaptive = SolveAdaptive;
  s.monotone_adaptive = MonotoneAdaptiveSolve;
  s.equity = EquityAdaptiveSolve;
  s.ahi = RunBenchmarkAhi;
  return s;
}

// ---------------------------------------------------------------------------
// Summary formatting.

bool CheckSummary::passed() const {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.passed; });
}

std::string CheckSummary::ToJson() const {
  nlohmann::json j;
  j["passed"] = passed();
  nlohmann::json arr = nlohmann::json::array();
  for (const CheckResult& r : results) {
    arr.push_back({{"name", r.name},
                   {"passed", r.passed},
                   {"checked", r.checked},
                   {"detail", r.detail},
                   {"seconds", r.seconds}});
  }
  j["results"] = std::move(arr);
  return j.dump(2) + "\n";
}

std::string CheckSummary::ToText() const {
  std::string out;
  for (const CheckResult& r : results) {
    out += std::string(r.passed ? "PASS " : "FAIL ") + r.name + " (" +
           std::to_string(r.checked) + " checks, " + Fmt("%.1fs", r.seconds) +
           ")";
    if (!r.detail.empty()) out += ": " + r.detail;
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Suites.

namespace {

constexpr double kTol = 1e-9;

GroupedGroundSet ShuffledGround(Rng& rng, const std::vector<int>& sizes) {
  std::vector<int> assign;
  for (size_t i = 0; i < sizes.size(); ++i) {
    assign.insert(assign.end(), sizes[i], static_cast<int>(i));
  }
  std::shuffle(assign.begin(), assign.end(), rng);
  return GroupedGroundSet::FromAssignment(std::move(assign),
                                          static_cast<int>(sizes.size()));
}

std::vector<int> RandomSizes(Rng& rng, int m, int lo, int hi) {
  std::vector<int> sizes(m);
  for (int& k : sizes) k = UniformInt(rng, lo, hi);
  return sizes;
}

std::string Describe(int index, const std::string& kind,
                     const GroupedGroundSet& g, int alpha) {
  std::string sizes;
  for (int k : g.group_sizes()) sizes += (sizes.empty() ? "" : ",") + std::to_string(k);
  return "instance " + std::to_string(index) + " (" + kind + ", sizes [" +
         sizes + "], alpha " + std::to_string(alpha) + ")";
}

std::string Violation(const std::string& where, const char* solver,
                      const char* invariant, std::span<const Item> set,
                      const GroupedGroundSet& g) {
  return where + " " + solver + ": " + invariant + " violated by " +
         SetString(set) + " with counts " + CountsString(set, g);
}

// Every solver on `instances` random instances; feasibility is recomputed
// here from the ground predicates.
CheckResult FeasibilitySweep(const std::string& name, int instances,
                             uint64_t seed, const SolverSuite& suite) {
  Tally t(name);
  int64_t runs = 0;
  for (int i = 0; i < instances; ++i) {
    Rng rng(DeriveSeed(seed, {0x66656173ULL, static_cast<uint64_t>(i)}));
    RandomInstance ri = MakeRandomInstance(rng, 12, 4);
    const GroupedGroundSet& g = ri.ground;
    const SetObjective& f = ri.objective;
    const int n = g.size();
    const int alpha = UniformInt(rng, 0, 3);
    const int c = UniformInt(rng, 0, n);
    const uint64_t s = DeriveSeed(seed, {static_cast<uint64_t>(i)});
    const std::string where = Describe(i, ri.kind, g, alpha);
    const bool hi_ok = g.min_group_size() + alpha >= 1;
    const char* solver = "";
    auto expect = [&](const char* invariant, bool ok, std::span<const Item> set) {
      ++runs;
      t.Check(ok, [&] { return Violation(where, solver, invariant, set, g); });
    };
    try {
      solver = "group_equality";
      Solution a = suite.group_equality(f, g, alpha, SolverConfig{kTheorySamplingRate, s});
      expect("is_group_equal", IsGroupEqual(a.set, g, alpha), a.set);

      solver = "cardinality";
      Solution b = suite.cardinality(f, g, alpha, c, SolverConfig{kTheorySamplingRate, s});
      expect("is_group_equal", IsGroupEqual(b.set, g, alpha), b.set);
      expect("cardinality_bound", static_cast<int>(b.set.size()) <= c, b.set);

      if (f.monotone_hint().value_or(false)) {
        solver = "monotone";
        Solution d = suite.monotone(f, g, alpha, std::nullopt, s);
        expect("is_group_equal", IsGroupEqual(d.set, g, alpha), d.set);
        solver = "monotone_cardinality";
        Solution e = suite.monotone(f, g, alpha, c, s);
        expect("is_group_equal", IsGroupEqual(e.set, g, alpha), e.set);
        expect("cardinality_bound", static_cast<int>(e.set.size()) <= c, e.set);
      }
      if (hi_ok) {
        solver = "hi";
        Solution h = suite.hi(f, g, alpha, kExperimentSamplingRate, s);
        expect("is_group_equal", IsGroupEqual(h.set, g, alpha), h.set);
      }

      const bool monotone = HashToUnit(rng()) < 0.5;
      RandomAdaptive ra = MakeRandomAdaptive(rng, n, monotone, n <= 8 ? 0 : 32);
      const AdaptiveConfig acfg{0.5, s};
      solver = "adaptive";
      PolicyRun pa = suite.adaptive(*ra.instance, g, alpha, acfg);
      expect("is_group_equal", IsGroupEqual(pa.set, g, alpha), pa.set);
      if (monotone) {
        solver = "monotone_adaptive";
        PolicyRun pm = suite.monotone_adaptive(*ra.instance, g, alpha, acfg);
        expect("is_group_equal", IsGroupEqual(pm.set, g, alpha), pm.set);
      }
      solver = "equity";
      int budget = 0;
      FairnessSpec spec;
      spec.alpha = n;
      spec.equity = RandomEquity(rng, g, budget);
      spec.cardinality = budget;
      PolicyRun pe = suite.equity(*ra.instance, g, *spec.equity, budget, acfg);
      expect("equity_feasible", EquityFeasible(pe.set, g, spec), pe.set);
      if (hi_ok) {
        solver = "ahi";
        PolicyRun ph = suite.ahi(*ra.instance, g, alpha, acfg);
        expect("is_group_equal", IsGroupEqual(ph.set, g, alpha), ph.set);
      }
    } catch (const std::exception& e) {
      t.Fail(where + " " + solver + " threw: " + e.what());
    }
  }
  t.Note(std::to_string(instances) + " instances, " + std::to_string(runs) +
         " solver outputs, all feasible");
  return t.result();
}

std::string RatioSummary(const std::vector<double>& ratios) {
  if (ratios.empty()) return "no ratios";
  double lo = *std::min_element(ratios.begin(), ratios.end());
  double mean = std::accumulate(ratios.begin(), ratios.end(), 0.0) / ratios.size();
  return "min ratio " + Fmt("%.3f", lo) + ", mean ratio " + Fmt("%.3f", mean);
}

// ---------------------------------------------------------------------------
// Criteria.

CheckResult GroupEqualityRatio(uint64_t seed, const SolverSuite& suite) {
  Tally t("group_equality_ratio");
  constexpr double kThreshold = 0.045;
  constexpr int kInstances = 20, kRuns = 200;
  std::vector<double> ratios;
  for (int i = 0, tries = 0; i < kInstances && tries < 1000; ++tries) {
    Rng rng(DeriveSeed(seed, {0x746831ULL, static_cast<uint64_t>(tries)}));
    GroupedGroundSet g = ShuffledGround(rng, RandomSizes(rng, UniformInt(rng, 1, 3), 2, 4));
    SetObjective f = MakeRandomObjective(rng, g.size(), HashToUnit(rng()) < 0.3);
    const int alpha = UniformInt(rng, 0, 2);
    OptResult opt = BruteForceOpt(f, g, GroupEqualPredicate(g, alpha));
    if (opt.value <= kTol) continue;
    OracleReport r = VerifyRatio(
        [&](uint64_t s) {
          return suite.group_equality(f, g, alpha, SolverConfig{kTheorySamplingRate, s}).value;
        },
        opt.value, kRuns, kThreshold, DeriveSeed(seed, {static_cast<uint64_t>(i)}));
    ratios.push_back(r.mean / opt.value);
    const std::string where = Describe(i, f.label(), g, alpha);
    t.Check(r.verdict, [&] {
      return where + ": mean " + Fmt("%.6g", r.mean) + " + 3 SE " +
             Fmt("%.3g", 3 * r.std_error) + " < " + Fmt("%.3f", kThreshold) +
             " * OPT " + Fmt("%.6g", opt.value);
    });
    ++i;
  }
  t.Check(ratios.size() == kInstances, [&] {
    return "only " + std::to_string(ratios.size()) + " instances with OPT > 0";
  });
  t.Note(std::to_string(ratios.size()) + " instances x " + std::to_string(kRuns) +
         " runs, threshold 0.045; " + RatioSummary(ratios));
  return t.result();
}

struct AdaptiveRegime {
  const char* name;
  double threshold;
  bool gating;  // informational regimes are reported but never fail
};

// Sizes and alpha for one regime draw; n <= 6.
void DrawRegime(int regime, Rng& rng, std::vector<int>& sizes, int& alpha) {
  switch (regime) {
    case 0:  // k_min > 1
      sizes = RandomSizes(rng, UniformInt(rng, 1, 2), 2, 3);
      alpha = UniformInt(rng, 0, 1);
      break;
    case 1:  // k_min = 1, alpha >= 1
      sizes = RandomSizes(rng, UniformInt(rng, 1, 2), 1, 3);
      sizes.insert(sizes.begin() + UniformInt(rng, 0, static_cast<int>(sizes.size())), 1);
      alpha = UniformInt(rng, 1, 2);
      break;
    case 2:  // k_min = 0
      sizes = RandomSizes(rng, UniformInt(rng, 1, 2), 1, 3);
      sizes.push_back(0);
      alpha = UniformInt(rng, 0, 2);
      break;
    default:  // k_min = 1, alpha = 0
      sizes = RandomSizes(rng, UniformInt(rng, 1, 2), 1, 3);
      sizes.push_back(1);
      alpha = 0;
      break;
  }
}

CheckResult AdaptiveRatio(uint64_t seed, const SolverSuite& suite) {
  Tally t("adaptive_ratio");
  const AdaptiveRegime regimes[] = {{"kmin_gt1", 1.0 / 24, true},
                                    {"kmin1_alpha_pos", 1.0 / 10, true},
                                    {"kmin0", 1.0 / 6, false},
                                    {"kmin1_alpha0", 1.0 / 12, false}};
  constexpr int kInstances = 10, kEpisodes = 500;
  std::string detail;
  for (int r = 0; r < 4; ++r) {
    const AdaptiveRegime& reg = regimes[r];
    std::vector<double> ratios;
    int misses = 0;
    for (int i = 0, tries = 0; i < kInstances && tries < 500; ++tries) {
      Rng rng(DeriveSeed(seed, {0x746832ULL, static_cast<uint64_t>(r),
                                static_cast<uint64_t>(tries)}));
      std::vector<int> sizes;
      int alpha = 0;
      DrawRegime(r, rng, sizes, alpha);
      GroupedGroundSet g = ShuffledGround(rng, sizes);
      RandomAdaptive ra = MakeRandomAdaptive(rng, g.size(), HashToUnit(rng()) < 0.5);
      double dp = BruteForceAdaptiveOpt(ra.utility, ra.prior, g, GroupEqualPredicate(g, alpha));
      if (dp <= kTol) continue;
      OracleReport rep = VerifyRatio(
          [&](uint64_t s) {
            return suite.adaptive(*ra.instance, g, alpha, AdaptiveConfig{0.5, s}).value;
          },
          dp, kEpisodes, reg.threshold,
          DeriveSeed(seed, {static_cast<uint64_t>(r), static_cast<uint64_t>(i)}));
      ratios.push_back(rep.mean / dp);
      if (!rep.verdict) ++misses;
      if (reg.gating) {
        const std::string where = std::string(reg.name) + " " + Describe(i, ra.utility.label, g, alpha);
        t.Check(rep.verdict, [&] {
          return where + ": mean " + Fmt("%.6g", rep.mean) + " + 3 SE < " +
                 Fmt("%.4f", reg.threshold) + " * DP " + Fmt("%.6g", dp);
        });
      }
      ++i;
    }
    if (reg.gating) {
      t.Check(ratios.size() == kInstances, [&] {
        return std::string(reg.name) + ": only " + std::to_string(ratios.size()) + " instances";
      });
    }
    detail += std::string(detail.empty() ? "" : "; ") + reg.name + " (" +
              Fmt("1/%.0f", 1.0 / reg.threshold) + (reg.gating ? "" : ", informational") +
              ") " + std::to_string(ratios.size()) + " inst " + RatioSummary(ratios);
    if (misses) detail += ", " + std::to_string(misses) + " below";
  }
  t.Note(detail);
  return t.result();
}

CheckResult CardinalityRatio(uint64_t seed, const SolverSuite& suite) {
  Tally t("cardinality_ratio");
  // 1/8 times the ratio of the substituted matroid subroutine (1/4).
  constexpr double kSubroutineRatio = 0.25;
  constexpr double kThreshold = kSubroutineRatio / 8;
  constexpr int kInstances = 10, kRuns = 100;
  std::vector<double> ratios;
  int i = 0;
  for (int tries = 0; i < kInstances && tries < 3000; ++tries) {
    Rng rng(DeriveSeed(seed, {0x746834ULL, static_cast<uint64_t>(tries)}));
    GroupedGroundSet g = ShuffledGround(rng, RandomSizes(rng, UniformInt(rng, 2, 3), 2, 4));
    SetObjective f = MakeRandomObjective(rng, g.size(), HashToUnit(rng()) < 0.3);
    const int alpha = UniformInt(rng, 0, 2);
    const int c = UniformInt(rng, 2 * g.num_groups(), g.size());
    OptResult opt = BruteForceOpt(f, g, CardinalityPredicate(g, alpha, c));
    if (opt.value <= kTol) continue;
    std::vector<int> counts = GroupCounts(opt.set, g);
    if (*std::min_element(counts.begin(), counts.end()) <= 1) continue;
    OracleReport r = VerifyRatio(
        [&](uint64_t s) {
          return suite.cardinality(f, g, alpha, c, SolverConfig{kTheorySamplingRate, s}).value;
        },
        opt.value, kRuns, kThreshold, DeriveSeed(seed, {static_cast<uint64_t>(i)}));
    ratios.push_back(r.mean / opt.value);
    const std::string where = Describe(i, f.label(), g, alpha) + " c " + std::to_string(c);
    t.Check(r.mean >= kThreshold * opt.value, [&] {
      return where + ": mean " + Fmt("%.6g", r.mean) + " < OPT/32 with OPT " +
             Fmt("%.6g", opt.value);
    });
    ++i;
  }
  t.Check(i == kInstances, [&] {
    return "only " + std::to_string(i) + " instances with min_i |OPT_i| > 1";
  });
  t.Note(std::to_string(i) + " instances x " + std::to_string(kRuns) +
         " runs, threshold (1/8)(1/4) = 1/32; raw " + RatioSummary(ratios));
  return t.result();
}

CheckResult EquityRatio(uint64_t seed, const SolverSuite& suite) {
  Tally t("equity_ratio");
  constexpr int kInstances = 10, kEpisodes = 500;
  std::vector<double> ratios;
  int64_t infeasible = 0, episodes = 0;
  int i = 0;
  for (int tries = 0; i < kInstances && tries < 500; ++tries) {
    Rng rng(DeriveSeed(seed, {0x657175ULL, static_cast<uint64_t>(tries)}));
    GroupedGroundSet g = ShuffledGround(rng, RandomSizes(rng, UniformInt(rng, 1, 3), 1, 3));
    if (g.size() > 6) continue;
    FairnessSpec spec;
    spec.alpha = g.size();
    EquityBounds b;
    int low_total = 0;
    for (int k : g.group_sizes()) {
      int lo = UniformInt(rng, 0, k - 1);
      b.low.push_back(lo);
      b.high.push_back(UniformInt(rng, std::max(lo, 1), k));
      low_total += lo;
    }
    const int c = UniformInt(rng, std::max(low_total, 1), g.size());
    spec.equity = b;
    spec.cardinality = c;
    double max_share = 0.0;
    for (int j = 0; j < g.num_groups(); ++j) {
      max_share = std::max(max_share, static_cast<double>(b.low[j]) / g.group_size(j));
    }
    const double threshold = (1.0 - max_share) / 6.0;
    RandomAdaptive ra = MakeRandomAdaptive(rng, g.size(), HashToUnit(rng()) < 0.5);
    double dp = BruteForceAdaptiveOpt(ra.utility, ra.prior, g, EquityPredicate(g, spec));
    if (dp <= kTol) continue;
    OracleReport r = VerifyRatio(
        [&](uint64_t s) {
          PolicyRun run = suite.equity(*ra.instance, g, b, c, AdaptiveConfig{0.5, s});
          ++episodes;
          if (!EquityFeasible(run.set, g, spec)) ++infeasible;
          return run.value;
        },
        dp, kEpisodes, threshold, DeriveSeed(seed, {static_cast<uint64_t>(i)}));
    ratios.push_back(r.mean / dp);
    const std::string where = Describe(i, ra.utility.label, g, 0) + " c " + std::to_string(c);
    t.Check(r.verdict, [&] {
      return where + ": mean " + Fmt("%.6g", r.mean) + " + 3 SE < " +
             Fmt("%.4f", threshold) + " * DP " + Fmt("%.6g", dp);
    });
    ++i;
  }
  t.Check(i == kInstances, [&] { return "only " + std::to_string(i) + " instances"; });
  t.Check(infeasible == 0, [&] {
    return std::to_string(infeasible) + " of " + std::to_string(episodes) +
           " episodes violate equity_feasible";
  });
  t.Note(std::to_string(i) + " instances x " + std::to_string(kEpisodes) + " episodes, " +
         std::to_string(episodes) + " episodes all equity-feasible; " + RatioSummary(ratios));
  return t.result();
}

CheckResult ConditionalSubmodularity(uint64_t seed, int instances, int per_instance) {
  Tally t("conditional_submodularity");
  const EstimatorConfig exact;
  int64_t chains = 0;
  int psis = 0;
  for (int i = 0; i < instances; ++i) {
    Rng rng(DeriveSeed(seed, {0x6c656d32ULL, static_cast<uint64_t>(i)}));
    const int n = UniformInt(rng, 3, 6);
    RandomAdaptive ra = MakeRandomAdaptive(rng, n, i % 2 == 0);
    for (int j = 0; j < per_instance; ++j) {
      PartialRealization psi = SamplePartialRealization(ra.prior, 0.4, rng);
      ItemSet rest;
      for (int e = 0; e < n; ++e) {
        if (!psi.Contains(e)) rest.push_back(e);
      }
      PropertyReport rep = CheckSubmodularExhaustive(
          [&](std::span<const Item> s) {
            return ConditionalValue(ra.utility, psi, s, ra.prior, exact, 0);
          },
          rest);
      chains += rep.checked;
      ++psis;
      t.Check(rep.passed, [&] {
        const ChainWitness& w = *rep.witness;
        return "instance " + std::to_string(i) + " (" + ra.utility.label + ") psi on " +
               SetString(psi.domain()) + ": gain of " + std::to_string(w.e) + " on " +
               SetString(w.y) + " = " + Fmt("%.9g", w.gain_y) + " exceeds gain on " +
               SetString(w.x) + " = " + Fmt("%.9g", w.gain_x);
      });
    }
  }
  t.Note(std::to_string(psis) + " partial realizations, " + std::to_string(chains) +
         " chains, zero violations");
  return t.result();
}

CheckResult RepairInequalities(uint64_t seed, int instances, const SolverSuite& suite) {
  Tally t("repair_inequalities");
  int64_t records = 0, adaptive_records = 0;
  for (int i = 0; i < instances; ++i) {
    Rng rng(DeriveSeed(seed, {0x726570ULL, static_cast<uint64_t>(i)}));
    // Mostly k_min > 1 or k_min = 1 with alpha = 0, where repairs happen.
    std::vector<int> sizes = RandomSizes(rng, UniformInt(rng, 1, 3), 1, 4);
    const int alpha = HashToUnit(rng()) < 0.5 ? 0 : UniformInt(rng, 1, 2);
    GroupedGroundSet g = ShuffledGround(rng, sizes);
    SetObjective f = MakeRandomObjective(rng, g.size(), HashToUnit(rng()) < 0.3);
    const std::string where = Describe(i, f.label(), g, alpha);
    const uint64_t s = DeriveSeed(seed, {static_cast<uint64_t>(i)});
    auto check = [&](const char* solver, const RepairRecord& r) {
      ItemSet ax = r.base, ay = r.base;
      ax.insert(ax.end(), r.x.begin(), r.x.end());
      ay.insert(ay.end(), r.y.begin(), r.y.end());
      const double fa = f(r.base), fx = f(ax), fy = f(ay);
      ++records;
      t.Check(fx + fy >= fa - kTol, [&] {
        return where + " " + solver + ": f(A+X) + f(A+Y) = " + Fmt("%.9g", fx + fy) +
               " < f(A) = " + Fmt("%.9g", fa) + " for A " + SetString(r.base);
      });
    };
    for (PaddingOrder order : {PaddingOrder::kIndex, PaddingOrder::kShuffled, PaddingOrder::kRanked}) {
      SolverConfig cfg{kTheorySamplingRate, s};
      cfg.padding = order;
      for (const RepairRecord& r : suite.group_equality(f, g, alpha, cfg).repairs) check("group_equality", r);
      for (const RepairRecord& r : suite.cardinality(f, g, alpha, g.size(), cfg).repairs) check("cardinality", r);
    }
    if (g.size() <= 8) {
      RandomAdaptive ra = MakeRandomAdaptive(rng, g.size(), HashToUnit(rng()) < 0.5);
      for (PaddingOrder order : {PaddingOrder::kIndex, PaddingOrder::kRanked}) {
        AdaptiveConfig acfg{0.5, s, order};
        PolicyRun run = suite.adaptive(*ra.instance, g, alpha, acfg);
        for (const RepairRecord& r : run.repairs) {
          ++records;
          ++adaptive_records;
          t.Check(r.value_x + r.value_y >= r.base_value - kTol, [&] {
            return where + " adaptive: g(X) + g(Y) = " + Fmt("%.9g", r.value_x + r.value_y) +
                   " < g(empty) = " + Fmt("%.9g", r.base_value);
          });
        }
      }
    }
  }
  t.Check(adaptive_records > 0 && records > adaptive_records,
          [] { return std::string("no repair was exercised"); });
  t.Note(std::to_string(records) + " repairs (" + std::to_string(adaptive_records) +
         " adaptive), all satisfy the inequality");
  return t.result();
}

CheckResult SamplingLemma(uint64_t seed, int instances, int resamples) {
  Tally t("sampling_lemma");
  for (int i = 0; i < instances; ++i) {
    Rng rng(DeriveSeed(seed, {0x73616dULL, static_cast<uint64_t>(i)}));
    const int n = UniformInt(rng, 4, 12);
    SetObjective f = MakeRandomObjective(rng, n, i % 3 == 0);
    ItemSet star;
    for (int tries = 0; tries < 50; ++tries) {
      star = RandomSubset(rng, n, UniformInt(rng, 1, n));
      if (f(star) > kTol) break;
    }
    const double fs = f(star);
    for (double p : {0.25, 0.5, 0.9}) {
      std::vector<double> values;
      values.reserve(resamples);
      for (int r = 0; r < resamples; ++r) {
        std::vector<char> in(n, 0);
        for (Item e : star) in[e] = 1;
        for (int e = 0; e < n; ++e) {
          if (FlipCoin(rng, p)) in[e] = 1;
        }
        ItemSet u;
        for (int e = 0; e < n; ++e) {
          if (in[e]) u.push_back(e);
        }
        values.push_back(f(u));
      }
      MeanEstimate m = Summarize(values);
      t.Check(m.mean + 3 * m.std_error >= (1 - p) * fs - kTol, [&] {
        return "instance " + std::to_string(i) + " (" + f.label() + ") p " + Fmt("%.2f", p) +
               ": mean " + Fmt("%.6g", m.mean) + " + 3 SE < (1 - p) f(S*) = " +
               Fmt("%.6g", (1 - p) * fs);
      });
    }
  }
  t.Note(std::to_string(instances) + " instances x 3 rates x " + std::to_string(resamples) +
         " resamples");
  return t.result();
}

Graph RandomSmallGraph(Rng& rng, int n, int max_edges) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v) pairs.emplace_back(u, v);
    }
  }
  std::shuffle(pairs.begin(), pairs.end(), rng);
  pairs.resize(std::min<size_t>(pairs.size(), UniformInt(rng, 1, max_edges)));
  std::vector<Edge> edges;
  for (auto [u, v] : pairs) edges.push_back({u, v, Uniform(rng, 0.1, 0.9)});
  return Graph(n, std::move(edges));
}

// Active nodes must be the live-edge closure of the selection, and exactly
// the out-edges of active nodes are revealed, with their hidden states.
bool RevealConsistent(const IcObservation& obs, const EdgeRealization& hidden,
                      const Graph& g, std::string& why) {
  EdgeRealization live = hidden;
  std::vector<char> reach(g.num_nodes(), 0);
  ItemSet stack(obs.selected.begin(), obs.selected.end());
  for (Item e : stack) reach[e] = 1;
  while (!stack.empty()) {
    Item u = stack.back();
    stack.pop_back();
    for (int j : g.out_edges(u)) {
      int v = g.edge(j).dst;
      if (live[j] && !reach[v]) {
        reach[v] = 1;
        stack.push_back(v);
      }
    }
  }
  int active = 0;
  for (int u = 0; u < g.num_nodes(); ++u) {
    active += reach[u];
    if (reach[u] != obs.active[u]) {
      why = "node " + std::to_string(u) + " activity differs from the closure";
      return false;
    }
  }
  if (active != obs.num_active ||
      active != Spread(obs.selected, hidden, g)) {
    why = "active count " + std::to_string(obs.num_active) + " vs closure " +
          std::to_string(active);
    return false;
  }
  int observed = 0;
  for (int j = 0; j < g.num_edges(); ++j) {
    const bool should = reach[g.edge(j).src];
    if (should != (obs.edge_state[j] >= 0) ||
        (should && obs.edge_state[j] != hidden[j])) {
      why = "edge " + std::to_string(j) + " state " + std::to_string(obs.edge_state[j]);
      return false;
    }
    observed += should;
  }
  if (observed != obs.num_observed) {
    why = "observed count " + std::to_string(obs.num_observed) + " vs " + std::to_string(observed);
    return false;
  }
  return true;
}

CheckResult IcCorrectness(uint64_t seed, int graphs, int estimate_samples) {
  Tally t("ic_correctness");
  int64_t reveals = 0, paths = 0;
  double worst_z = 0.0;
  for (int i = 0; i < graphs; ++i) {
    Rng rng(DeriveSeed(seed, {0x6963ULL, static_cast<uint64_t>(i)}));
    const int n = UniformInt(rng, 3, 8);
    auto g = std::make_shared<const Graph>(RandomSmallGraph(rng, n, 12));
    ItemSet s = RandomSubset(rng, n, UniformInt(rng, 1, std::min(n, 3)));
    const double exact = IcExactValue(s, *g);
    MeanEstimate est = IcEstimate(s, *g, estimate_samples, rng());
    const double gap = std::abs(est.mean - exact);
    if (est.std_error > 0) worst_z = std::max(worst_z, gap / est.std_error);
    t.Check(gap <= 3 * est.std_error + kTol, [&] {
      return "graph " + std::to_string(i) + " seeds " + SetString(s) + ": estimate " +
             Fmt("%.6g", est.mean) + " vs exact " + Fmt("%.6g", exact) + " (SE " +
             Fmt("%.3g", est.std_error) + ")";
    });

    for (int w = 0; w < 5; ++w) {
      EdgeRealization hidden = WorldRealization(*g, rng());
      IcObservation obs(*g);
      std::vector<int> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      for (int step = 0; step < n; ++step) {
        Item e = order[UniformInt(rng, 0, step)];  // repeats exercise the no-op
        IcObservation before = obs;
        RevealIc(obs, e, hidden, *g);
        std::string why;
        bool ok = RevealConsistent(obs, hidden, *g, why);
        if (ok && std::find(before.selected.begin(), before.selected.end(), e) !=
                      before.selected.end()) {
          ok = before.active == obs.active && before.edge_state == obs.edge_state &&
               before.selected == obs.selected;
          if (!ok) why = "re-selecting " + std::to_string(e) + " changed the observation";
        }
        ++reveals;
        t.Check(ok, [&] { return "graph " + std::to_string(i) + " reveal: " + why; });
      }
    }

    IcAdaptiveInstance inst(g, IcEstimator{true, 0});
    AdaptivePropertyReport rep = CheckAdaptiveSubmodular(inst, 5, rng());
    paths += rep.checked;
    t.Check(rep.passed, [&] { return "graph " + std::to_string(i) + ": " + rep.detail; });
  }
  t.Note(std::to_string(graphs) + " graphs, estimate within " + Fmt("%.2f", worst_z) +
         " SE of exact, " + std::to_string(reveals) + " reveals consistent, " +
         std::to_string(paths) + " adaptive-submodularity comparisons");
  return t.result();
}

double CellMean(const std::vector<ExperimentRow>& rows, const ExperimentRow& key,
                SolverKind solver, int alpha, double p_edge, double* se) {
  for (const ExperimentRow& r : rows) {
    if (r.grouping == key.grouping && r.m == key.m && r.p_edge == p_edge &&
        r.alpha == alpha && r.solver == solver && !r.error) {
      if (se) *se = r.std_error;
      return r.mean_utility;
    }
  }
  throw ContractError("missing experiment cell");
}

ExperimentConfig TrendConfig(uint64_t seed) {
  ExperimentConfig cfg;
  cfg.synthetic.sink_fraction = 0.3;
  cfg.synthetic.popularity = 1.2;
  cfg.graph_seed = seed;
  cfg.seed = seed;
  cfg.m = {3};
  cfg.alpha = {0, 10, 50};
  cfg.p_edge = {0.03, 0.06, 0.1};
  cfg.episodes = 200;
  cfg.runs = 5;
  cfg.rounds = 200;
  cfg.objective_samples = 500;
  cfg.adaptive_samples = 200;
  return cfg;
}

CheckResult ExperimentTrends(uint64_t seed, const SolverSuite&) {
  Tally t("experiment_trends");
  const ExperimentConfig cfg = TrendConfig(seed);
  ExperimentResult res = RunExperiment(cfg);
  for (const ExperimentRow& r : res.rows) {
    t.Check(!r.error && r.feasible, [&] {
      return SolverName(r.solver) + " row at alpha " + std::to_string(r.alpha) +
             (r.error ? " failed: " + *r.error : std::string(" is infeasible"));
    });
  }
  if (!t.result().passed) return t.result();

  int cells = 0, asg_wins = 0, sg_beats = 0, asg_beats = 0, monotone = 0;
  std::string first_trend;
  for (const ExperimentRow& key : res.rows) {
    if (key.solver != SolverKind::kSg) continue;
    ++cells;
    const double sg = CellMean(res.rows, key, SolverKind::kSg, key.alpha, key.p_edge, nullptr);
    const double asg = CellMean(res.rows, key, SolverKind::kAsg, key.alpha, key.p_edge, nullptr);
    asg_wins += asg >= sg;
    sg_beats += sg > CellMean(res.rows, key, SolverKind::kHi, key.alpha, key.p_edge, nullptr);
    asg_beats += asg > CellMean(res.rows, key, SolverKind::kAhi, key.alpha, key.p_edge, nullptr);
    // Next alpha and next p' of the same solver, within 3 combined SE.
    for (SolverKind s : cfg.solvers) {
      double se = 0.0, se2 = 0.0;
      const double mu = CellMean(res.rows, key, s, key.alpha, key.p_edge, &se);
      auto compare = [&](int alpha, double p_edge, const char* axis) {
        const double mu2 = CellMean(res.rows, key, s, alpha, p_edge, &se2);
        ++monotone;
        t.Check(mu2 + 3 * std::sqrt(se * se + se2 * se2) >= mu, [&] {
          return SolverName(s) + " " + GroupingName(key.grouping) + " drops along " +
                 axis + " from alpha " + std::to_string(key.alpha) + " p' " +
                 Fmt("%g", key.p_edge) + ": " + Fmt("%.4g", mu) + " -> " + Fmt("%.4g", mu2);
        });
      };
      auto a = std::find(cfg.alpha.begin(), cfg.alpha.end(), key.alpha);
      if (a + 1 != cfg.alpha.end()) compare(*(a + 1), key.p_edge, "alpha");
      auto p = std::find(cfg.p_edge.begin(), cfg.p_edge.end(), key.p_edge);
      if (p + 1 != cfg.p_edge.end()) compare(key.alpha, *(p + 1), "p'");
    }
  }
  auto share = [&](int k) { return 10 * k >= 7 * cells; };
  t.Check(share(asg_wins), [&] { return "ASG >= SG on only " + std::to_string(asg_wins) + "/" + std::to_string(cells) + " cells"; });
  t.Check(share(sg_beats), [&] { return "SG > HI on only " + std::to_string(sg_beats) + "/" + std::to_string(cells) + " cells"; });
  t.Check(share(asg_beats), [&] { return "ASG > AHI on only " + std::to_string(asg_beats) + "/" + std::to_string(cells) + " cells"; });
  t.Note(std::to_string(res.num_nodes) + " nodes, " + std::to_string(res.num_edges) +
         " edges, " + std::to_string(cells) + " cells; " + std::to_string(monotone) +
         " trend comparisons hold; ASG >= SG " + std::to_string(asg_wins) + ", SG > HI " +
         std::to_string(sg_beats) + ", ASG > AHI " + std::to_string(asg_beats));
  return t.result();
}

ExperimentConfig SmallExperiment(uint64_t seed, int workers) {
  ExperimentConfig cfg;
  cfg.synthetic.nodes = 120;
  cfg.graph_seed = seed;
  cfg.seed = seed;
  cfg.m = {2, 3};
  cfg.alpha = {0, 5};
  cfg.p_edge = {0.05};
  cfg.episodes = 10;
  cfg.runs = 3;
  cfg.rounds = 10;
  cfg.objective_samples = 50;
  cfg.adaptive_samples = 20;
  cfg.workers = workers;
  return cfg;
}

CheckResult Determinism(uint64_t seed, const SolverSuite&) {
  Tally t("determinism");
  const ExperimentConfig cfg = SmallExperiment(seed, 2);
  const std::string a = FormatCsv(RunExperiment(cfg));
  const std::string b = FormatCsv(RunExperiment(cfg));
  t.Check(a == b, [&] {
    size_t k = 0;
    while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
    return "CSV differs at byte " + std::to_string(k);
  });
  const std::string serial = FormatCsv(RunExperiment(SmallExperiment(seed, 1)));
  t.Check(a == serial, [] { return std::string("CSV depends on the worker count"); });
  t.Note(std::to_string(a.size()) + " bytes identical across runs and worker counts");
  return t.result();
}

// ---------------------------------------------------------------------------
// Fast suites.

CheckResult PaddingSuite(uint64_t seed) {
  Tally t("ground.padding");
  for (int i = 0; i < 300; ++i) {
    Rng rng(DeriveSeed(seed, {0x706164ULL, static_cast<uint64_t>(i)}));
    GroupedGroundSet g = ShuffledGround(rng, RandomSizes(rng, UniformInt(rng, 1, 4), 0, 6));
    const int alpha = UniformInt(rng, 0, 3);
    std::vector<int> bound = SemiFeasibleBounds(g, alpha);
    // A random semi-feasible base padded to the bounds is group-equal.
    ItemSet base;
    for (int j = 0; j < g.num_groups(); ++j) {
      auto mem = g.members(j);
      std::vector<Item> pick(mem.begin(), mem.end());
      std::shuffle(pick.begin(), pick.end(), rng);
      pick.resize(UniformInt(rng, 0, bound[j]));
      base.insert(base.end(), pick.begin(), pick.end());
    }
    std::sort(base.begin(), base.end());
    std::vector<double> priority(g.size());
    for (double& v : priority) v = HashToUnit(rng());
    const Padding pads[] = {DisjointPadding(base, g, bound),
                            DisjointPadding(base, g, bound, rng()),
                            RankedDisjointPadding(base, g, bound, priority)};
    for (const Padding& pad : pads) {
      std::vector<int> seen(g.size(), 0);
      for (Item e : base) ++seen[e];
      for (Item e : pad.x) ++seen[e];
      for (Item e : pad.y) ++seen[e];
      t.Check(std::all_of(seen.begin(), seen.end(), [](int c) { return c <= 1; }),
              [&] { return "padding overlaps the base or itself at " + SetString(base); });
      for (const ItemSet* side : {&pad.x, &pad.y}) {
        ItemSet full = base;
        full.insert(full.end(), side->begin(), side->end());
        t.Check(GroupCounts(full, g) == bound, [&] {
          return "completion of " + SetString(base) + " misses the bounds";
        });
        t.Check(IsGroupEqual(full, g, alpha), [&] {
          return "completion " + SetString(full) + " is not group-equal";
        });
      }
    }
    for (int j = 0; j < g.num_groups(); ++j) {
      const int expect = std::min(g.group_size(j) / 2, g.min_group_size() / 2 + alpha);
      t.Check(SemiFeasibleBound(g, alpha, j) == expect,
              [&] { return "semi-feasible bound of group " + std::to_string(j); });
    }
  }
  t.Note("padding disjointness, exact deficits and group equality");
  return t.result();
}

CheckResult ObjectiveSuite(uint64_t seed) {
  Tally t("objective.properties");
  for (int i = 0; i < 60; ++i) {
    Rng rng(DeriveSeed(seed, {0x6f626aULL, static_cast<uint64_t>(i)}));
    const int n = UniformInt(rng, 1, 7);
    const bool monotone = i % 2 == 0;
    SetObjective f = MakeRandomObjective(rng, n, monotone);
    PropertyReport sub = CheckSubmodularExhaustive(f, n);
    t.Check(sub.passed, [&] { return f.label() + " fails exhaustive submodularity"; });
    if (monotone) {
      PropertyReport mono = CheckMonotoneExhaustive(f, n);
      t.Check(mono.passed, [&] { return f.label() + " fails exhaustive monotonicity"; });
    }
    for (int k = 0; k < n; ++k) {
      ItemSet s = RandomSubset(rng, n, UniformInt(rng, 0, n));
      t.Check(f(s) >= -kTol, [&] { return f.label() + " negative on " + SetString(s); });
    }
  }
  t.Note("random objectives submodular, monotone where declared, non-negative");
  return t.result();
}

CheckResult OracleSuite(uint64_t seed) {
  Tally t("oracle.consistency");
  for (int i = 0; i < 40; ++i) {
    Rng rng(DeriveSeed(seed, {0x6f7263ULL, static_cast<uint64_t>(i)}));
    GroupedGroundSet g = ShuffledGround(rng, RandomSizes(rng, UniformInt(rng, 1, 3), 1, 3));
    const int alpha = UniformInt(rng, 0, 2);
    SetObjective f = MakeRandomObjective(rng, g.size(), i % 2 == 0);
    // Restricting the feasible family never raises the optimum.
    const double any = BruteForceOpt(f, g, AnySet()).value;
    const double eq = BruteForceOpt(f, g, GroupEqualPredicate(g, alpha)).value;
    const double card = BruteForceOpt(f, g, CardinalityPredicate(g, alpha, g.size() / 2)).value;
    t.Check(any + kTol >= eq && eq + kTol >= card, [&] {
      return "instance " + std::to_string(i) + ": optima not nested";
    });
    if (g.size() <= 6) {
      RandomAdaptive ra = MakeRandomAdaptive(rng, g.size(), i % 2 == 0);
      auto pred = GroupEqualPredicate(g, alpha);
      const double dp = BruteForceAdaptiveOpt(ra.utility, ra.prior, g, pred);
      const double fixed = BestFixedSetValue(ra.utility, ra.prior, g, pred).value;
      t.Check(dp + kTol >= fixed, [&] {
        return "instance " + std::to_string(i) + ": adaptive optimum " + Fmt("%.9g", dp) +
               " below the best fixed set " + Fmt("%.9g", fixed);
      });
    }
  }
  t.Note("optima nested under restriction; adaptive optimum dominates fixed sets");
  return t.result();
}

CheckResult SolverDeterminism(uint64_t seed, const SolverSuite& suite) {
  Tally t("solvers.determinism");
  for (int i = 0; i < 50; ++i) {
    Rng rng(DeriveSeed(seed, {0x646574ULL, static_cast<uint64_t>(i)}));
    RandomInstance ri = MakeRandomInstance(rng, 10, 3);
    const int alpha = UniformInt(rng, 0, 2);
    const SolverConfig cfg{kTheorySamplingRate, rng()};
    Solution a = suite.group_equality(ri.objective, ri.ground, alpha, cfg);
    Solution b = suite.group_equality(ri.objective, ri.ground, alpha, cfg);
    t.Check(a.set == b.set && a.branch == b.branch,
            [&] { return "group_equality differs across identical runs"; });
    RandomAdaptive ra = MakeRandomAdaptive(rng, ri.ground.size(), false);
    const AdaptiveConfig acfg{0.5, rng()};
    PolicyRun pa = suite.adaptive(*ra.instance, ri.ground, alpha, acfg);
    PolicyRun pb = suite.adaptive(*ra.instance, ri.ground, alpha, acfg);
    t.Check(pa.selections == pb.selections && pa.value == pb.value,
            [&] { return "adaptive differs across identical episodes"; });
  }
  t.Note("identical seeds reproduce sets, branches and episode values");
  return t.result();
}

}  // namespace

const std::vector<Criterion>& AcceptanceCriteria() {
  static const std::vector<Criterion> criteria = {
      {1, "feasibility",
       [](uint64_t seed, const SolverSuite& s) { return FeasibilitySweep("feasibility", 1000, seed, s); }},
      {2, "group_equality_ratio", GroupEqualityRatio},
      {3, "adaptive_ratio", AdaptiveRatio},
      {4, "cardinality_ratio", CardinalityRatio},
      {5, "equity_ratio", EquityRatio},
      {6, "conditional_submodularity",
       [](uint64_t seed, const SolverSuite&) { return ConditionalSubmodularity(seed, 10, 5); }},
      {7, "repair_inequalities",
       [](uint64_t seed, const SolverSuite& s) { return RepairInequalities(seed, 300, s); }},
      {8, "sampling_lemma",
       [](uint64_t seed, const SolverSuite&) { return SamplingLemma(seed, 10, 1000); }},
      {9, "ic_correctness",
       [](uint64_t seed, const SolverSuite&) { return IcCorrectness(seed, 10, 20000); }},
      {10, "experiment_trends", ExperimentTrends},
      {11, "determinism", Determinism},
  };
  return criteria;
}

CheckResult RunCriterion(const Criterion& c, uint64_t seed, const SolverSuite& suite) {
  CheckResult r = Timed([&] { return c.run(seed, suite); });
  r.name = "criterion " + std::to_string(c.id) + " " + r.name;
  return r;
}

CheckSummary RunChecks(CheckLevel level, uint64_t seed, const SolverSuite& suite) {
  CheckSummary out;
  auto add = [&](auto&& body) { out.results.push_back(Timed(body)); };
  add([&] { return PaddingSuite(seed); });
  add([&] { return ObjectiveSuite(seed); });
  add([&] { return FeasibilitySweep("solvers.feasibility", 150, seed, suite); });
  add([&] { return RepairInequalities(seed, 40, suite); });
  add([&] { return SolverDeterminism(seed, suite); });
  add([&] { return ConditionalSubmodularity(seed, 4, 3); });
  add([&] { return SamplingLemma(seed, 4, 300); });
  add([&] { return IcCorrectness(seed, 4, 4000); });
  add([&] { return OracleSuite(seed); });
  if (level == CheckLevel::kFull) {
    for (const Criterion& c : AcceptanceCriteria()) {
      out.results.push_back(RunCriterion(c, seed, suite));
    }
  }
  return out;
}

}  // namespace fairsub
