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

// Property suites and acceptance criteria. Each suite runs solvers through a
// SolverSuite so a broken variant can be swapped in and caught.

#ifndef FAIRSUB_CHECKS_H_
#define FAIRSUB_CHECKS_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fairsub/adaptive.h"
#include "fairsub/ground.h"
#include "fairsub/nonadaptive.h"
#include "fairsub/objective.h"
#include "fairsub/random.h"

namespace fairsub {

struct SolverSuite {
  std::function<Solution(const SetObjective&, const GroupedGroundSet&, int,
                         const SolverConfig&)>
      group_equality;
  std::function<Solution(const SetObjective&, const GroupedGroundSet&, int, int,
                         const SolverConfig&)>
      cardinality;
  std::function<Solution(const SetObjective&, const GroupedGroundSet&, int,
                         std::optional<int>, uint64_t)>
      monotone;
  std::function<Solution(const SetObjective&, const GroupedGroundSet&, int,
                         double, uint64_t)>
      hi;
  std::function<PolicyRun(const AdaptiveInstance&, const GroupedGroundSet&, int,
                          const AdaptiveConfig&)>
      adaptive;
  std::function<PolicyRun(const AdaptiveInstance&, const GroupedGroundSet&, int,
                          const AdaptiveConfig&)>
      monotone_adaptive;
  std::function<PolicyRun(const AdaptiveInstance&, const GroupedGroundSet&,
                          const EquityBounds&, int, const AdaptiveConfig&)>
      equity;
  std::function<PolicyRun(const AdaptiveInstance&, const GroupedGroundSet&, int,
                          const AdaptiveConfig&)>
      ahi;

  static SolverSuite Default();
};

struct CheckResult {
  std::string name;
  bool passed = true;
  int64_t checked = 0;
  // First violation on failure; measured values otherwise.
  std::string detail;
  double seconds = 0.0;
};

struct CheckSummary {
  std::vector<CheckResult> results;
  bool passed() const;
  std::string ToJson() const;
  // One "PASS name (checked) detail" line per result.
  std::string ToText() const;
};

enum class CheckLevel { kFast, kFull };

// Fast: feasibility and algebraic-identity suites of every module. Full adds
// the acceptance criteria.
CheckSummary RunChecks(CheckLevel level, uint64_t seed,
                       const SolverSuite& suite = SolverSuite::Default());

struct Criterion {
  int id;
  std::string name;
  std::function<CheckResult(uint64_t seed, const SolverSuite&)> run;
};
const std::vector<Criterion>& AcceptanceCriteria();
// Runs one criterion, timed, named "criterion <id> <name>".
CheckResult RunCriterion(const Criterion& c, uint64_t seed,
                         const SolverSuite& suite = SolverSuite::Default());

// Random small instances shared by the suites and the tests.
struct RandomInstance {
  GroupedGroundSet ground;
  SetObjective objective;
  std::string kind;
};
// n in [1, max_n], m in [1, max_m]; groups may be empty.
RandomInstance MakeRandomInstance(Rng& rng, int max_n, int max_m);
// Groups of exactly the given sizes, items shuffled across groups.
RandomInstance MakeRandomInstanceWithSizes(Rng& rng, std::vector<int> sizes);
SetObjective MakeRandomObjective(Rng& rng, int n, bool monotone);

struct RandomAdaptive {
  std::shared_ptr<TabularInstance> instance;
  StatePrior prior;
  AdaptiveObjective utility;
};
// Binary states with independent priors; pair coverage (monotone) or pair
// overlap (non-monotone) utility. Exact estimation unless mc_samples > 0.
RandomAdaptive MakeRandomAdaptive(Rng& rng, int n, bool monotone,
                                  int mc_samples = 0);

}  // namespace fairsub

#endif  // FAIRSUB_CHECKS_H_
