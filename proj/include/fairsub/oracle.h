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

// Exhaustive ground truth for small instances: the best feasible set, the
// value of the best feasible adaptive policy, and ratio verdicts.

#ifndef FAIRSUB_ORACLE_H_
#define FAIRSUB_ORACLE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairsub/adaptive.h"
#include "fairsub/ground.h"
#include "fairsub/objective.h"

namespace fairsub {

using SetPredicate = std::function<bool(std::span<const Item>)>;

SetPredicate AnySet();
SetPredicate GroupEqualPredicate(const GroupedGroundSet& ground, int alpha);
SetPredicate CardinalityPredicate(const GroupedGroundSet& ground, int alpha,
                                  int cardinality);
SetPredicate EquityPredicate(const GroupedGroundSet& ground,
                             const FairnessSpec& spec);

struct OptResult {
  ItemSet set;
  double value = 0.0;
};

inline constexpr int kMaxBruteForceItems = 20;
inline constexpr int kMaxAdaptiveOracleItems = 8;
inline constexpr size_t kMaxAdaptiveOracleSupport = 4096;

// Best feasible set; ties go to the smaller set, then the lexicographically
// smaller one. CapabilityError above 20 items, InfeasibleError if nothing is
// feasible.
OptResult BruteForceOpt(const SetObjective& f, const GroupedGroundSet& ground,
                        const SetPredicate& feasible);

// Value of the optimal policy that may stop only at feasible sets, by
// memoized recursion over (selected set, observed states). Needs n <= 8 and
// support <= 4096.
double BruteForceAdaptiveOpt(const AdaptiveObjective& f,
                             const StatePrior& prior,
                             const GroupedGroundSet& ground,
                             const SetPredicate& feasible);

// max over feasible S of E[f(S, Phi)]: the best policy that ignores
// feedback.
OptResult BestFixedSetValue(const AdaptiveObjective& f, const StatePrior& prior,
                            const GroupedGroundSet& ground,
                            const SetPredicate& feasible);

struct OracleReport {
  std::string instance;
  double optimum = 0.0;
  ItemSet witness;  // empty for adaptive optima
  double mean = 0.0;
  double std_error = 0.0;
  std::optional<double> ratio;  // mean / optimum when optimum > 0
  double threshold = 0.0;
  bool verdict = false;  // mean + 3 SE >= threshold * optimum
  std::vector<double> values;
};

// Runs the randomized solver `runs` (>= 30) times with seeds
// DeriveSeed(seed, {r}).
OracleReport VerifyRatio(const std::function<double(uint64_t)>& solver,
                         double optimum, int runs, double threshold,
                         uint64_t seed, std::string instance = "");

}  // namespace fairsub

#endif  // FAIRSUB_ORACLE_H_
