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

// Non-adaptive solvers for submodular maximization under group equality,
// optionally with a global cardinality bound.

#ifndef FAIRSUB_NONADAPTIVE_H_
#define FAIRSUB_NONADAPTIVE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairsub/greedy.h"
#include "fairsub/ground.h"
#include "fairsub/objective.h"

namespace fairsub {

// (sqrt(5) - 1) / 4, the sampling rate the 0.045 guarantee is proved for.
inline constexpr double kTheorySamplingRate = 0.30901699437494742;
// Sampling rate used in the influence experiments.
inline constexpr double kExperimentSamplingRate = 0.9;

// How the two disjoint completions are drawn from the spare items of each
// group: index order, a seeded shuffle, or ranked by current marginal gain.
// Any disjoint choice keeps the repair guarantees.
enum class PaddingOrder { kIndex, kShuffled, kRanked };

struct SolverConfig {
  double p = kTheorySamplingRate;
  uint64_t seed = 0;
  // Independent randomized runs; the best feasible (post-repair) one is kept.
  int repeats = 1;
  // Matroid subroutine: coin-flip greedy repeated `subroutine_rounds` times
  // at success rate `subroutine_p`.
  int subroutine_rounds = 4;
  double subroutine_p = 0.5;
  PaddingOrder padding = PaddingOrder::kIndex;
};

// One completion step: base set A padded by disjoint X or Y.
struct RepairRecord {
  ItemSet base;
  ItemSet x;
  ItemSet y;
  double base_value = 0.0;
  double value_x = 0.0;
  double value_y = 0.0;
  bool chose_x = true;
};

struct Solution {
  ItemSet set;
  double value = 0.0;  // f(set), re-evaluated on return
  std::vector<GreedyStep> trace;
  std::string branch;
  std::vector<RepairRecord> repairs;
  double p_used = 0.0;
};

// Coin-flip greedy with per-group caps `bound`.
Solution SamplingGreedy(const SetObjective& f, const GroupedGroundSet& ground,
                        std::span<const int> bound, double p, uint64_t seed);

// Pads a semi-feasible `base` up to the semi-feasibility bound of every group
// with two disjoint completions and keeps the better one (the first on ties).
Solution RepairToFeasible(std::span<const Item> base, const SetObjective& f,
                          const GroupedGroundSet& ground, int alpha,
                          std::optional<uint64_t> shuffle_seed = std::nullopt);

// Group-equality maximization, dispatching on k_min:
//   k_min > 1  semi-feasible sampling greedy then repair;
//   k_min = 0  matroid subroutine with caps alpha;
//   k_min = 1  best of the two guesses min_i |OPT_i| in {0, 1}.
Solution SolveGroupEquality(const SetObjective& f,
                            const GroupedGroundSet& ground, int alpha,
                            const SolverConfig& cfg);

struct MatroidOptions {
  double p = 0.5;
  int rounds = 4;
  uint64_t seed = 0;
  // Items treated as already present: the subroutine maximizes
  // f(. ∪ forced) over items outside `forced`. Not part of the output.
  ItemSet forced;
};

// Best of `rounds` coin-flip greedy runs under an independence predicate on
// group counts. Spot-checks that the predicate is downward closed and throws
// ContractError if it is not.
ItemSet MatroidSubroutine(const SetObjective& f,
                          const CountPredicate& independent,
                          const GroupedGroundSet& ground,
                          const MatroidOptions& options);

// Group equality plus |S| <= c: enumerates z in [1, min_j floor(k_j / 2)] over
// the floor-budget relaxation, plus the min_i |OPT_i| in {0, 1} guesses, and
// keeps the best feasible output.
Solution SolveWithCardinality(const SetObjective& f,
                              const GroupedGroundSet& ground, int alpha,
                              int cardinality, const SolverConfig& cfg);

// Monotone objectives. Without a cardinality bound: every smallest group in
// full plus plain greedy with caps k_min + alpha elsewhere. With one: plain
// greedy over the floor-budget matroid for each z' in [0, k_min], padded to
// z'. Throws ContractError if the objective is not monotone (declared or
// sampled).
Solution MonotoneSolve(const SetObjective& f, const GroupedGroundSet& ground,
                       int alpha, std::optional<int> cardinality = std::nullopt,
                       uint64_t seed = 0);

// Per-group targets max{counts_i, max_j counts_j - alpha}: the least lift
// that restores group equality without touching the largest group.
std::vector<int> MinimalEqualityTargets(std::span<const int> counts,
                                        int alpha);

// Adds the lowest-index spare items of each group until it reaches its
// target. Throws InfeasibleError when a group runs out of items.
ItemSet PadInIndexOrder(std::span<const Item> set,
                        const GroupedGroundSet& ground,
                        std::span<const int> target);

// Groups of the given size, and all of their items.
std::vector<int> GroupsOfSize(const GroupedGroundSet& ground, int size);
ItemSet ItemsOfGroups(const GroupedGroundSet& ground,
                      std::span<const int> groups);

// Throws ContractError unless f is declared monotone or passes a sampled
// monotonicity check.
void RequireMonotone(const SetObjective& f, uint64_t seed);

}  // namespace fairsub

#endif  // FAIRSUB_NONADAPTIVE_H_
