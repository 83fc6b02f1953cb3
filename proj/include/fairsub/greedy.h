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

// The coin-flip-at-consideration greedy shared by the non-adaptive and the
// adaptive solvers. Each step takes the eligible, not yet considered item of
// largest strictly positive gain (lowest index on ties) and flips a coin of
// success p: heads selects it, tails discards it for the rest of the run.

#ifndef FAIRSUB_GREEDY_H_
#define FAIRSUB_GREEDY_H_

#include <functional>
#include <span>
#include <vector>

#include "fairsub/ground.h"
#include "fairsub/random.h"

namespace fairsub {

class GainSource {
 public:
  virtual ~GainSource() = default;
  // Gains of adding each candidate on top of the current selection.
  virtual void Gains(std::span<const Item> candidates,
                     std::span<double> out) = 0;
  virtual void Commit(Item e) = 0;
  // True when gains never grow as the selection grows, so stale values are
  // upper bounds and the greedy can refresh them lazily. Lazy and eager
  // scans then pick the same item.
  virtual bool diminishing() const { return false; }
};

// Independence test on per-group counts of the selection.
using CountPredicate = std::function<bool(std::span<const int> counts)>;

CountPredicate CapsPredicate(std::vector<int> caps);
// counts_i <= floor + slack and sum_i max{floor, counts_i} <= budget; the
// laminar matroid used for the cardinality and equity relaxations.
CountPredicate FloorBudgetPredicate(std::vector<int> caps,
                                    std::vector<int> floors, int budget);

struct GreedyStep {
  Item item = -1;
  double gain = 0.0;
};

struct GreedyResult {
  ItemSet selected;
  std::vector<GreedyStep> trace;
  ItemSet skipped;  // considered but lost the coin flip
};

// Seed of the coin flips of randomized run `run` of a solver seeded `seed`.
inline uint64_t RunSeed(uint64_t seed, int run) {
  return DeriveSeed(seed, {0x72756eULL, static_cast<uint64_t>(run)});
}

// `pool` must be sorted ascending. `counts` holds the starting per-group
// counts seen by `independent` (usually zeros).

GreedyResult RunCoinFlipGreedy(GainSource& source,
                               const GroupedGroundSet& ground,
                               std::span<const Item> pool,
                               const CountPredicate& independent,
                               std::vector<int> counts, double p, Rng& rng);

}  // namespace fairsub

#endif  // FAIRSUB_GREEDY_H_
