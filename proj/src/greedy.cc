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

#include "fairsub/greedy.h"

#include <algorithm>
#include <limits>

namespace fairsub {

CountPredicate CapsPredicate(std::vector<int> caps) {
  return [caps = std::move(caps)](std::span<const int> counts) {
    for (size_t i = 0; i < caps.size(); ++i) {
      if (counts[i] > caps[i]) return false;
    }
    return true;
  };
}

CountPredicate FloorBudgetPredicate(std::vector<int> caps,
                                    std::vector<int> floors, int budget) {
  return [caps = std::move(caps), floors = std::move(floors),
          budget](std::span<const int> counts) {
    long total = 0;
    for (size_t i = 0; i < caps.size(); ++i) {
      if (counts[i] > caps[i]) return false;
      total += std::max(floors[i], counts[i]);
    }
    return total <= budget;
  };
}

GreedyResult RunCoinFlipGreedy(GainSource& source,
                               const GroupedGroundSet& ground,
                               std::span<const Item> pool,
                               const CountPredicate& independent,
                               std::vector<int> counts, double p, Rng& rng) {
  GreedyResult result;
  const bool lazy = source.diminishing();
  std::vector<Item> open(pool.begin(), pool.end());
  std::vector<Item> eligible;
  std::vector<double> gains;
  // Gains only change after a commit, so a lost coin flip reuses them. In
  // lazy mode `cached` holds upper bounds until refreshed.
  bool stale = true;
  std::vector<double> cached(ground.size(),
                             std::numeric_limits<double>::infinity());
  std::vector<char> fresh(ground.size(), 0);

  while (true) {
    eligible.clear();
    for (Item e : open) {
      int g = ground.group_of(e);
      ++counts[g];
      bool ok = independent(counts);
      --counts[g];
      if (ok) eligible.push_back(e);
    }
    if (eligible.empty()) break;
    if (stale && !lazy) {
      gains.resize(eligible.size());
      source.Gains(eligible, gains);
      for (size_t k = 0; k < eligible.size(); ++k) cached[eligible[k]] = gains[k];
    }
    stale = false;
    Item best = -1;
    double best_gain = 0.0;
    while (true) {
      best = -1;
      for (Item e : eligible) {
        if (best == -1 || cached[e] > best_gain) {
          best = e;
          best_gain = cached[e];
        }
      }
      if (!lazy || fresh[best]) break;
      double g = 0.0;
      source.Gains({&best, 1}, {&g, 1});
      cached[best] = g;
      fresh[best] = 1;
    }
    if (!(best_gain > 0.0)) break;

    open.erase(std::find(open.begin(), open.end(), best));
    if (FlipCoin(rng, p)) {
      source.Commit(best);
      ++counts[ground.group_of(best)];
      result.selected.push_back(best);
      result.trace.push_back({best, best_gain});
      stale = true;
      std::fill(fresh.begin(), fresh.end(), 0);
    } else {
      result.skipped.push_back(best);
    }
  }
  return result;
}

}  // namespace fairsub
