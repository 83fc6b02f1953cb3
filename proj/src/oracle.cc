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

#include "fairsub/oracle.h"

#include <algorithm>
#include <map>

#include "fairsub/errors.h"
#include "fairsub/random.h"
#include "fairsub/stats.h"

namespace fairsub {
namespace {

ItemSet MaskItems(uint32_t mask, int n) {
  ItemSet s;
  for (int e = 0; e < n; ++e) {
    if (mask >> e & 1u) s.push_back(e);
  }
  return s;
}

// Strictly better under the tie rule.
bool Better(double value, const ItemSet& set, double best_value,
            const ItemSet& best) {
  if (value != best_value) return value > best_value;
  if (set.size() != best.size()) return set.size() < best.size();
  return set < best;
}

class AdaptiveDp {
 public:
  AdaptiveDp(const AdaptiveObjective& f, std::vector<WeightedRealization> support,
             int n, const SetPredicate& feasible)
      : f_(f), support_(std::move(support)), n_(n), feasible_(feasible) {
    for (const WeightedRealization& w : support_) {
      for (State s : w.states) radix_ = std::max<uint64_t>(radix_, s + 1);
    }
  }

  std::optional<double> Solve() {
    std::vector<int> all(support_.size());
    for (size_t k = 0; k < all.size(); ++k) all[k] = static_cast<int>(k);
    return Value(0, 0, all);
  }

 private:
  // `code` packs the states of the selected items in base `radix_`.
  std::optional<double> Value(uint32_t mask, uint64_t code,
                              const std::vector<int>& members) {
    auto key = std::make_pair(mask, code);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    double mass = 0.0;
    for (int k : members) mass += support_[k].probability;
    ItemSet set = MaskItems(mask, n_);
    std::optional<double> best;
    if (feasible_(set)) {
      double stop = 0.0;
      for (int k : members) {
        stop += support_[k].probability * f_(set, support_[k].states);
      }
      best = stop / mass;
    }
    uint64_t place = 1;
    for (int e = 0; e < n_; ++e, place *= radix_) {
      if (mask >> e & 1u) continue;
      std::map<State, std::vector<int>> split;
      for (int k : members) split[support_[k].states[e]].push_back(k);
      double total = 0.0;
      bool dead = false;
      for (const auto& [s, part] : split) {
        double part_mass = 0.0;
        for (int k : part) part_mass += support_[k].probability;
        std::optional<double> next =
            Value(mask | 1u << e, code + static_cast<uint64_t>(s) * place, part);
        if (!next) {
          dead = true;
          break;
        }
        total += part_mass / mass * *next;
      }
      if (!dead && (!best || total > *best)) best = total;
    }
    memo_[key] = best;
    return best;
  }

  const AdaptiveObjective& f_;
  std::vector<WeightedRealization> support_;
  int n_;
  const SetPredicate& feasible_;
  uint64_t radix_ = 1;
  std::map<std::pair<uint32_t, uint64_t>, std::optional<double>> memo_;
};

void CheckAdaptiveOracleSize(const StatePrior& prior,
                             const GroupedGroundSet& ground) {
  if (prior.ground_size() != ground.size()) {
    throw InputError("prior and ground set sizes differ");
  }
  if (ground.size() > kMaxAdaptiveOracleItems) {
    throw CapabilityError("adaptive oracle supports at most 8 items");
  }
  if (!prior.enumerable(kMaxAdaptiveOracleSupport)) {
    throw CapabilityError("adaptive oracle needs an enumerable prior with at "
                          "most 4096 realizations");
  }
}

}  // namespace

SetPredicate AnySet() {
  return [](std::span<const Item>) { return true; };
}

SetPredicate GroupEqualPredicate(const GroupedGroundSet& ground, int alpha) {
  return [ground, alpha](std::span<const Item> s) {
    return IsGroupEqual(s, ground, alpha);
  };
}

SetPredicate CardinalityPredicate(const GroupedGroundSet& ground, int alpha,
                                  int cardinality) {
  return [ground, alpha, cardinality](std::span<const Item> s) {
    return static_cast<int>(s.size()) <= cardinality &&
           IsGroupEqual(s, ground, alpha);
  };
}

SetPredicate EquityPredicate(const GroupedGroundSet& ground,
                             const FairnessSpec& spec) {
  return [ground, spec](std::span<const Item> s) {
    return EquityFeasible(s, ground, spec);
  };
}

OptResult BruteForceOpt(const SetObjective& f, const GroupedGroundSet& ground,
                        const SetPredicate& feasible) {
  const int n = ground.size();
  if (n > kMaxBruteForceItems) {
    throw CapabilityError("brute force supports at most 20 items, got " +
                          std::to_string(n));
  }
  std::optional<OptResult> best;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    ItemSet s = MaskItems(mask, n);
    if (!feasible(s)) continue;
    double v = f.Evaluate(s);
    if (!best || Better(v, s, best->value, best->set)) best = OptResult{s, v};
  }
  if (!best) throw InfeasibleError("no feasible subset");
  return *best;
}

double BruteForceAdaptiveOpt(const AdaptiveObjective& f,
                             const StatePrior& prior,
                             const GroupedGroundSet& ground,
                             const SetPredicate& feasible) {
  CheckAdaptiveOracleSize(prior, ground);
  AdaptiveDp dp(f, prior.Support(kMaxAdaptiveOracleSupport), ground.size(),
                feasible);
  std::optional<double> v = dp.Solve();
  if (!v) throw InfeasibleError("no policy reaches a feasible set");
  return *v;
}

OptResult BestFixedSetValue(const AdaptiveObjective& f, const StatePrior& prior,
                            const GroupedGroundSet& ground,
                            const SetPredicate& feasible) {
  CheckAdaptiveOracleSize(prior, ground);
  std::vector<WeightedRealization> support =
      prior.Support(kMaxAdaptiveOracleSupport);
  const int n = ground.size();
  std::optional<OptResult> best;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    ItemSet s = MaskItems(mask, n);
    if (!feasible(s)) continue;
    double v = 0.0;
    for (const WeightedRealization& w : support) {
      v += w.probability * f(s, w.states);
    }
    if (!best || Better(v, s, best->value, best->set)) best = OptResult{s, v};
  }
  if (!best) throw InfeasibleError("no feasible subset");
  return *best;
}

OracleReport VerifyRatio(const std::function<double(uint64_t)>& solver,
                         double optimum, int runs, double threshold,
                         uint64_t seed, std::string instance) {
  if (runs < 30) throw InputError("ratio verification needs at least 30 runs");
  OracleReport r;
  r.instance = std::move(instance);
  r.optimum = optimum;
  r.threshold = threshold;
  r.values.reserve(runs);
  for (int i = 0; i < runs; ++i) {
    r.values.push_back(solver(DeriveSeed(seed, {static_cast<uint64_t>(i)})));
  }
  MeanEstimate est = Summarize(r.values);
  r.mean = est.mean;
  r.std_error = est.std_error;
  if (optimum > 0.0) r.ratio = r.mean / optimum;
  r.verdict = r.mean + 3.0 * r.std_error >= threshold * optimum;
  return r;
}

}  // namespace fairsub
