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

// Adaptive instances and policies. Every item has a random state; a policy
// selects items one at a time and observes the state of each pick before
// choosing the next. An AdaptiveInstance produces Episodes: one hidden
// realization plus an estimator of conditional expectations given what has
// been observed so far.

#ifndef FAIRSUB_ADAPTIVE_H_
#define FAIRSUB_ADAPTIVE_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fairsub/greedy.h"
#include "fairsub/ground.h"
#include "fairsub/nonadaptive.h"
#include "fairsub/random.h"
#include "fairsub/stats.h"

namespace fairsub {

using State = int;
// Full realization: the state of every item.
using Realization = std::vector<State>;

class PartialRealization {
 public:
  PartialRealization() = default;
  explicit PartialRealization(int n) : state_(n, -1) {}

  int ground_size() const { return static_cast<int>(state_.size()); }
  // Throws ContractError on a conflicting re-observation.
  void Observe(Item e, State s);
  bool Contains(Item e) const { return state_[e] >= 0; }
  std::optional<State> StateOf(Item e) const;
  // Observed items in observation order.
  std::span<const Item> domain() const { return order_; }
  bool ConsistentWith(std::span<const State> phi) const;
  // True when every observation of *this also appears in `other`.
  bool SubrealizationOf(const PartialRealization& other) const;

 private:
  std::vector<State> state_;
  ItemSet order_;
};

struct WeightedRealization {
  Realization states;
  double probability = 0.0;
};

class StatePrior {
 public:
  enum class Kind { kEnumerated, kIndependent, kGenerative };
  using Sampler = std::function<Realization(Rng&)>;
  using ConditionalSampler =
      std::function<Realization(const PartialRealization&, Rng&)>;

  // Probabilities must sum to 1 within 1e-9; zero-probability entries are
  // dropped.
  static StatePrior Enumerated(int n, std::vector<WeightedRealization> support);
  // dist[e][s] = Pr(state of e = s), each row summing to 1 within 1e-9.
  static StatePrior Independent(std::vector<std::vector<double>> dist);
  static StatePrior Generative(int n, Sampler sample,
                               ConditionalSampler conditional);
  // Single realization with probability one.
  static StatePrior Deterministic(Realization phi);

  Kind kind() const { return kind_; }
  int ground_size() const { return n_; }
  // Size of the full support, or nullopt for generative priors.
  std::optional<double> support_size() const;
  bool enumerable(size_t max_support) const;
  // Throws CapabilityError for generative priors or oversized support.
  std::vector<WeightedRealization> Support(size_t max_support) const;
  Realization Sample(Rng& rng) const;
  Realization SampleConditional(const PartialRealization& psi, Rng& rng) const;
  // Pr(state of e = s) for independent priors.
  const std::vector<std::vector<double>>& marginals() const { return dist_; }

 private:
  Kind kind_ = Kind::kEnumerated;
  int n_ = 0;
  std::vector<WeightedRealization> support_;
  std::vector<double> cumulative_;
  std::vector<std::vector<double>> dist_;
  Sampler sample_;
  ConditionalSampler conditional_;
};

// f(S, phi) >= 0, deterministic.
struct AdaptiveObjective {
  using Fn = std::function<double(std::span<const Item>, std::span<const State>)>;
  Fn fn;
  std::optional<bool> monotone_hint;
  std::string label = "custom";

  double operator()(std::span<const Item> set,
                    std::span<const State> phi) const {
    return fn(set, phi);
  }
};

// f(S, phi) = sum_{e in S} value[e][phi(e)].
AdaptiveObjective MakeAdditiveUtility(std::vector<std::vector<double>> value);
// max_{e in S} value[e][phi(e)], 0 on the empty set.
AdaptiveObjective MakeMaxUtility(std::vector<std::vector<double>> value);
// covers[e][s] lists the universe elements covered by item e in state s; the
// value is the weight of everything covered by the observed pairs.
AdaptiveObjective MakePairCoverageUtility(
    std::vector<std::vector<std::vector<int>>> covers,
    std::vector<double> element_weights = {});
// sum_u w_u c_u (K_u - c_u), where c_u counts items of S whose observed pair
// covers u and K_u counts items that cover u in some state. Non-monotone.
AdaptiveObjective MakePairOverlapUtility(
    std::vector<std::vector<std::vector<int>>> covers,
    std::vector<double> element_weights = {});

struct EstimatorConfig {
  bool exact = true;
  int samples = 1000;
  size_t max_support = size_t{1} << 16;
};

// Delta(e | psi). Exact mode enumerates the realizations consistent with psi;
// sampling mode averages `cfg.samples` conditional draws.
double ConditionalMarginal(const AdaptiveObjective& f, Item e,
                           const PartialRealization& psi,
                           const StatePrior& prior, const EstimatorConfig& cfg,
                           uint64_t seed);
// g_psi(S) = E[f(dom(psi) ∪ S, Phi) | Phi consistent with psi].
double ConditionalValue(const AdaptiveObjective& f,
                        const PartialRealization& psi,
                        std::span<const Item> set, const StatePrior& prior,
                        const EstimatorConfig& cfg, uint64_t seed);

// One policy execution against a hidden realization. Gains are Delta(e | psi)
// for the current observations; Commit selects an item and reveals its state.
class Episode : public GainSource {
 public:
  // g_psi(extra) for the current psi.
  virtual double ConditionalValue(std::span<const Item> extra) = 0;
  // f(selected, phi) under the hidden realization.
  virtual double RealizedValue() = 0;
  virtual const ItemSet& selected() const = 0;
  // Exact estimates (rather than Monte Carlo).
  virtual bool exact() const = 0;
  // Number of observed item or edge states.
  virtual int observations() const = 0;
};

class AdaptiveInstance {
 public:
  virtual ~AdaptiveInstance() = default;
  virtual int ground_size() const = 0;
  // The hidden realization is a function of `seed` alone, so two policies
  // run with the same seed face the same world.
  virtual std::unique_ptr<Episode> NewEpisode(uint64_t seed) const = 0;
  virtual std::optional<bool> monotone_hint() const = 0;
  virtual std::string label() const = 0;
};

// Tabular instance: explicit prior and utility.
class TabularInstance : public AdaptiveInstance {
 public:
  TabularInstance(StatePrior prior, AdaptiveObjective f,
                  EstimatorConfig estimator = {});

  int ground_size() const override { return prior_.ground_size(); }
  std::unique_ptr<Episode> NewEpisode(uint64_t seed) const override;
  std::optional<bool> monotone_hint() const override {
    return f_.monotone_hint;
  }
  std::string label() const override { return f_.label; }

  const StatePrior& prior() const { return prior_; }
  const AdaptiveObjective& objective() const { return f_; }
  const EstimatorConfig& estimator() const { return estimator_; }

 private:
  StatePrior prior_;
  AdaptiveObjective f_;
  EstimatorConfig estimator_;
  std::shared_ptr<const std::vector<WeightedRealization>> support_;
};

struct AdaptiveConfig {
  double p = 0.5;
  uint64_t seed = 0;  // episode seed: hidden world and coin flips
  // Ranked padding orders spare items by Delta(e | psi).
  PaddingOrder padding = PaddingOrder::kIndex;
};

struct PolicyRun {
  ItemSet selections;  // in order
  ItemSet set;         // sorted final set
  double value = 0.0;  // realized f(set, phi)
  std::vector<GreedyStep> trace;
  std::string branch;
  // Repair comparisons in g_psi terms: base_value = g_psi(∅).
  std::vector<RepairRecord> repairs;
  bool feasible = false;  // recomputed from the ground predicates
  int observations = 0;
  double p_used = 0.0;
};

// Coin-flip adaptive greedy on a live episode, over `pool` (sorted) with
// per-group caps checked by `independent`.
GreedyResult AdaptiveSamplingGreedy(Episode& episode,
                                    const GroupedGroundSet& ground,
                                    std::span<const Item> pool,
                                    const CountPredicate& independent, double p,
                                    Rng& rng);

// Group-equality policy. Branches:
//   k_min > 1           greedy to the semi-feasibility bound, then repair by
//                       g_psi;
//   k_min = 0           greedy with caps alpha;
//   k_min = 1, alpha=0  size-one groups first, caps 1 elsewhere, then one
//                       item for every empty group, chosen by g_psi;
//   k_min = 1, alpha>0  greedy with caps alpha.
PolicyRun SolveAdaptive(const AdaptiveInstance& instance,
                        const GroupedGroundSet& ground, int alpha,
                        const AdaptiveConfig& cfg);

// Smallest groups in full, then plain adaptive greedy with caps
// k_min + alpha, then the least index-order padding restoring equality.
PolicyRun MonotoneAdaptiveSolve(const AdaptiveInstance& instance,
                                const GroupedGroundSet& ground, int alpha,
                                const AdaptiveConfig& cfg);

// Equity intervals [low_i, high_i] and |S| <= c: adaptive greedy under the
// floor-budget matroid, then a uniformly random backup set lifting every
// group to low_i. Plain greedy when the instance is declared monotone.
PolicyRun EquityAdaptiveSolve(const AdaptiveInstance& instance,
                              const GroupedGroundSet& ground,
                              const EquityBounds& bounds, int cardinality,
                              const AdaptiveConfig& cfg);

using PolicyRunner = std::function<PolicyRun(uint64_t episode_seed)>;

struct PolicyValue {
  MeanEstimate estimate;
  std::vector<PolicyRun> runs;
};

// Runs `episodes` episodes with seeds DeriveSeed(seed, {i}).
PolicyValue EstimatePolicyValue(const PolicyRunner& runner, int episodes,
                                uint64_t seed, bool keep_runs = true);

struct AdaptivePropertyReport {
  bool passed = true;
  int64_t checked = 0;
  std::string detail;  // first violation
};

// Along random selection paths psi ⊆ psi', checks Delta(e|psi) >=
// Delta(e|psi') - tolerance for items outside dom(psi'). Meaningful with
// exact episodes; Monte Carlo episodes need a tolerance covering the noise.
AdaptivePropertyReport CheckAdaptiveSubmodular(const AdaptiveInstance& instance,
                                               int paths, uint64_t seed,
                                               double tolerance = 1e-9);
// Delta(e|psi) >= -tolerance at random partial realizations.
AdaptivePropertyReport CheckAdaptiveMonotone(const AdaptiveInstance& instance,
                                             int paths, uint64_t seed,
                                             double tolerance = 1e-9);

// Throws ContractError unless declared or sampled adaptive-monotone.
void RequireAdaptiveMonotone(const AdaptiveInstance& instance, uint64_t seed);

// Draws a positive-probability partial realization on a random subset of
// items (each included with probability `density`).
PartialRealization SamplePartialRealization(const StatePrior& prior,
                                            double density, Rng& rng);

}  // namespace fairsub

#endif  // FAIRSUB_ADAPTIVE_H_
