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

#include "fairsub/nonadaptive.h"

#include <algorithm>

#include "fairsub/errors.h"
#include "fairsub/random.h"

namespace fairsub {
namespace {

class StateGainSource : public GainSource {
 public:
  explicit StateGainSource(GainState& state) : state_(state) {}
  void Gains(std::span<const Item> candidates,
             std::span<double> out) override {
    for (size_t k = 0; k < candidates.size(); ++k) {
      out[k] = state_.Gain(candidates[k]);
    }
  }
  void Commit(Item e) override { state_.Add(e); }
  bool diminishing() const override { return state_.diminishing(); }

 private:
  GainState& state_;
};

ItemSet Union(std::span<const Item> a, std::span<const Item> b) {
  ItemSet out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

ItemSet Sorted(ItemSet s) {
  std::sort(s.begin(), s.end());
  return s;
}

ItemSet PoolExcluding(const GroupedGroundSet& ground,
                      std::span<const Item> excluded) {
  std::vector<char> skip(ground.size(), 0);
  for (Item e : excluded) skip[e] = 1;
  ItemSet pool;
  for (Item e = 0; e < ground.size(); ++e) {
    if (!skip[e]) pool.push_back(e);
  }
  return pool;
}

// Evaluates A ∪ X and A ∪ Y and keeps the better (X on ties).
ItemSet BestCompletion(const SetObjective& f, std::span<const Item> base,
                       const Padding& padding,
                       std::vector<RepairRecord>& records) {
  RepairRecord rec;
  rec.base.assign(base.begin(), base.end());
  rec.x = padding.x;
  rec.y = padding.y;
  ItemSet ax = Union(base, padding.x);
  ItemSet ay = Union(base, padding.y);
  rec.base_value = f.Evaluate(base);
  rec.value_x = f.Evaluate(ax);
  rec.value_y = f.Evaluate(ay);
  rec.chose_x = rec.value_x >= rec.value_y;
  records.push_back(rec);
  return rec.chose_x ? ax : ay;
}

struct Candidate {
  ItemSet set;
  double value = 0.0;
  std::string branch;
  std::vector<GreedyStep> trace;
};

void KeepBetter(std::optional<Candidate>& best, Candidate c) {
  if (!best || c.value > best->value) best = std::move(c);
}

// Coin-flip greedy started from `forced` over the remaining items.
Candidate GreedyFrom(const SetObjective& f, const GroupedGroundSet& ground,
                     std::span<const Item> forced,
                     const CountPredicate& independent, double p, Rng& rng) {
  std::unique_ptr<GainState> state = f.NewState();
  for (Item e : forced) state->Add(e);
  StateGainSource source(*state);
  ItemSet pool = PoolExcluding(ground, forced);
  GreedyResult r =
      RunCoinFlipGreedy(source, ground, pool, independent,
                        std::vector<int>(ground.num_groups(), 0), p, rng);
  Candidate c;
  c.set = std::move(r.selected);
  c.value = state->Value();
  c.trace = std::move(r.trace);
  return c;
}

void SpotCheckDownwardClosed(const CountPredicate& independent,
                             const GroupedGroundSet& ground, uint64_t seed) {
  std::vector<int> counts(ground.num_groups(), 0);
  if (!independent(counts)) {
    throw ContractError("independence predicate rejects the empty set");
  }
  Rng rng(DeriveSeed(seed, {0x646f776eULL}));
  for (int trial = 0; trial < 64; ++trial) {
    for (int i = 0; i < ground.num_groups(); ++i) {
      counts[i] = static_cast<int>(rng() % (ground.group_size(i) + 1));
    }
    if (!independent(counts)) continue;
    for (int i = 0; i < ground.num_groups(); ++i) {
      if (counts[i] == 0) continue;
      --counts[i];
      bool ok = independent(counts);
      ++counts[i];
      if (!ok) {
        throw ContractError(
            "independence predicate is not downward closed (removing an item "
            "of group " + std::to_string(i) + " breaks independence)");
      }
    }
  }
}

// Runs the matroid subroutine and returns the selection together with the
// value f(selection ∪ forced).
Candidate RunMatroid(const SetObjective& f, const CountPredicate& independent,
                     const GroupedGroundSet& ground,
                     const MatroidOptions& options) {
  SpotCheckDownwardClosed(independent, ground, options.seed);
  std::optional<Candidate> best;
  for (int r = 0; r < std::max(options.rounds, 1); ++r) {
    Rng rng(RunSeed(options.seed, r));
    KeepBetter(best, GreedyFrom(f, ground, options.forced, independent,
                                options.p, rng));
  }
  return *best;
}

void RequireFeasible(const Candidate& c, const GroupedGroundSet& ground,
                     int alpha, std::optional<int> cardinality) {
  bool ok = IsGroupEqual(c.set, ground, alpha) &&
            (!cardinality || static_cast<int>(c.set.size()) <= *cardinality);
  if (!ok) {
    throw Error(ErrorCode::kContract,
                "branch " + c.branch + " produced an infeasible set");
  }
}

Solution Finish(const SetObjective& f, Candidate c,
                std::vector<RepairRecord> repairs, double p) {
  Solution s;
  s.set = Sorted(std::move(c.set));
  s.value = f.Evaluate(s.set);
  s.trace = std::move(c.trace);
  s.branch = std::move(c.branch);
  s.repairs = std::move(repairs);
  s.p_used = p;
  return s;
}

Padding PadFor(const SetObjective& f, std::span<const Item> base,
               const GroupedGroundSet& ground, std::span<const int> target,
               PaddingOrder order, uint64_t seed) {
  switch (order) {
    case PaddingOrder::kIndex:
      return DisjointPadding(base, ground, target);
    case PaddingOrder::kShuffled:
      return DisjointPadding(base, ground, target, DeriveSeed(seed, {0x706164ULL}));
    case PaddingOrder::kRanked: {
      std::unique_ptr<GainState> state = f.NewState();
      for (Item e : base) state->Add(e);
      std::vector<char> in(ground.size(), 0);
      for (Item e : base) in[e] = 1;
      std::vector<double> gain(ground.size(), 0.0);
      for (Item e = 0; e < ground.size(); ++e) {
        if (!in[e]) gain[e] = state->Gain(e);
      }
      return RankedDisjointPadding(base, ground, target, gain);
    }
  }
  return DisjointPadding(base, ground, target);
}

// Guess min_i |OPT_i| = 1 with every size-one group taken up front: the
// subroutine picks at most `other_cap` items per remaining group (and obeys
// `budget` if set), then empty groups get one of two disjoint singletons.
Candidate ForcedSingletonBranch(const SetObjective& f,
                                const GroupedGroundSet& ground, int other_cap,
                                std::optional<int> budget,
                                const SolverConfig& cfg, uint64_t seed,
                                std::vector<RepairRecord>& repairs) {
  std::vector<int> singles = GroupsOfSize(ground, 1);
  ItemSet forced = ItemsOfGroups(ground, singles);
  std::vector<int> caps(ground.num_groups(), other_cap);
  for (int i : singles) caps[i] = 0;
  CountPredicate independent =
      budget ? FloorBudgetPredicate(caps, std::vector<int>(caps.size(), 0),
                                    *budget)
             : CapsPredicate(caps);
  MatroidOptions mo{cfg.subroutine_p, cfg.subroutine_rounds, seed, forced};
  Candidate sub = RunMatroid(f, independent, ground, mo);
  ItemSet base = Union(forced, sub.set);
  std::vector<int> counts = GroupCounts(base, ground);
  std::vector<int> target(ground.num_groups(), 0);
  for (int i = 0; i < ground.num_groups(); ++i) {
    if (counts[i] == 0) target[i] = 1;
  }
  Padding pad = PadFor(f, base, ground, target, cfg.padding, seed);
  Candidate c;
  c.set = BestCompletion(f, base, pad, repairs);
  c.value = f.Evaluate(c.set);
  c.trace = std::move(sub.trace);
  return c;
}

}  // namespace

std::vector<int> MinimalEqualityTargets(std::span<const int> counts,
                                        int alpha) {
  if (counts.empty()) return {};
  int level = *std::max_element(counts.begin(), counts.end()) - alpha;
  std::vector<int> target(counts.size());
  for (size_t i = 0; i < counts.size(); ++i) {
    target[i] = std::max(counts[i], level);
  }
  return target;
}

ItemSet PadInIndexOrder(std::span<const Item> set,
                        const GroupedGroundSet& ground,
                        std::span<const int> target) {
  std::vector<int> counts = GroupCounts(set, ground);
  std::vector<char> taken(ground.size(), 0);
  for (Item e : set) taken[e] = 1;
  ItemSet added;
  for (int i = 0; i < ground.num_groups(); ++i) {
    for (Item e : ground.members(i)) {
      if (counts[i] >= target[i]) break;
      if (taken[e]) continue;
      added.push_back(e);
      ++counts[i];
    }
    if (counts[i] < target[i]) {
      throw InfeasibleError("group " + std::to_string(i) +
                            " has too few items to reach its target");
    }
  }
  return added;
}

std::vector<int> GroupsOfSize(const GroupedGroundSet& ground, int size) {
  std::vector<int> out;
  for (int i = 0; i < ground.num_groups(); ++i) {
    if (ground.group_size(i) == size) out.push_back(i);
  }
  return out;
}

ItemSet ItemsOfGroups(const GroupedGroundSet& ground,
                      std::span<const int> groups) {
  ItemSet out;
  for (int i : groups) {
    auto m = ground.members(i);
    out.insert(out.end(), m.begin(), m.end());
  }
  return out;
}

void RequireMonotone(const SetObjective& f, uint64_t seed) {
  if (auto hint = f.monotone_hint()) {
    if (*hint) return;
    throw ContractError("objective '" + f.label() +
                        "' is declared non-monotone; use SolveGroupEquality");
  }
  PropertyReport r = CheckMonotone(f, f.ground_size(), 256, seed);
  if (!r.passed) {
    throw ContractError(
        "objective failed the sampled monotonicity check (negative marginal "
        "for item " + std::to_string(r.witness->e) +
        "); use SolveGroupEquality");
  }
}

Solution SamplingGreedy(const SetObjective& f, const GroupedGroundSet& ground,
                        std::span<const int> bound, double p, uint64_t seed) {
  for (int i = 0; i < ground.num_groups(); ++i) {
    if (bound[i] > ground.group_size(i)) {
      throw InputError("greedy cap exceeds group size");
    }
  }
  Rng rng(seed);
  Candidate c = GreedyFrom(f, ground, {},
                           CapsPredicate({bound.begin(), bound.end()}), p, rng);
  c.branch = "sampling_greedy";
  return Finish(f, std::move(c), {}, p);
}

Solution RepairToFeasible(std::span<const Item> base, const SetObjective& f,
                          const GroupedGroundSet& ground, int alpha,
                          std::optional<uint64_t> shuffle_seed) {
  if (!IsSemiFeasible(base, ground, alpha)) {
    throw InputError("repair requires a semi-feasible base set");
  }
  std::vector<int> target = SemiFeasibleBounds(ground, alpha);
  Padding pad = DisjointPadding(base, ground, target, shuffle_seed);
  std::vector<RepairRecord> repairs;
  Candidate c;
  c.set = BestCompletion(f, base, pad, repairs);
  c.branch = "repair";
  return Finish(f, std::move(c), std::move(repairs), 0.0);
}

ItemSet MatroidSubroutine(const SetObjective& f,
                          const CountPredicate& independent,
                          const GroupedGroundSet& ground,
                          const MatroidOptions& options) {
  return Sorted(RunMatroid(f, independent, ground, options).set);
}

Solution SolveGroupEquality(const SetObjective& f,
                            const GroupedGroundSet& ground, int alpha,
                            const SolverConfig& cfg) {
  if (alpha < 0) throw InputError("alpha must be non-negative");
  const int k_min = ground.min_group_size();
  std::vector<RepairRecord> repairs;
  std::optional<Candidate> best;

  if (k_min > 1) {
    std::vector<int> bounds = SemiFeasibleBounds(ground, alpha);
    CountPredicate semi = CapsPredicate(bounds);
    for (int r = 0; r < std::max(cfg.repeats, 1); ++r) {
      Rng rng(RunSeed(cfg.seed, r));
      Candidate g = GreedyFrom(f, ground, {}, semi, cfg.p, rng);
      Padding pad = PadFor(f, g.set, ground, bounds, cfg.padding, cfg.seed);
      Candidate c;
      c.set = BestCompletion(f, g.set, pad, repairs);
      c.value = f.Evaluate(c.set);
      c.trace = std::move(g.trace);
      c.branch = "kmin_gt1";
      KeepBetter(best, std::move(c));
    }
    RequireFeasible(*best, ground, alpha, std::nullopt);
    return Finish(f, std::move(*best), std::move(repairs), cfg.p);
  }

  std::vector<int> caps(ground.num_groups(), alpha);
  MatroidOptions mo{cfg.subroutine_p, cfg.subroutine_rounds,
                    DeriveSeed(cfg.seed, {0}), {}};
  Candidate guess0 = RunMatroid(f, CapsPredicate(caps), ground, mo);
  guess0.branch = k_min == 0 ? "kmin_eq0" : "kmin_eq1_guess0";
  KeepBetter(best, std::move(guess0));

  if (k_min == 1) {
    Candidate guess1 = ForcedSingletonBranch(
        f, ground, alpha + 1, std::nullopt, cfg, DeriveSeed(cfg.seed, {1}),
        repairs);
    guess1.branch = "kmin_eq1_guess1";
    RequireFeasible(guess1, ground, alpha, std::nullopt);
    KeepBetter(best, std::move(guess1));
  }
  RequireFeasible(*best, ground, alpha, std::nullopt);
  return Finish(f, std::move(*best), std::move(repairs), cfg.subroutine_p);
}

Solution SolveWithCardinality(const SetObjective& f,
                              const GroupedGroundSet& ground, int alpha,
                              int cardinality, const SolverConfig& cfg) {
  if (alpha < 0) throw InputError("alpha must be non-negative");
  if (cardinality < 0) throw InputError("cardinality must be non-negative");
  const int m = ground.num_groups();
  const int k_min = ground.min_group_size();
  std::vector<RepairRecord> repairs;
  std::optional<Candidate> best;

  int z_max = ground.size() > 0 ? ground.group_size(0) / 2 : 0;
  for (int i = 0; i < m; ++i) z_max = std::min(z_max, ground.group_size(i) / 2);
  for (int z = 1; z <= z_max; ++z) {
    if (static_cast<long>(m) * z > cardinality) continue;
    CountPredicate relaxed = FloorBudgetPredicate(
        std::vector<int>(m, z + alpha), std::vector<int>(m, z), cardinality);
    MatroidOptions mo{cfg.subroutine_p, cfg.subroutine_rounds,
                      DeriveSeed(cfg.seed, {static_cast<uint64_t>(z), 7}), {}};
    Candidate sub = RunMatroid(f, relaxed, ground, mo);
    Padding pad = PadFor(f, sub.set, ground, std::vector<int>(m, z),
                         cfg.padding, cfg.seed);
    Candidate c;
    c.set = BestCompletion(f, sub.set, pad, repairs);
    c.value = f.Evaluate(c.set);
    c.trace = std::move(sub.trace);
    c.branch = "card_z" + std::to_string(z);
    RequireFeasible(c, ground, alpha, cardinality);
    KeepBetter(best, std::move(c));
  }

  {
    CountPredicate capped = FloorBudgetPredicate(
        std::vector<int>(m, alpha), std::vector<int>(m, 0), cardinality);
    MatroidOptions mo{cfg.subroutine_p, cfg.subroutine_rounds,
                      DeriveSeed(cfg.seed, {0, 7}), {}};
    Candidate c = RunMatroid(f, capped, ground, mo);
    c.branch = "card_guess0";
    RequireFeasible(c, ground, alpha, cardinality);
    KeepBetter(best, std::move(c));
  }

  if (k_min >= 1 && alpha == 0 && cardinality >= m) {
    Candidate c = ForcedSingletonBranch(f, ground, 1, std::nullopt, cfg,
                                        DeriveSeed(cfg.seed, {1, 7}), repairs);
    c.branch = "card_guess1_alpha0";
    RequireFeasible(c, ground, alpha, cardinality);
    KeepBetter(best, std::move(c));
  }

  if (alpha > 0) {
    CountPredicate single = FloorBudgetPredicate(
        std::vector<int>(m, 1), std::vector<int>(m, 0), cardinality);
    MatroidOptions mo{cfg.subroutine_p, cfg.subroutine_rounds,
                      DeriveSeed(cfg.seed, {2, 7}), {}};
    Candidate c = RunMatroid(f, single, ground, mo);
    c.branch = "card_guess1_single";
    RequireFeasible(c, ground, alpha, cardinality);
    KeepBetter(best, std::move(c));
  }

  return Finish(f, std::move(*best), std::move(repairs), cfg.subroutine_p);
}

Solution MonotoneSolve(const SetObjective& f, const GroupedGroundSet& ground,
                       int alpha, std::optional<int> cardinality,
                       uint64_t seed) {
  if (alpha < 0) throw InputError("alpha must be non-negative");
  RequireMonotone(f, seed);
  const int m = ground.num_groups();
  const int k_min = ground.min_group_size();
  Rng rng(seed);  // p = 1 never draws

  if (!cardinality) {
    std::vector<int> smallest = GroupsOfSize(ground, k_min);
    ItemSet forced = ItemsOfGroups(ground, smallest);
    std::vector<int> caps(m, k_min + alpha);
    for (int i : smallest) caps[i] = 0;
    Candidate g = GreedyFrom(f, ground, forced, CapsPredicate(caps), 1.0, rng);
    ItemSet base = Union(forced, g.set);
    std::vector<int> target =
        MinimalEqualityTargets(GroupCounts(base, ground), alpha);
    ItemSet pad = PadInIndexOrder(base, ground, target);
    Candidate c;
    c.set = Union(base, pad);
    c.trace = std::move(g.trace);
    c.branch = "monotone";
    RequireFeasible(c, ground, alpha, std::nullopt);
    return Finish(f, std::move(c), {}, 1.0);
  }

  std::optional<Candidate> best;
  for (int z = 0; z <= k_min; ++z) {
    if (static_cast<long>(m) * z > *cardinality) continue;
    CountPredicate relaxed = FloorBudgetPredicate(
        std::vector<int>(m, z + alpha), std::vector<int>(m, z), *cardinality);
    SpotCheckDownwardClosed(relaxed, ground, seed);
    Candidate g = GreedyFrom(f, ground, {}, relaxed, 1.0, rng);
    ItemSet pad = PadInIndexOrder(g.set, ground, std::vector<int>(m, z));
    Candidate c;
    c.set = Union(g.set, pad);
    c.value = f.Evaluate(c.set);
    c.trace = std::move(g.trace);
    c.branch = "monotone_card_z" + std::to_string(z);
    RequireFeasible(c, ground, alpha, cardinality);
    KeepBetter(best, std::move(c));
  }
  if (!best) throw InfeasibleError("no feasible set within the budget");
  return Finish(f, std::move(*best), {}, 1.0);
}

}  // namespace fairsub
