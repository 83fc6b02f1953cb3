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

#include <random>

#include <gtest/gtest.h>

#include "fairsub/checks.h"
#include "fairsub/errors.h"
#include "fairsub/oracle.h"
#include "test_util.h"

namespace fairsub {
namespace {

GroupedGroundSet TwoByTwo() { return GroupedGroundSet::FromAssignment({0, 0, 1, 1}, 2); }
SetObjective Weights5142() { return MakeModular({5, 1, 4, 2}); }

SolverConfig Cfg(double p, uint64_t seed) {
  SolverConfig cfg;
  cfg.p = p;
  cfg.seed = seed;
  return cfg;
}

TEST(SamplingGreedy, ModularPicksGroupArgmax) {
  const int bound[] = {1, 1};
  Solution s = SamplingGreedy(Weights5142(), TwoByTwo(), bound, 1.0, 0);
  EXPECT_EQ(s.set, (ItemSet{0, 2}));
  EXPECT_DOUBLE_EQ(s.value, 9.0);
}

TEST(SamplingGreedy, ZeroObjectiveSelectsNothing) {
  const int bound[] = {1, 1};
  Solution s = SamplingGreedy(MakeModular({0, 0, 0, 0}), TwoByTwo(), bound, 1.0, 0);
  EXPECT_TRUE(s.set.empty());
}

TEST(SamplingGreedy, ZeroRateSelectsNothing) {
  const int bound[] = {2, 2};
  for (uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_TRUE(SamplingGreedy(Weights5142(), TwoByTwo(), bound, 0.0, seed).set.empty());
  }
}

TEST(SamplingGreedy, TraceGainsStrictlyPositive) {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    RandomInstance ri = MakeRandomInstance(rng, 10, 3);
    std::vector<int> bound = SemiFeasibleBounds(ri.ground, 1 + t % 2);
    Solution s = SamplingGreedy(ri.objective, ri.ground, bound, 0.6, t);
    for (const GreedyStep& step : s.trace) EXPECT_GT(step.gain, 0.0) << ri.kind;
    EXPECT_TRUE(IsSemiFeasible(s.set, ri.ground, 1 + t % 2));
  }
}

TEST(RepairToFeasible, KeepsBetterCompletion) {
  Solution s = RepairToFeasible(ItemSet{0}, Weights5142(), TwoByTwo(), 0);
  EXPECT_EQ(s.set, (ItemSet{0, 2}));
  ASSERT_EQ(s.repairs.size(), 1u);
  EXPECT_DOUBLE_EQ(s.repairs[0].value_x, 9.0);
  EXPECT_DOUBLE_EQ(s.repairs[0].value_y, 7.0);
}

TEST(RepairToFeasible, BaseAtBoundsUnchanged) {
  Solution s = RepairToFeasible(ItemSet{1, 3}, Weights5142(), TwoByTwo(), 0);
  EXPECT_EQ(s.set, (ItemSet{1, 3}));
}

TEST(RepairToFeasible, TieKeepsFirstCompletion) {
  Solution s = RepairToFeasible(ItemSet{0}, MakeModular({1, 1, 1, 1}), TwoByTwo(), 0);
  EXPECT_EQ(s.set, (ItemSet{0, 2}));
  ASSERT_EQ(s.repairs.size(), 1u);
  EXPECT_TRUE(s.repairs[0].chose_x);
}

TEST(SolveGroupEquality, ModularStopsAtSemiFeasibleBound) {
  SetObjective f = Weights5142();
  GroupedGroundSet g = TwoByTwo();
  OptResult opt = BruteForceOpt(f, g, GroupEqualPredicate(g, 0));
  Solution s = SolveGroupEquality(f, g, 0, Cfg(1.0, 0));
  EXPECT_DOUBLE_EQ(opt.value, 12.0);
  EXPECT_EQ(s.set, (ItemSet{0, 2}));
  EXPECT_GE(s.value, 0.045 * opt.value);
  EXPECT_EQ(s.branch, "kmin_gt1");
}

TEST(SolveGroupEquality, SingletonGroupForcesOnePerGroup) {
  GroupedGroundSet g = GroupedGroundSet::FromAssignment({0, 1, 1, 1}, 2);
  SetObjective f = MakeCoverage({{0}, {1}, {2}, {3, 4}});
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Solution s = SolveGroupEquality(f, g, 0, Cfg(kTheorySamplingRate, seed));
    ASSERT_EQ(s.set.size(), 2u) << s.branch;
    EXPECT_EQ(s.set[0], 0);
    EXPECT_EQ(GroupCounts(s.set, g), (std::vector<int>{1, 1}));
    EXPECT_EQ(s.branch, "kmin_eq1_guess1");
  }
}

TEST(SolveGroupEquality, EmptyGroupUsesCaps) {
  GroupedGroundSet g = GroupedGroundSet::FromAssignment({1, 1, 1}, 2);
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Solution s = SolveGroupEquality(MakeModular({3, 1, 2}), g, 2, Cfg(kTheorySamplingRate, seed));
    EXPECT_EQ(s.branch, "kmin_eq0");
    EXPECT_LE(s.set.size(), 2u);
    for (Item e : s.set) EXPECT_EQ(g.group_of(e), 1);
  }
}

TEST(SolveGroupEquality, RepeatsKeepTheBestFeasibleRun) {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    RandomInstance ri = MakeRandomInstanceWithSizes(rng, {3, 4, 2});
    SolverConfig one = Cfg(kTheorySamplingRate, t);
    SolverConfig five = one;
    five.repeats = 5;
    Solution a = SolveGroupEquality(ri.objective, ri.ground, 1, one);
    Solution b = SolveGroupEquality(ri.objective, ri.ground, 1, five);
    EXPECT_GE(b.value, a.value - 1e-12);
    EXPECT_TRUE(IsGroupEqual(b.set, ri.ground, 1));
  }
}

TEST(SolveGroupEquality, NegativeAlphaIsInputError) {
  ExpectErrorCode(ErrorCode::kInput, [] { SolveGroupEquality(Weights5142(), TwoByTwo(), -1, {}); });
}

TEST(MatroidSubroutine, CardinalityOne) {
  GroupedGroundSet g = GroupedGroundSet::FromAssignment({0, 0}, 1);
  CountPredicate at_most_one = [](std::span<const int> c) { return c[0] <= 1; };
  MatroidOptions mo{1.0, 1, 0, {}};
  EXPECT_EQ(MatroidSubroutine(MakeModular({3, 7}), at_most_one, g, mo), ItemSet{1});
}

TEST(MatroidSubroutine, EmptyOnlyPredicate) {
  CountPredicate empty = [](std::span<const int> c) {
    for (int v : c) {
      if (v) return false;
    }
    return true;
  };
  MatroidOptions mo{1.0, 2, 0, {}};
  EXPECT_TRUE(MatroidSubroutine(Weights5142(), empty, TwoByTwo(), mo).empty());
}

TEST(MatroidSubroutine, PartitionCapsMatchBruteForce) {
  GroupedGroundSet g = TwoByTwo();
  SetObjective f = Weights5142();
  MatroidOptions mo{1.0, 1, 0, {}};
  ItemSet got = MatroidSubroutine(f, CapsPredicate({1, 1}), g, mo);
  OptResult opt = BruteForceOpt(f, g, [&](std::span<const Item> s) {
    std::vector<int> c = GroupCounts(s, g);
    return c[0] <= 1 && c[1] <= 1;
  });
  EXPECT_EQ(got, opt.set);
  EXPECT_EQ(got, (ItemSet{0, 2}));
}

TEST(MatroidSubroutine, RejectsPredicateThatIsNotDownwardClosed) {
  CountPredicate odd = [](std::span<const int> c) { return (c[0] + c[1]) % 2 == 1; };
  MatroidOptions mo{1.0, 1, 0, {}};
  ExpectErrorCode(ErrorCode::kContract, [&] { MatroidSubroutine(Weights5142(), odd, TwoByTwo(), mo); });
}

TEST(FloorBudgetPredicate, LaminarBudget) {
  CountPredicate p = FloorBudgetPredicate({2, 2}, {1, 1}, 3);
  EXPECT_TRUE(p(std::vector<int>{2, 0}));
  EXPECT_TRUE(p(std::vector<int>{2, 1}));
  EXPECT_FALSE(p(std::vector<int>{2, 2}));
  EXPECT_FALSE(p(std::vector<int>{3, 0}));
}

TEST(SolveWithCardinality, ZRangeIsOneToHalfSmallestGroup) {
  const int sizes[] = {4, 6};
  GroupedGroundSet g = GroupedGroundSet::FromSizes(sizes);
  std::mt19937_64 rng(9);
  bool saw_two = false;
  for (int t = 0; t < 40; ++t) {
    std::vector<double> w(10);
    for (double& v : w) v = 1 + rng() % 9;
    Solution s = SolveWithCardinality(MakeModular(w), g, 0, 4 + t % 5, Cfg(kTheorySamplingRate, t));
    if (s.branch.rfind("card_z", 0) == 0) {
      const int z = std::stoi(s.branch.substr(6));
      EXPECT_GE(z, 1);
      EXPECT_LE(z, 2);
      saw_two = saw_two || z == 2;
    }
  }
  EXPECT_TRUE(saw_two);
}

TEST(SolveWithCardinality, EighthOfOptimumOnEverySeed) {
  const int sizes[] = {3, 3};
  GroupedGroundSet g = GroupedGroundSet::FromSizes(sizes);
  SetObjective f = MakeModular({4, 1, 3, 2, 5, 1});
  const double opt = BruteForceOpt(f, g, CardinalityPredicate(g, 1, 3)).value;
  EXPECT_DOUBLE_EQ(opt, 12.0);  // {0, 2} and {4}
  for (uint64_t seed = 0; seed < 50; ++seed) {
    Solution s = SolveWithCardinality(f, g, 1, 3, Cfg(kTheorySamplingRate, seed));
    EXPECT_GE(s.value, opt / 8);
    EXPECT_LE(s.set.size(), 3u);
    EXPECT_TRUE(IsGroupEqual(s.set, g, 1));
  }
}

TEST(SolveWithCardinality, ZeroBudgetGivesEmptySet) {
  Solution s = SolveWithCardinality(Weights5142(), TwoByTwo(), 1, 0, {});
  EXPECT_TRUE(s.set.empty());
}

TEST(MonotoneSolve, SingletonGroupStructure) {
  GroupedGroundSet g = GroupedGroundSet::FromAssignment({1, 0, 1, 1}, 2);
  SetObjective f = MakeCoverage({{0, 1}, {2}, {3}, {0, 4}});
  Solution s = MonotoneSolve(f, g, 0);
  EXPECT_EQ(GroupCounts(s.set, g), (std::vector<int>{1, 1}));
  EXPECT_TRUE(std::find(s.set.begin(), s.set.end(), 1) != s.set.end());
}

TEST(MonotoneSolve, UnboundCapsTakePositiveItemsAndSmallestGroups) {
  GroupedGroundSet g = GroupedGroundSet::FromAssignment({0, 0, 1, 1, 1}, 2);
  Solution s = MonotoneSolve(MakeModular({0, 2, 0, 3, 1}), g, 5);
  EXPECT_EQ(s.set, (ItemSet{0, 1, 3, 4}));
}

TEST(MonotoneSolve, HalfOfOptimumOnCoverage) {
  Rng rng(13);
  for (int t = 0; t < 30; ++t) {
    std::vector<std::vector<int>> sets(6);
    for (auto& s : sets) {
      for (int u = 0; u < 8; ++u) {
        if (rng() % 3 == 0) s.push_back(u);
      }
    }
    SetObjective f = MakeCoverage(sets);
    GroupedGroundSet g = GroupedGroundSet::FromAssignment({0, 0, 0, 1, 1, 1}, 2);
    const int alpha = t % 3;
    const double opt = BruteForceOpt(f, g, GroupEqualPredicate(g, alpha)).value;
    Solution s = MonotoneSolve(f, g, alpha);
    EXPECT_GE(s.value, opt / 2 - 1e-12);
    EXPECT_TRUE(IsGroupEqual(s.set, g, alpha));
    Solution c = MonotoneSolve(f, g, alpha, 3);
    EXPECT_LE(c.set.size(), 3u);
    EXPECT_TRUE(IsGroupEqual(c.set, g, alpha));
  }
}

TEST(MonotoneSolve, ValueGrowsWithAlphaOnModular) {
  Rng rng(19);
  for (int t = 0; t < 60; ++t) {
    RandomInstance ri = MakeRandomInstanceWithSizes(rng, {1 + t % 3, 3, 5});
    std::vector<double> w(ri.ground.size());
    for (double& v : w) v = static_cast<double>(rng() % 7);
    SetObjective f = MakeModular(w);
    double last = -1.0;
    for (int alpha = 0; alpha <= 5; ++alpha) {
      const double v = MonotoneSolve(f, ri.ground, alpha).value;
      EXPECT_GE(v, last - 1e-12) << "alpha " << alpha;
      last = v;
    }
  }
}

TEST(MonotoneSolve, RejectsNonMonotoneObjective) {
  SetObjective cut = MakeCut(4, {{0, 1, 1.0}, {2, 3, 1.0}}, false);
  ExpectErrorCode(ErrorCode::kContract, [&] { MonotoneSolve(cut, TwoByTwo(), 0); });
}

TEST(Solvers, FeasibleAndRepairInequalityOnRandomInstances) {
  Rng rng(29);
  for (int t = 0; t < 300; ++t) {
    RandomInstance ri = MakeRandomInstance(rng, 10, 4);
    const int alpha = t % 4;
    const int c = static_cast<int>(rng() % (ri.ground.size() + 1));
    for (PaddingOrder order : {PaddingOrder::kIndex, PaddingOrder::kShuffled, PaddingOrder::kRanked}) {
      SolverConfig cfg = Cfg(kTheorySamplingRate, t);
      cfg.padding = order;
      Solution a = SolveGroupEquality(ri.objective, ri.ground, alpha, cfg);
      Solution b = SolveWithCardinality(ri.objective, ri.ground, alpha, c, cfg);
      EXPECT_TRUE(IsGroupEqual(a.set, ri.ground, alpha));
      EXPECT_TRUE(IsGroupEqual(b.set, ri.ground, alpha));
      EXPECT_LE(static_cast<int>(b.set.size()), c);
      EXPECT_DOUBLE_EQ(a.value, ri.objective(a.set));
      for (const Solution* s : {&a, &b}) {
        for (const RepairRecord& r : s->repairs) {
          EXPECT_GE(r.value_x + r.value_y, r.base_value - 1e-9);
        }
      }
    }
  }
}

TEST(MinimalEqualityTargets, LiftsOnlyLaggingGroups) {
  EXPECT_EQ(MinimalEqualityTargets(std::vector<int>{5, 1, 3}, 2), (std::vector<int>{5, 3, 3}));
  EXPECT_EQ(MinimalEqualityTargets(std::vector<int>{0, 0}, 0), (std::vector<int>{0, 0}));
}

TEST(PadInIndexOrder, LowestSpareItemsFirst) {
  GroupedGroundSet g = GroupedGroundSet::FromAssignment({0, 1, 0, 1, 0}, 2);
  const int target[] = {2, 1};
  EXPECT_EQ(PadInIndexOrder(ItemSet{2}, g, target), (ItemSet{0, 1}));
  const int too_many[] = {4, 0};
  ExpectErrorCode(ErrorCode::kInfeasible, [&] { PadInIndexOrder(ItemSet{}, g, too_many); });
}

}  // namespace
}  // namespace fairsub
