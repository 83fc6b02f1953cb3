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
#include <numeric>

#include <gtest/gtest.h>

#include "fairsub/checks.h"
#include "fairsub/errors.h"
#include "test_util.h"

namespace fairsub {
namespace {

AdaptiveObjective Lift(const SetObjective& f) {
  AdaptiveObjective a;
  a.fn = [f](std::span<const Item> s, std::span<const State>) { return f(s); };
  return a;
}

TEST(BruteForceOpt, ModularExample) {
  GroupedGroundSet g = GroupedGroundSet::FromAssignment({0, 0, 1, 1}, 2);
  SetObjective f = MakeModular({5, 1, 4, 2});
  // Under α=0 the full set is feasible too; cap it at one per group.
  OptResult pair = BruteForceOpt(f, g, [&](std::span<const Item> s) {
    return IsGroupEqual(s, g, 0) && s.size() <= 2;
  });
  EXPECT_EQ(pair.set, (ItemSet{0, 2}));
  EXPECT_DOUBLE_EQ(pair.value, 9.0);
  EXPECT_DOUBLE_EQ(BruteForceOpt(f, g, GroupEqualPredicate(g, 0)).value, 12.0);
}

TEST(BruteForceOpt, ZeroObjectivePrefersEmptySet) {
  GroupedGroundSet g = GroupedGroundSet::FromAssignment({0, 0, 1, 1}, 2);
  OptResult r = BruteForceOpt(MakeModular({0, 0, 0, 0}), g, AnySet());
  EXPECT_TRUE(r.set.empty());
  EXPECT_DOUBLE_EQ(r.value, 0.0);
}

TEST(BruteForceOpt, VacuousAlphaIsUnconstrained) {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    RandomInstance ri = MakeRandomInstance(rng, 9, 3);
    const double free = BruteForceOpt(ri.objective, ri.ground, AnySet()).value;
    EXPECT_DOUBLE_EQ(BruteForceOpt(ri.objective, ri.ground, GroupEqualPredicate(ri.ground, ri.ground.size())).value, free);
    EXPECT_GE(free, BruteForceOpt(ri.objective, ri.ground, GroupEqualPredicate(ri.ground, t % 3)).value);
    EXPECT_GE(free, BruteForceOpt(ri.objective, ri.ground, CardinalityPredicate(ri.ground, 1, 3)).value);
  }
}

TEST(BruteForceOpt, RefusesLargeGroundSets) {
  GroupedGroundSet g = GroupedGroundSet::FromAssignment(std::vector<int>(21, 0), 1);
  ExpectErrorCode(ErrorCode::kCapability, [&] {
    BruteForceOpt(MakeModular(std::vector<double>(21, 1.0)), g, AnySet());
  });
}

TEST(BruteForceAdaptiveOpt, MaxOfTwoCoins) {
  GroupedGroundSet g = GroupedGroundSet::FromAssignment({0, 0}, 1);
  StatePrior coins = StatePrior::Independent({{0.5, 0.5}, {0.5, 0.5}});
  AdaptiveObjective mx = MakeMaxUtility({{0, 1}, {0, 1}});
  EXPECT_DOUBLE_EQ(BruteForceAdaptiveOpt(mx, coins, g, GroupEqualPredicate(g, 2)), 0.75);
}

TEST(BruteForceAdaptiveOpt, DeterministicPriorMatchesSetOptimum) {
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    RandomInstance ri = MakeRandomInstance(rng, 6, 2);
    const int alpha = t % 2;
    SetPredicate pred = GroupEqualPredicate(ri.ground, alpha);
    StatePrior fixed = StatePrior::Deterministic(Realization(ri.ground.size(), 0));
    EXPECT_NEAR(BruteForceAdaptiveOpt(Lift(ri.objective), fixed, ri.ground, pred),
                BruteForceOpt(ri.objective, ri.ground, pred).value, 1e-9);
  }
}

TEST(BruteForceAdaptiveOpt, ConstantObjectiveStopsImmediately) {
  GroupedGroundSet g = GroupedGroundSet::FromAssignment({0, 1}, 2);
  AdaptiveObjective five;
  five.fn = [](std::span<const Item>, std::span<const State>) { return 5.0; };
  StatePrior coins = StatePrior::Independent({{0.5, 0.5}, {0.5, 0.5}});
  EXPECT_DOUBLE_EQ(BruteForceAdaptiveOpt(five, coins, g, AnySet()), 5.0);
}

TEST(BruteForceAdaptiveOpt, AtLeastBestFixedSet) {
  Rng rng(7);
  for (int t = 0; t < 8; ++t) {
    RandomAdaptive ra = MakeRandomAdaptive(rng, 5, t % 2 == 0);
    GroupedGroundSet g = GroupedGroundSet::FromAssignment({0, 0, 1, 1, 1}, 2);
    SetPredicate pred = GroupEqualPredicate(g, t % 2);
    EXPECT_GE(BruteForceAdaptiveOpt(ra.utility, ra.prior, g, pred) + 1e-9,
              BestFixedSetValue(ra.utility, ra.prior, g, pred).value);
  }
}

TEST(BruteForceAdaptiveOpt, InvariantUnderRelabeling) {
  Rng rng(9);
  const std::vector<int> groups{0, 0, 1, 1, 1};
  const int perm[] = {3, 0, 4, 2, 1};  // new label of old item
  for (int t = 0; t < 5; ++t) {
    // Independent binary states; additive-with-interactions utility.
    std::vector<std::vector<double>> dist(5);
    for (auto& d : dist) {
      const double q = 0.2 + 0.6 * (rng() % 100) / 100.0;
      d = {1 - q, q};
    }
    std::vector<std::vector<double>> value(5, std::vector<double>(2));
    for (auto& row : value) {
      for (double& v : row) v = static_cast<double>(rng() % 5);
    }
    std::vector<std::vector<double>> dist2(5), value2(5);
    std::vector<int> groups2(5);
    for (int e = 0; e < 5; ++e) {
      dist2[perm[e]] = dist[e];
      value2[perm[e]] = value[e];
      groups2[perm[e]] = groups[e];
    }
    GroupedGroundSet g1 = GroupedGroundSet::FromAssignment(groups, 2);
    GroupedGroundSet g2 = GroupedGroundSet::FromAssignment(groups2, 2);
    const double a = BruteForceAdaptiveOpt(MakeMaxUtility(value), StatePrior::Independent(dist), g1,
                                           GroupEqualPredicate(g1, 0));
    const double b = BruteForceAdaptiveOpt(MakeMaxUtility(value2), StatePrior::Independent(dist2), g2,
                                           GroupEqualPredicate(g2, 0));
    EXPECT_NEAR(a, b, 1e-12);
  }
}

TEST(BruteForceAdaptiveOpt, NoFeasibleCompletionIsInfeasible) {
  GroupedGroundSet g = GroupedGroundSet::FromAssignment({0, 1}, 2);
  StatePrior fixed = StatePrior::Deterministic({0, 0});
  SetPredicate never = [](std::span<const Item>) { return false; };
  ExpectErrorCode(ErrorCode::kInfeasible,
                  [&] { BruteForceAdaptiveOpt(MakeMaxUtility({{1}, {1}}), fixed, g, never); });
}

TEST(BruteForceAdaptiveOpt, CapabilityLimits) {
  GroupedGroundSet g9 = GroupedGroundSet::FromAssignment(std::vector<int>(9, 0), 1);
  StatePrior fixed9 = StatePrior::Deterministic(Realization(9, 0));
  ExpectErrorCode(ErrorCode::kCapability, [&] {
    BruteForceAdaptiveOpt(MakeMaxUtility(std::vector<std::vector<double>>(9, {1})), fixed9, g9, AnySet());
  });
  StatePrior gen = StatePrior::Generative(
      2, [](Rng&) { return Realization{0, 0}; },
      [](const PartialRealization&, Rng&) { return Realization{0, 0}; });
  GroupedGroundSet g2 = GroupedGroundSet::FromAssignment({0, 0}, 1);
  ExpectErrorCode(ErrorCode::kCapability,
                  [&] { BruteForceAdaptiveOpt(MakeMaxUtility({{1}, {1}}), gen, g2, AnySet()); });
}

TEST(VerifyRatio, Examples) {
  OracleReport exact = VerifyRatio([](uint64_t) { return 4.0; }, 4.0, 30, 1.0, 0, "exact");
  ASSERT_TRUE(exact.ratio.has_value());
  EXPECT_DOUBLE_EQ(*exact.ratio, 1.0);
  EXPECT_TRUE(exact.verdict);
  EXPECT_EQ(exact.values.size(), 30u);

  OracleReport empty = VerifyRatio([](uint64_t) { return 0.0; }, 4.0, 30, 0.01, 0);
  EXPECT_DOUBLE_EQ(*empty.ratio, 0.0);
  EXPECT_FALSE(empty.verdict);

  ExpectErrorCode(ErrorCode::kInput, [] { VerifyRatio([](uint64_t) { return 1.0; }, 1.0, 29, 0.5, 0); });
}

TEST(VerifyRatio, SamplingGreedyClearsTheoryRatio) {
  Rng rng(13);
  RandomInstance ri = MakeRandomInstanceWithSizes(rng, {3, 3, 2});
  const double opt = BruteForceOpt(ri.objective, ri.ground, GroupEqualPredicate(ri.ground, 1)).value;
  OracleReport r = VerifyRatio(
      [&](uint64_t s) {
        SolverConfig cfg;
        cfg.seed = s;
        return SolveGroupEquality(ri.objective, ri.ground, 1, cfg).value;
      },
      opt, 100, 0.045, 3, ri.kind);
  EXPECT_TRUE(r.verdict);
}

}  // namespace
}  // namespace fairsub
