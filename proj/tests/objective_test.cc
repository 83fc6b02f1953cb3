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


#include "fairsub/objective.h"

#include <random>

#include <gtest/gtest.h>

#include "fairsub/checks.h"
#include "fairsub/errors.h"
#include "test_util.h"

namespace fairsub {
namespace {

SetObjective Constant(int n, double c) {
  return SetObjective(n, [c](std::span<const Item>) { return c; });
}

ItemSet Range(int n) {
  ItemSet s(n);
  for (int e = 0; e < n; ++e) s[e] = e;
  return s;
}

MnlParams RandomMnl(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 2.0);
  MnlParams p;
  const int types = 1 + rng() % 3;
  p.theta.assign(types, 1.0 / types);
  p.nu.assign(n, std::vector<double>(types));
  for (auto& row : p.nu) {
    for (double& v : row) v = u(rng);
  }
  for (int j = 0; j < types; ++j) p.nu0.push_back(0.1 + u(rng));
  return p;
}

SetObjective RandomCut(std::mt19937_64& rng, int n, bool directed) {
  std::vector<WeightedEdge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v && rng() % 3 == 0) edges.push_back({u, v, 1.0 + rng() % 4});
    }
  }
  if (edges.empty()) edges.push_back({0, n - 1, 1.0});
  return MakeCut(n, std::move(edges), directed);
}

TEST(Marginal, Modular) {
  SetObjective f = MakeModular({1, 2, 3});
  EXPECT_DOUBLE_EQ(Marginal(f, 2, ItemSet{0}), 3.0);
}

TEST(Marginal, ConstantIsZero) {
  EXPECT_DOUBLE_EQ(Marginal(Constant(3, 4.5), 1, ItemSet{0, 2}), 0.0);
}

TEST(Marginal, UndirectedCutEdge) {
  SetObjective f = MakeCut(2, {{0, 1, 1.0}}, /*directed=*/false);
  EXPECT_DOUBLE_EQ(Marginal(f, 1, ItemSet{0}), -1.0);
}

TEST(Marginal, MemberIsInputError) {
  SetObjective f = MakeModular({1, 2});
  ExpectErrorCode(ErrorCode::kInput, [&] { Marginal(f, 0, ItemSet{0}); });
}

TEST(Marginal, TwoOracleCalls) {
  SetObjective f = MakeModular({1, 2, 3});
  const uint64_t before = f.eval_count();
  Marginal(f, 1, ItemSet{0});
  EXPECT_EQ(f.eval_count() - before, 2u);
}

TEST(CheckSubmodular, ModularPasses) {
  SetObjective f = MakeModular({1, 5, 2, 0, 3});
  EXPECT_TRUE(CheckSubmodular(f, 5, 500, 1).passed);
  EXPECT_TRUE(CheckSubmodularExhaustive(f, 5).passed);
}

TEST(CheckSubmodular, SquareHasAnalyticWitness) {
  auto square = [](std::span<const Item> s) {
    return static_cast<double>(s.size() * s.size());
  };
  const ItemSet items = {0, 1};
  PropertyReport r = CheckSubmodularExhaustive(square, items);
  ASSERT_FALSE(r.passed);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_TRUE(r.witness->x.empty());
  EXPECT_EQ(r.witness->y, ItemSet{0});
  EXPECT_EQ(r.witness->e, 1);
  EXPECT_DOUBLE_EQ(r.witness->gain_x, 1.0);
  EXPECT_DOUBLE_EQ(r.witness->gain_y, 3.0);
}

TEST(CheckSubmodular, SampledCheckFindsSupermodularity) {
  SetObjective sq(6, [](std::span<const Item> s) { return double(s.size() * s.size()); });
  EXPECT_FALSE(CheckSubmodular(sq, 6, 200, 3).passed);
}

TEST(BuiltInObjectives, SubmodularExhaustivelyOnSmallGrounds) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 40; ++t) {
    const int n = 2 + t % 7;
    for (bool directed : {true, false}) {
      SetObjective cut = RandomCut(rng, n, directed);
      EXPECT_TRUE(CheckSubmodularExhaustive(cut, n).passed) << cut.label() << " n=" << n;
    }
    Rng r2(rng());
    for (bool monotone : {true, false}) {
      SetObjective f = MakeRandomObjective(r2, n, monotone);
      EXPECT_TRUE(CheckSubmodularExhaustive(f, n).passed) << f.label() << " n=" << n;
    }
  }
}

TEST(Mnl, RateExamples) {
  MnlParams p;
  p.theta = {1.0};
  p.nu = {{1.0}, {2.0}};
  p.nu0 = {1.0};
  EXPECT_DOUBLE_EQ(MnlRate(ItemSet{0}, p), 0.5);
  EXPECT_DOUBLE_EQ(MnlRate(ItemSet{0, 1}, p), 0.75);
  EXPECT_DOUBLE_EQ(MnlRate(ItemSet{}, p), 0.0);
}

TEST(Mnl, SubmodularAndMonotoneForRandomParams) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 30; ++t) {
    const int n = 1 + t % 6;
    SetObjective f = MakeMnl(RandomMnl(rng, n));
    EXPECT_TRUE(CheckSubmodularExhaustive(f, n).passed);
    EXPECT_TRUE(CheckMonotoneExhaustive(f, n).passed);
  }
}

TEST(Mnl, ValidateRejectsBadParams) {
  MnlParams p;
  p.theta = {0.5, 0.4};
  p.nu = {{1.0, 1.0}};
  p.nu0 = {1.0, 1.0};
  ExpectErrorCode(ErrorCode::kInput, [&] { p.Validate(); });
  p.theta = {0.5, 0.5};
  p.nu0 = {1.0, 0.0};
  ExpectErrorCode(ErrorCode::kInput, [&] { p.Validate(); });
}

TEST(MakeObjective, ZeroModular) {
  SetObjective f = MakeModular({0, 0});
  for (const ItemSet& s : {ItemSet{}, ItemSet{0}, ItemSet{1}, ItemSet{0, 1}}) {
    EXPECT_DOUBLE_EQ(f(s), 0.0);
  }
}

TEST(MakeObjective, CoverageCountsOverlapOnce) {
  SetObjective f = MakeCoverage({{0}, {0}});
  EXPECT_DOUBLE_EQ(f(ItemSet{0, 1}), 1.0);
}

TEST(MakeObjective, DirectedCut) {
  SetObjective f = MakeCut(2, {{0, 1, 2.0}});
  EXPECT_DOUBLE_EQ(f(ItemSet{0}), 2.0);
  EXPECT_DOUBLE_EQ(f(ItemSet{0, 1}), 0.0);
}

TEST(MakeObjective, RejectsBadInput) {
  ExpectErrorCode(ErrorCode::kInput, [] { MakeModular({1.0, -1.0}); });
  ExpectErrorCode(ErrorCode::kInput, [] { MakeCoverage({{0, 1}}, {1.0}); });
  ExpectErrorCode(ErrorCode::kInput, [] { MakeCut(2, {{0, 2, 1.0}}); });
  ExpectErrorCode(ErrorCode::kInput, [] { MakeSum({}); });
}

TEST(MakeObjective, ConcaveOverlapAcceptsLongWeightLists) {
  SetObjective f = MakeConcaveOverlap({{0}, {0, 1}}, {1.0, 2.0, 5.0});
  EXPECT_DOUBLE_EQ(f(ItemSet{0}), 1.0);
  EXPECT_DOUBLE_EQ(f(ItemSet{0, 1}), 0.0);
}

TEST(Monotonicity, CoveragePassesCutFailsWithWitness) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 6;
    Rng r2(rng());
    std::vector<std::vector<int>> sets(n);
    for (auto& s : sets) {
      for (int u = 0; u < 6; ++u) {
        if (r2() % 2) s.push_back(u);
      }
    }
    SetObjective cov = MakeCoverage(sets);
    EXPECT_TRUE(CheckMonotoneExhaustive(cov, n).passed);
    EXPECT_TRUE(CheckMonotone(cov, n, 200, t).passed);
    for (bool directed : {true, false}) {
      SetObjective cut = RandomCut(rng, n, directed);
      PropertyReport r = CheckMonotoneExhaustive(cut, n);
      EXPECT_FALSE(r.passed);
      ASSERT_TRUE(r.witness.has_value());
      EXPECT_LT(r.witness->gain_x, -kCheckTolerance);
    }
  }
}

TEST(SetObjective, EvalCountStrictlyIncreases) {
  SetObjective f = MakeCoverage({{0}, {1}, {0, 2}});
  uint64_t last = f.eval_count();
  for (int t = 0; t < 10; ++t) {
    f(ItemSet{t % 3});
    EXPECT_GT(f.eval_count(), last);
    last = f.eval_count();
  }
}

TEST(SetObjective, NonNegativeAndDeterministic) {
  Rng rng(41);
  for (int t = 0; t < 30; ++t) {
    const int n = 1 + t % 8;
    SetObjective f = MakeRandomObjective(rng, n, t % 2 == 0);
    for (int mask = 0; mask < (1 << n); ++mask) {
      ItemSet s;
      for (int e = 0; e < n; ++e) {
        if (mask >> e & 1) s.push_back(e);
      }
      const double v = f(s);
      EXPECT_GE(v, -kCheckTolerance);
      EXPECT_EQ(v, f(s));
    }
  }
}

TEST(GainState, MatchesDirectEvaluation) {
  Rng rng(43);
  for (int t = 0; t < 30; ++t) {
    const int n = 2 + t % 7;
    SetObjective f = MakeRandomObjective(rng, n, t % 2 == 0);
    auto state = f.NewState();
    ItemSet s;
    for (Item e : Range(n)) {
      if (rng() % 2) continue;
      for (Item c : Range(n)) {
        if (std::find(s.begin(), s.end(), c) != s.end()) continue;
        EXPECT_NEAR(state->Gain(c), Marginal(f, c, s), 1e-9) << f.label();
      }
      state->Add(e);
      s.push_back(e);
      EXPECT_NEAR(state->Value(), f(s), 1e-9);
    }
  }
}

}  // namespace
}  // namespace fairsub
