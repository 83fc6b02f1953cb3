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


#include "fairsub/ground.h"

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "fairsub/errors.h"
#include "test_util.h"

namespace fairsub {
namespace {

TEST(GroupCounts, CountsPerGroup) {
  auto g = GroupedGroundSet::FromAssignment({0, 0, 1, 1, 1}, 2);
  EXPECT_EQ(GroupCounts(ItemSet{0, 2, 3}, g), (std::vector<int>{1, 2}));
}

TEST(GroupCounts, EmptySet) {
  auto g = GroupedGroundSet::FromAssignment({0, 1, 2, 2}, 3);
  EXPECT_EQ(GroupCounts(ItemSet{}, g), (std::vector<int>{0, 0, 0}));
}

TEST(GroupCounts, FullSet) {
  const int sizes[] = {4, 6};
  auto g = GroupedGroundSet::FromSizes(sizes);
  ItemSet all(10);
  for (int e = 0; e < 10; ++e) all[e] = e;
  EXPECT_EQ(GroupCounts(all, g), (std::vector<int>{4, 6}));
}

TEST(GroupCounts, OutOfRangeItemIsInputError) {
  auto g = GroupedGroundSet::FromAssignment({0, 1}, 2);
  ExpectErrorCode(ErrorCode::kInput, [&] { GroupCounts(ItemSet{2}, g); });
  ExpectErrorCode(ErrorCode::kInput, [&] { GroupCounts(ItemSet{-1}, g); });
}

TEST(GroupCounts, IgnoresInsertionOrder) {
  std::mt19937_64 rng(5);
  auto g = GroupedGroundSet::FromAssignment({0, 2, 1, 1, 0, 2, 2}, 3);
  ItemSet s = {6, 0, 3, 5, 1};
  const std::vector<int> want = GroupCounts(s, g);
  for (int t = 0; t < 20; ++t) {
    std::shuffle(s.begin(), s.end(), rng);
    EXPECT_EQ(GroupCounts(s, g), want);
  }
}

TEST(IsGroupEqual, Examples) {
  EXPECT_TRUE(CountsGroupEqual(std::vector<int>{3, 3, 3}, 0));
  EXPECT_FALSE(CountsGroupEqual(std::vector<int>{4, 2}, 1));
  EXPECT_TRUE(CountsGroupEqual(std::vector<int>{4, 2}, 2));
}

TEST(IsGroupEqual, OnSets) {
  auto g = GroupedGroundSet::FromAssignment({0, 0, 1, 1}, 2);
  EXPECT_TRUE(IsGroupEqual(ItemSet{0, 2}, g, 0));
  EXPECT_FALSE(IsGroupEqual(ItemSet{0, 1}, g, 1));
  EXPECT_TRUE(IsGroupEqual(ItemSet{0, 1, 2}, g, 1));
}

TEST(SemiFeasibleBound, Examples) {
  const int a[] = {5, 3};
  auto g = GroupedGroundSet::FromSizes(a);
  EXPECT_EQ(SemiFeasibleBound(g, 1, 0), 2);
  EXPECT_EQ(SemiFeasibleBound(g, 1, 1), 1);
  const int b[] = {2, 2};
  EXPECT_EQ(SemiFeasibleBound(GroupedGroundSet::FromSizes(b), 0, 0), 1);
}

TEST(SemiFeasibleBound, WithinSlackOfHalfSmallestGroup) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 500; ++t) {
    std::vector<int> sizes(1 + rng() % 4);
    for (int& k : sizes) k = rng() % 9;
    auto g = GroupedGroundSet::FromSizes(sizes);
    const int alpha = rng() % 4;
    const int half = g.min_group_size() / 2;
    std::vector<int> bounds = SemiFeasibleBounds(g, alpha);
    for (int i = 0; i < g.num_groups(); ++i) {
      EXPECT_GE(bounds[i], half);
      EXPECT_LE(bounds[i], half + alpha);
    }
    EXPECT_TRUE(CountsGroupEqual(bounds, alpha));
  }
}

TEST(IsSemiFeasible, ConjunctionOfBounds) {
  const int sizes[] = {5, 3};
  auto g = GroupedGroundSet::FromSizes(sizes);
  EXPECT_TRUE(IsSemiFeasible(ItemSet{0, 1, 5}, g, 1));
  EXPECT_FALSE(IsSemiFeasible(ItemSet{0, 5, 6}, g, 1));
  EXPECT_FALSE(IsSemiFeasible(ItemSet{0, 1, 2}, g, 1));
}

TEST(DisjointPadding, SingletonDeficit) {
  auto g = GroupedGroundSet::FromAssignment({0, 0, 1, 1, 1, 1}, 2);
  const int target[] = {1, 1};
  Padding p = DisjointPadding(ItemSet{0}, g, target);
  EXPECT_EQ(p.x, ItemSet{2});
  EXPECT_EQ(p.y, ItemSet{3});
}

TEST(DisjointPadding, TargetsAlreadyMet) {
  auto g = GroupedGroundSet::FromAssignment({0, 0, 1, 1}, 2);
  const int target[] = {1, 1};
  Padding p = DisjointPadding(ItemSet{1, 3}, g, target);
  EXPECT_TRUE(p.x.empty());
  EXPECT_TRUE(p.y.empty());
}

TEST(DisjointPadding, ExactlyEnoughSpareItems) {
  auto g = GroupedGroundSet::FromAssignment({0, 0, 0}, 1);
  const int target[] = {2};
  Padding p = DisjointPadding(ItemSet{1}, g, target);
  EXPECT_EQ(p.x, ItemSet{0});
  EXPECT_EQ(p.y, ItemSet{2});
}

TEST(DisjointPadding, TooFewSpareItemsIsInfeasible) {
  auto g = GroupedGroundSet::FromAssignment({0, 0, 0}, 1);
  const int target[] = {3};
  ExpectErrorCode(ErrorCode::kInfeasible, [&] { DisjointPadding(ItemSet{1}, g, target); });
}

TEST(DisjointPadding, ShuffledAndRankedKeepTheContract) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    std::vector<int> sizes(1 + rng() % 3);
    for (int& k : sizes) k = 2 + rng() % 6;
    auto g = GroupedGroundSet::FromSizes(sizes);
    ItemSet s;
    std::vector<int> target(sizes.size());
    for (int i = 0; i < g.num_groups(); ++i) {
      const int have = rng() % (g.group_size(i) / 2 + 1);
      for (int k = 0; k < have; ++k) s.push_back(g.members(i)[k]);
      target[i] = have + rng() % ((g.group_size(i) - have) / 2 + 1);
    }
    std::vector<double> priority(g.size());
    for (double& v : priority) v = static_cast<double>(rng() % 5);
    for (const Padding& p : {DisjointPadding(s, g, target),
                             DisjointPadding(s, g, target, rng()),
                             RankedDisjointPadding(s, g, target, priority)}) {
      std::vector<int> hits(g.size(), 0);
      for (const ItemSet* part : {static_cast<const ItemSet*>(&s), &p.x, &p.y}) {
        for (Item e : *part) ++hits[e];
      }
      EXPECT_TRUE(std::all_of(hits.begin(), hits.end(), [](int h) { return h <= 1; }));
      std::vector<int> counts = GroupCounts(s, g);
      for (const ItemSet* side : {&p.x, &p.y}) {
        ItemSet u = s;
        u.insert(u.end(), side->begin(), side->end());
        std::vector<int> got = GroupCounts(u, g);
        for (int i = 0; i < g.num_groups(); ++i) {
          EXPECT_EQ(got[i], std::max(target[i], counts[i]));
        }
      }
    }
  }
}

TEST(DisjointPadding, RankedTakesHighPriorityFirst) {
  auto g = GroupedGroundSet::FromAssignment({0, 0, 0, 0}, 1);
  const int target[] = {2};
  const double priority[] = {0.1, 0.9, 0.5, 0.7};
  Padding p = RankedDisjointPadding(ItemSet{}, g, target, priority);
  EXPECT_EQ(p.x, (ItemSet{1, 2}));
  EXPECT_EQ(p.y, (ItemSet{3, 0}));
}

TEST(EquityFeasible, Examples) {
  auto g = GroupedGroundSet::FromAssignment({0, 0, 1, 1}, 2);
  FairnessSpec spec;
  spec.equity = EquityBounds{{1, 1}, {2, 2}};
  spec.cardinality = 3;
  EXPECT_TRUE(EquityFeasible(ItemSet{0, 2, 3}, g, spec));
  spec.cardinality.reset();
  EXPECT_FALSE(EquityFeasible(ItemSet{2, 3}, g, spec));
  spec.equity = EquityBounds{{0, 0}, {2, 2}};
  spec.cardinality = 1;
  EXPECT_FALSE(EquityFeasible(ItemSet{0, 2}, g, spec));
}

TEST(FairnessSpec, ValidateRejectsBadBounds) {
  auto g = GroupedGroundSet::FromAssignment({0, 0, 1}, 2);
  FairnessSpec spec;
  spec.alpha = 4;
  ExpectErrorCode(ErrorCode::kInput, [&] { spec.Validate(g); });
  spec.alpha = 1;
  spec.equity = EquityBounds{{2, 0}, {1, 1}};
  ExpectErrorCode(ErrorCode::kInput, [&] { spec.Validate(g); });
  spec.equity = EquityBounds{{0, 0}, {2, 2}};
  ExpectErrorCode(ErrorCode::kInput, [&] { spec.Validate(g); });
  spec.equity = EquityBounds{{0, 1}, {2, 1}};
  EXPECT_NO_THROW(spec.Validate(g));
}

TEST(GroupedGroundSet, EmptyGroupsAndMinSize) {
  auto g = GroupedGroundSet::FromAssignment({1, 1, 2}, 3);
  EXPECT_EQ(g.min_group_size(), 0);
  EXPECT_EQ(g.group_sizes(), (std::vector<int>{0, 2, 1}));
  ExpectErrorCode(ErrorCode::kInput, [] { GroupedGroundSet::FromAssignment({0, 3}, 3); });
}

TEST(ParseGroupAssignment, ReadsAndValidates) {
  auto g = ParseGroupAssignment("# items\n0 1\n2 0\n\n1 1\n");
  EXPECT_EQ(g.size(), 3);
  EXPECT_EQ(g.group_of(0), 1);
  EXPECT_EQ(g.group_of(2), 0);
  ExpectErrorMessage(ErrorCode::kInput, "line 2", [] { ParseGroupAssignment("0 0\n0 1\n"); });
  ExpectErrorCode(ErrorCode::kInput, [] { ParseGroupAssignment("0 0\n2 0\n"); });
  ExpectErrorCode(ErrorCode::kInput, [] { ParseGroupAssignment("0 x\n"); });
  ExpectErrorCode(ErrorCode::kIo, [] { LoadGroupFile("/nonexistent/groups.txt"); });
}

}  // namespace
}  // namespace fairsub
