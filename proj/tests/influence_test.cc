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


#include "fairsub/influence.h"

#include <algorithm>
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "fairsub/errors.h"
#include "test_util.h"

namespace fairsub {
namespace {

Graph Path(double p) { return Graph(3, {{0, 1, p}, {1, 2, p}}); }

std::vector<int> Sizes(const std::vector<int>& groups, int m) {
  std::vector<int> sizes(m, 0);
  for (int g : groups) ++sizes[g];
  return sizes;
}

TEST(Spread, PathExamples) {
  Graph g = Path(0.5);
  const ItemSet a{0};
  EXPECT_EQ(Spread(a, EdgeRealization{1, 1}, g), 3);
  EXPECT_EQ(Spread(a, EdgeRealization{0, 0}, g), 1);
  EXPECT_EQ(Spread({}, EdgeRealization{1, 1}, g), 0);
}

TEST(Spread, SelfLoopIgnored) {
  Graph g(2, {{0, 0, 1.0}, {0, 1, 1.0}});
  const ItemSet a{0};
  EXPECT_EQ(Spread(a, EdgeRealization{1, 1}, g), 2);
}

TEST(IcEstimate, SingleEdge) {
  Graph g(2, {{0, 1, 0.5}});
  const ItemSet a{0};
  MeanEstimate m = IcEstimate(a, g, 4000, 3);
  EXPECT_NEAR(m.mean, 0.5, 3 * m.std_error);
  EXPECT_DOUBLE_EQ(IcExactValue(a, g), 0.5);
  EXPECT_DOUBLE_EQ(IcEstimate({}, g, 10, 3).mean, 0.0);
}

TEST(IcEstimate, FullReachabilityFromEverything) {
  Graph g(3, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}});
  const ItemSet all{0, 1, 2};
  EXPECT_DOUBLE_EQ(IcEstimate(all, g, 10, 0).mean, 0.0);
}

TEST(IcEstimate, ConvergesToExactEnumeration) {
  Rng rng(5);
  for (int t = 0; t < 4; ++t) {
    std::vector<Edge> edges;
    for (int u = 0; u < 7; ++u) {
      for (int v = 0; v < 7; ++v) {
        if (u != v && rng() % 5 == 0 && edges.size() < 14) edges.push_back({u, v, 0.3 + 0.1 * t});
      }
    }
    Graph g(7, edges);
    const ItemSet s{static_cast<Item>(t), 6};
    MeanEstimate m = IcEstimate(s, g, 20000, t);
    EXPECT_LE(std::abs(m.mean - IcExactValue(s, g)), 3 * m.std_error + 1e-12);
  }
}

TEST(IcObjective, SetObjectiveMatchesWorldAverage) {
  auto g = std::make_shared<const Graph>(Path(0.5));
  SetObjective f = MakeIcObjective(g, 64, 9);
  const ItemSet a{0};
  EXPECT_NEAR(f(a), IcObjectiveValue(a, *g, 64, 9), 1e-12);
  EXPECT_GE(f(a), 0.0);
}

TEST(RevealIc, LiveEdgeRevealsReachedNode) {
  Graph g = Path(0.5);
  IcObservation obs(g);
  RevealIc(obs, 0, EdgeRealization{1, 0}, g);
  EXPECT_EQ(obs.edge_state, (std::vector<signed char>{1, 0}));
  EXPECT_EQ(obs.num_active, 2);
  IcObservation again = obs;
  RevealIc(again, 0, EdgeRealization{1, 0}, g);
  EXPECT_EQ(again.edge_state, obs.edge_state);
  EXPECT_EQ(again.num_active, obs.num_active);
}

TEST(RevealIc, BlockedEdgeHidesDownstream) {
  Graph g = Path(0.5);
  IcObservation obs(g);
  RevealIc(obs, 0, EdgeRealization{0, 1}, g);
  EXPECT_EQ(obs.edge_state, (std::vector<signed char>{0, -1}));
}

TEST(RevealIc, IsolatedNode) {
  Graph g(3, {{0, 1, 0.5}});
  IcObservation obs(g);
  RevealIc(obs, 2, EdgeRealization{1}, g);
  EXPECT_EQ(obs.edge_state, (std::vector<signed char>{-1}));
  EXPECT_EQ(obs.selected, ItemSet{2});
}

TEST(RevealIc, NeverContradictsHiddenWorld) {
  Graph g = SyntheticPowerLawGraph({200}, 3).WithUniformProbability(0.3);
  for (uint64_t w = 0; w < 5; ++w) {
    EdgeRealization hidden = WorldRealization(g, w);
    IcObservation obs(g);
    for (Item e = 0; e < 200; e += 17) RevealIc(obs, e, hidden, g);
    for (int j = 0; j < g.num_edges(); ++j) {
      if (obs.edge_state[j] >= 0) EXPECT_EQ(obs.edge_state[j], hidden[j]);
    }
  }
}

TEST(AdaptiveIcMarginal, Examples) {
  Graph g = Path(0.5);
  IcObservation obs(g);
  RevealIc(obs, 0, EdgeRealization{1, 1}, g);
  // Node 1 is already active and its out-edge observed.
  EXPECT_DOUBLE_EQ(AdaptiveIcMarginalExact(1, obs, g), -1.0);
  EXPECT_DOUBLE_EQ(AdaptiveIcMarginal(1, obs, g, 100, 0), -1.0);

  Graph one(2, {{0, 1, 0.5}});
  IcObservation fresh(one);
  EXPECT_DOUBLE_EQ(AdaptiveIcMarginalExact(0, fresh, one), 0.5);
  EXPECT_NEAR(AdaptiveIcMarginal(0, fresh, one, 4000, 1), 0.5, 0.05);
}

TEST(AdaptiveIcMarginal, ActiveNodeCostsOne) {
  Graph g(3, {{0, 1, 0.5}, {1, 2, 0.5}});
  IcObservation obs(g);
  RevealIc(obs, 0, EdgeRealization{1, 0}, g);
  EXPECT_DOUBLE_EQ(AdaptiveIcMarginalExact(1, obs, g), -1.0);
}

TEST(IcAdaptiveInstance, ExactEstimatorIsAdaptiveSubmodular) {
  Rng rng(8);
  for (int t = 0; t < 3; ++t) {
    std::vector<Edge> edges;
    for (int u = 0; u < 6; ++u) {
      for (int v = 0; v < 6; ++v) {
        if (u != v && rng() % 4 == 0) edges.push_back({u, v, 0.4});
      }
    }
    IcAdaptiveInstance inst(std::make_shared<const Graph>(6, edges), IcEstimator{true, 0});
    AdaptivePropertyReport r = CheckAdaptiveSubmodular(inst, 20, t);
    EXPECT_TRUE(r.passed) << r.detail;
  }
}

TEST(Graph, ParseEdgeList) {
  Graph g = ParseEdgeList("# comment\n0 1\n\n1 2 0.25\n", 0.1);
  EXPECT_EQ(g.num_nodes(), 3);
  ASSERT_EQ(g.num_edges(), 2);
  EXPECT_DOUBLE_EQ(g.edge(0).p, 0.1);
  EXPECT_DOUBLE_EQ(g.edge(1).p, 0.25);
  EXPECT_EQ(ParseEdgeList("0 1\n", 0.1, 5).num_nodes(), 5);
}

TEST(Graph, ParseErrorsCarryLineNumbers) {
  ExpectErrorMessage(ErrorCode::kInput, "line 2", [] { ParseEdgeList("0 1\n0 x\n", 0.1); });
  ExpectErrorMessage(ErrorCode::kInput, "line 1", [] { ParseEdgeList("-1 2\n", 0.1); });
  ExpectErrorCode(ErrorCode::kInput, [] { ParseEdgeList("0 1 1.5\n", 0.1); });
  ExpectErrorCode(ErrorCode::kIo, [] { LoadEdgeList("/nonexistent/edges.txt", 0.1); });
}

TEST(Grouping, SingleGroup) {
  for (int g : RandomGroups(50, 1, 3)) EXPECT_EQ(g, 0);
  for (int g : GaussianGroups(50, 1, 0, 3)) EXPECT_EQ(g, 0);
  ExpectErrorCode(ErrorCode::kInput, [] { RandomGroups(5, 0, 1); });
  ExpectErrorCode(ErrorCode::kInput, [] { GaussianGroups(5, -2, 0, 1); });
}

TEST(Grouping, UniformSizesConcentrate) {
  // Binomial(10000, 1/5) has sd 40; 200 is five standard deviations.
  for (uint64_t seed = 0; seed < 5; ++seed) {
    for (int s : Sizes(RandomGroups(10000, 5, seed), 5)) {
      EXPECT_GE(s, 1800);
      EXPECT_LE(s, 2200);
    }
  }
}

TEST(Grouping, GaussianSizesUnimodalWithSmallestAtAnEnd) {
  std::vector<int> sizes = Sizes(GaussianGroups(10000, 10, 0, 7), 10);
  const int mode = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  EXPECT_GE(mode, 4);
  EXPECT_LE(mode, 5);
  for (int i = 0; i < mode; ++i) EXPECT_LE(sizes[i], sizes[i + 1]);
  for (int i = mode; i + 1 < 10; ++i) EXPECT_GE(sizes[i], sizes[i + 1]);
  const int k_min = *std::min_element(sizes.begin(), sizes.end());
  EXPECT_TRUE(sizes[0] == k_min || sizes[9] == k_min);
}

TEST(SyntheticPowerLawGraph, SimpleDirectedGraph) {
  Graph g = SyntheticPowerLawGraph({}, 1);
  EXPECT_EQ(g.num_nodes(), 500);
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : g.edges()) {
    EXPECT_NE(e.src, e.dst);
    EXPECT_TRUE(seen.insert({e.src, e.dst}).second);
  }
  EXPECT_GT(g.num_edges(), 0);
}

TEST(Spread, MonotoneInSeedsAndEdges) {
  Graph g = SyntheticPowerLawGraph({60}, 2).WithUniformProbability(0.3);
  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    EdgeRealization live = WorldRealization(g, t);
    ItemSet s;
    for (Item e = 0; e < 60; ++e) {
      if (rng() % 6 == 0) s.push_back(e);
    }
    const int base = Spread(s, live, g);
    EXPECT_GE(base, static_cast<int>(s.size()));
    ItemSet more = s;
    Item extra = static_cast<Item>(rng() % 60);
    if (std::find(more.begin(), more.end(), extra) == more.end()) {
      more.push_back(extra);
      std::sort(more.begin(), more.end());
    }
    EXPECT_GE(Spread(more, live, g), base);
    if (g.num_edges() > 0) {
      EdgeRealization flipped = live;
      flipped[rng() % g.num_edges()] = 1;
      EXPECT_GE(Spread(s, flipped, g), base);
    }
  }
}

}  // namespace
}  // namespace fairsub
