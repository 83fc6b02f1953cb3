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

// Independent cascade on directed graphs. Utility of a seed set S in a world
// is the number of nodes reachable from S over live edges, minus |S|.
//
// A "world" is identified by a 64-bit seed; edge j is live in world w iff
// HashToUnit(Mix64(w ^ Mix64(j))) < p_j. Every estimator draws worlds this
// way, so two candidate sets scored against the same world seeds see the
// same coin for every edge.

#ifndef FAIRSUB_INFLUENCE_H_
#define FAIRSUB_INFLUENCE_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fairsub/adaptive.h"
#include "fairsub/ground.h"
#include "fairsub/objective.h"
#include "fairsub/stats.h"

namespace fairsub {

struct Edge {
  int src = 0;
  int dst = 0;
  double p = 0.0;
};

class Graph {
 public:
  Graph() = default;
  // Throws InputError on endpoints outside [0, n) or p outside [0, 1].
  Graph(int n, std::vector<Edge> edges);

  int num_nodes() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int j) const { return edges_[j]; }
  const std::vector<Edge>& edges() const { return edges_; }
  // Ids of the edges leaving u, in input order.
  std::span<const int> out_edges(int u) const {
    return {out_ids_.data() + offset_[u], out_ids_.data() + offset_[u + 1]};
  }
  // Same topology with every activation probability replaced.
  Graph WithUniformProbability(double p) const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> offset_;
  std::vector<int> out_ids_;
};

// "src dst [p]" per line; '#' lines and blank lines ignored. Lines without a
// third column use `default_p`. The node count is max id + 1 unless
// `num_nodes` is larger. Errors carry the line number.
Graph ParseEdgeList(const std::string& text, double default_p,
                    int num_nodes = 0);
Graph LoadEdgeList(const std::string& path, double default_p,
                   int num_nodes = 0);

// Live (1) or blocked (0) per edge id.
using EdgeRealization = std::vector<char>;

bool EdgeLive(uint64_t world, int edge_id, double p);
EdgeRealization WorldRealization(const Graph& g, uint64_t world);

// Nodes reachable from S over live edges, S included.
int Spread(std::span<const Item> seeds, const EdgeRealization& live,
           const Graph& g);

// f(S) = E[spread] - |S| estimated over worlds DeriveSeed(seed, {w}),
// w < samples.
MeanEstimate IcEstimate(std::span<const Item> seeds, const Graph& g,
                        int samples, uint64_t seed);
double IcObjectiveValue(std::span<const Item> seeds, const Graph& g,
                        int samples, uint64_t seed);
// Per-world utilities spread - |S| on the given world seeds.
std::vector<double> IcWorldValues(std::span<const Item> seeds, const Graph& g,
                                  std::span<const uint64_t> worlds);
// Exact E[spread] - |S| by enumerating all 2^|E| realizations (|E| <= 24).
double IcExactValue(std::span<const Item> seeds, const Graph& g);

// SetObjective over the sample average of `samples` fixed worlds. The
// average is itself a coverage function minus a modular cost, so greedy gain
// states refresh lazily.
SetObjective MakeIcObjective(std::shared_ptr<const Graph> g, int samples,
                             uint64_t seed);

// What a policy has observed: edge states (-1 unknown, 0 blocked, 1 live),
// the active nodes, and the selected seeds.
struct IcObservation {
  explicit IcObservation(const Graph& g)
      : edge_state(g.num_edges(), -1), active(g.num_nodes(), 0) {}
  std::vector<signed char> edge_state;
  std::vector<char> active;
  ItemSet selected;
  int num_active = 0;
  int num_observed = 0;
};

// Selects e: marks every node reachable from e over live edges of `hidden`
// active and reveals every out-edge of those nodes. Re-selecting is a no-op.
void RevealIc(IcObservation& obs, Item e, const EdgeRealization& hidden,
              const Graph& g);

// Delta(e | obs) for f = spread - |S|: unobserved edges are drawn
// independently with their own probability in `samples` CRN worlds.
double AdaptiveIcMarginal(Item e, const IcObservation& obs, const Graph& g,
                          int samples, uint64_t seed);
// Same quantity by enumerating the unobserved edges (at most 20).
double AdaptiveIcMarginalExact(Item e, const IcObservation& obs,
                               const Graph& g);

struct IcEstimator {
  bool exact = false;
  int samples = 200;
};

class IcAdaptiveInstance : public AdaptiveInstance {
 public:
  IcAdaptiveInstance(std::shared_ptr<const Graph> g, IcEstimator estimator);

  int ground_size() const override { return g_->num_nodes(); }
  std::unique_ptr<Episode> NewEpisode(uint64_t seed) const override;
  std::optional<bool> monotone_hint() const override { return false; }
  std::string label() const override { return "independent_cascade"; }

  const Graph& graph() const { return *g_; }

 private:
  std::shared_ptr<const Graph> g_;
  IcEstimator estimator_;
};

// World seed of the hidden realization faced by every episode seeded
// `episode_seed`; lets non-adaptive sets be scored on the same worlds.
uint64_t HiddenWorldSeed(uint64_t episode_seed);

// Groupings. Uniform: each node independently uniform in [0, m). Gaussian:
// floor(x) for x ~ Normal(m / 2, sigma), clamped to [0, m - 1]; sigma <= 0
// selects the default m / 6.
std::vector<int> RandomGroups(int n, int m, uint64_t seed);
std::vector<int> GaussianGroups(int n, int m, double sigma, uint64_t seed);

struct SyntheticGraphOptions {
  int nodes = 500;
  // Out-degrees follow a discrete power law P(d) ~ d^-exponent on [1, cap]
  // for the fraction of nodes that are not sinks.
  double exponent = 2.1;
  int max_out_degree = 60;
  double sink_fraction = 0.5;
  // Destinations are drawn with probability proportional to a power-law
  // popularity weight (rank^-popularity).
  double popularity = 0.8;
};

// Directed power-law graph with no self-loops or parallel edges. Edge
// probabilities are 0; apply WithUniformProbability.
Graph SyntheticPowerLawGraph(const SyntheticGraphOptions& options,
                             uint64_t seed);

}  // namespace fairsub

#endif  // FAIRSUB_INFLUENCE_H_
