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
#include <fstream>
#include <numeric>
#include <sstream>

#include "fairsub/errors.h"
#include "fairsub/random.h"

namespace fairsub {
namespace {

constexpr uint64_t kHiddenStream = 0x68696464656eULL;
constexpr uint64_t kGainStream = 0x6761696eULL;

// Breadth-first reach from `sources` through nodes with blocked[v] == 0,
// following edges for which live(edge_id) holds. Marks reached nodes in
// `mark` with `stamp` and returns how many were reached.
template <typename Live>
int Reach(const Graph& g, std::span<const Item> sources,
          const std::vector<char>* blocked, Live&& live,
          std::vector<uint32_t>& mark, uint32_t stamp,
          std::vector<int>& queue) {
  queue.clear();
  for (Item s : sources) {
    if (blocked && (*blocked)[s]) continue;
    if (mark[s] == stamp) continue;
    mark[s] = stamp;
    queue.push_back(s);
  }
  for (size_t head = 0; head < queue.size(); ++head) {
    int u = queue[head];
    for (int j : g.out_edges(u)) {
      int v = g.edge(j).dst;
      if (mark[v] == stamp) continue;
      if (blocked && (*blocked)[v]) continue;
      if (!live(j)) continue;
      mark[v] = stamp;
      queue.push_back(v);
    }
  }
  return static_cast<int>(queue.size());
}

// Reusable BFS scratch space.
struct Scratch {
  explicit Scratch(int n) : mark(n, 0) {}
  uint32_t Next() {
    if (++stamp == 0) {
      std::fill(mark.begin(), mark.end(), 0);
      stamp = 1;
    }
    return stamp;
  }
  std::vector<uint32_t> mark;
  std::vector<int> queue;
  uint32_t stamp = 0;
};

void CheckSeeds(std::span<const Item> seeds, const Graph& g) {
  for (Item s : seeds) {
    if (s < 0 || s >= g.num_nodes()) throw InputError("seed node out of range");
  }
}

int DistinctCount(std::span<const Item> seeds) {
  ItemSet s(seeds.begin(), seeds.end());
  std::sort(s.begin(), s.end());
  return static_cast<int>(std::unique(s.begin(), s.end()) - s.begin());
}

// Fixed sample of worlds, stored as live-edge bitmaps.
struct WorldSample {
  std::shared_ptr<const Graph> g;
  int count = 0;
  std::vector<std::vector<uint64_t>> live;

  bool Live(int w, int j) const { return live[w][j >> 6] >> (j & 63) & 1u; }
};

std::shared_ptr<WorldSample> SampleWorlds(std::shared_ptr<const Graph> g,
                                          int samples, uint64_t seed) {
  auto ws = std::make_shared<WorldSample>();
  ws->count = samples;
  ws->live.resize(samples);
  const int m = g->num_edges();
  for (int w = 0; w < samples; ++w) {
    uint64_t world = DeriveSeed(seed, {static_cast<uint64_t>(w)});
    ws->live[w].assign((m + 63) / 64, 0);
    for (int j = 0; j < m; ++j) {
      if (EdgeLive(world, j, g->edge(j).p)) ws->live[w][j >> 6] |= 1ULL << (j & 63);
    }
  }
  ws->g = std::move(g);
  return ws;
}

class WorldCoverState : public GainState {
 public:
  WorldCoverState(std::shared_ptr<const WorldSample> ws, const SetObjective& f)
      : ws_(std::move(ws)),
        f_(f),
        n_(ws_->g->num_nodes()),
        covered_(static_cast<size_t>(ws_->count), std::vector<char>(n_, 0)),
        scratch_(n_) {}

  double Gain(Item e) override {
    f_.RecordCalls(1);
    long total = 0;
    const Graph& g = *ws_->g;
    for (int w = 0; w < ws_->count; ++w) {
      total += Reach(g, {&e, 1}, &covered_[w],
                     [&](int j) { return ws_->Live(w, j); }, scratch_.mark,
                     scratch_.Next(), scratch_.queue);
    }
    return static_cast<double>(total) / ws_->count - 1.0;
  }

  void Add(Item e) override {
    f_.RecordCalls(1);
    const Graph& g = *ws_->g;
    for (int w = 0; w < ws_->count; ++w) {
      Reach(g, {&e, 1}, &covered_[w], [&](int j) { return ws_->Live(w, j); },
            scratch_.mark, scratch_.Next(), scratch_.queue);
      for (int v : scratch_.queue) covered_[w][v] = 1;
      covered_total_ += static_cast<long>(scratch_.queue.size());
    }
    items_.push_back(e);
  }

  double Value() const override {
    return static_cast<double>(covered_total_) / ws_->count -
           static_cast<double>(items_.size());
  }
  std::span<const Item> items() const override { return items_; }
  bool diminishing() const override { return true; }

 private:
  std::shared_ptr<const WorldSample> ws_;
  SetObjective f_;
  int n_;
  std::vector<std::vector<char>> covered_;
  long covered_total_ = 0;
  ItemSet items_;
  Scratch scratch_;
};

// Unobserved edges that can matter for reach avoiding the active nodes.
std::vector<int> FreeEdges(const IcObservation& obs, const Graph& g) {
  std::vector<int> free;
  for (int j = 0; j < g.num_edges(); ++j) {
    if (obs.edge_state[j] >= 0) continue;
    if (obs.active[g.edge(j).src] || obs.active[g.edge(j).dst]) continue;
    free.push_back(j);
  }
  return free;
}

// E[# newly active nodes from `extra`] given obs, by enumeration.
double ExactNewReach(std::span<const Item> extra, const IcObservation& obs,
                     const Graph& g, Scratch& scratch) {
  std::vector<int> free = FreeEdges(obs, g);
  if (free.size() > 20) {
    throw CapabilityError("exact cascade marginals support at most 20 "
                          "unobserved edges");
  }
  std::vector<signed char> state = obs.edge_state;
  double total = 0.0;
  for (uint32_t mask = 0; mask < (1u << free.size()); ++mask) {
    double prob = 1.0;
    for (size_t k = 0; k < free.size(); ++k) {
      bool on = mask >> k & 1u;
      double p = g.edge(free[k]).p;
      prob *= on ? p : 1.0 - p;
      state[free[k]] = on;
    }
    if (prob == 0.0) continue;
    int reached = Reach(g, extra, &obs.active, [&](int j) { return state[j] == 1; },
                        scratch.mark, scratch.Next(), scratch.queue);
    total += prob * reached;
  }
  return total;
}

double SampledNewReach(std::span<const Item> extra, const IcObservation& obs,
                       const Graph& g, std::span<const uint64_t> worlds,
                       Scratch& scratch) {
  long total = 0;
  for (uint64_t world : worlds) {
    total += Reach(g, extra, &obs.active,
                   [&](int j) {
                     int s = obs.edge_state[j];
                     return s >= 0 ? s == 1 : EdgeLive(world, j, g.edge(j).p);
                   },
                   scratch.mark, scratch.Next(), scratch.queue);
  }
  return static_cast<double>(total) / static_cast<double>(worlds.size());
}

std::vector<uint64_t> GainWorlds(uint64_t seed, int samples) {
  std::vector<uint64_t> worlds(samples);
  for (int w = 0; w < samples; ++w) {
    worlds[w] = DeriveSeed(seed, {kGainStream, static_cast<uint64_t>(w)});
  }
  return worlds;
}

class IcEpisode : public Episode {
 public:
  IcEpisode(std::shared_ptr<const Graph> g, IcEstimator estimator,
            uint64_t seed)
      : g_(std::move(g)),
        estimator_(estimator),
        obs_(*g_),
        hidden_(WorldRealization(*g_, HiddenWorldSeed(seed))),
        worlds_(estimator.exact ? std::vector<uint64_t>{}
                                : GainWorlds(seed, estimator.samples)),
        scratch_(g_->num_nodes()) {}

  void Gains(std::span<const Item> candidates,
             std::span<double> out) override {
    for (size_t k = 0; k < candidates.size(); ++k) {
      Item e = candidates[k];
      if (obs_.active[e]) {
        out[k] = -1.0;
        continue;
      }
      out[k] = NewReach({&e, 1}) - 1.0;
    }
  }
  void Commit(Item e) override {
    if (std::find(obs_.selected.begin(), obs_.selected.end(), e) !=
        obs_.selected.end()) {
      throw ContractError("node already selected");
    }
    RevealIc(obs_, e, hidden_, *g_);
  }
  // Per world, reach avoiding a growing active set can only shrink.
  bool diminishing() const override { return !estimator_.exact; }

  double ConditionalValue(std::span<const Item> extra) override {
    return obs_.num_active + NewReach(extra) -
           static_cast<double>(obs_.selected.size() + extra.size());
  }
  double RealizedValue() override {
    return obs_.num_active - static_cast<double>(obs_.selected.size());
  }
  const ItemSet& selected() const override { return obs_.selected; }
  bool exact() const override { return estimator_.exact; }
  int observations() const override { return obs_.num_observed; }

 private:
  double NewReach(std::span<const Item> extra) {
    if (estimator_.exact) return ExactNewReach(extra, obs_, *g_, scratch_);
    return SampledNewReach(extra, obs_, *g_, worlds_, scratch_);
  }

  std::shared_ptr<const Graph> g_;
  IcEstimator estimator_;
  IcObservation obs_;
  EdgeRealization hidden_;
  std::vector<uint64_t> worlds_;
  Scratch scratch_;
};

// Inverse-CDF sampler for a finite discrete distribution.
class Discrete {
 public:
  explicit Discrete(std::vector<double> weights) : cumulative_(weights.size()) {
    std::partial_sum(weights.begin(), weights.end(), cumulative_.begin());
  }
  int Draw(Rng& rng) const {
    double u = HashToUnit(rng()) * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return static_cast<int>(
        std::min<size_t>(it - cumulative_.begin(), cumulative_.size() - 1));
  }

 private:
  std::vector<double> cumulative_;
};

double StandardNormal(Rng& rng) {
  // Box-Muller on 53-bit uniforms; portable across standard libraries.
  double u1 = HashToUnit(rng());
  double u2 = HashToUnit(rng());
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw InputError("negative node count");
  offset_.assign(n + 1, 0);
  for (size_t j = 0; j < edges_.size(); ++j) {
    const Edge& e = edges_[j];
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n) {
      throw InputError("edge " + std::to_string(j) + " has an endpoint outside [0, " +
                       std::to_string(n) + ")");
    }
    if (!(e.p >= 0.0 && e.p <= 1.0)) {
      throw InputError("edge " + std::to_string(j) +
                       " has activation probability outside [0, 1]");
    }
    ++offset_[e.src + 1];
  }
  std::partial_sum(offset_.begin(), offset_.end(), offset_.begin());
  out_ids_.resize(edges_.size());
  std::vector<int> fill(offset_.begin(), offset_.end() - 1);
  for (size_t j = 0; j < edges_.size(); ++j) {
    out_ids_[fill[edges_[j].src]++] = static_cast<int>(j);
  }
}

Graph Graph::WithUniformProbability(double p) const {
  std::vector<Edge> edges = edges_;
  for (Edge& e : edges) e.p = p;
  return Graph(n_, std::move(edges));
}

Graph ParseEdgeList(const std::string& text, double default_p, int num_nodes) {
  std::istringstream in(text);
  std::string line;
  std::vector<Edge> edges;
  int top = -1;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long long src = -1, dst = -1;
    std::string extra;
    if (!(fields >> src >> dst) || src < 0 || dst < 0) {
      throw InputError("line " + std::to_string(line_no) +
                       ": expected two non-negative node ids");
    }
    double p = default_p;
    if (fields >> extra) {
      try {
        size_t used = 0;
        p = std::stod(extra, &used);
        if (used != extra.size()) throw std::invalid_argument(extra);
      } catch (const std::exception&) {
        throw InputError("line " + std::to_string(line_no) +
                         ": bad activation probability '" + extra + "'");
      }
      if (fields >> extra) {
        throw InputError("line " + std::to_string(line_no) +
                         ": too many columns");
      }
    }
    if (!(p >= 0.0 && p <= 1.0)) {
      throw InputError("line " + std::to_string(line_no) +
                       ": activation probability outside [0, 1]");
    }
    if (src > (1LL << 30) || dst > (1LL << 30)) {
      throw InputError("line " + std::to_string(line_no) + ": node id too large");
    }
    top = std::max<int>(top, static_cast<int>(std::max(src, dst)));
    edges.push_back({static_cast<int>(src), static_cast<int>(dst), p});
  }
  return Graph(std::max(top + 1, num_nodes), std::move(edges));
}

Graph LoadEdgeList(const std::string& path, double default_p, int num_nodes) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open edge list '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseEdgeList(buffer.str(), default_p, num_nodes);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

bool EdgeLive(uint64_t world, int edge_id, double p) {
  if (p >= 1.0) return true;
  if (p <= 0.0) return false;
  return HashToUnit(Mix64(world ^ Mix64(static_cast<uint64_t>(edge_id)))) < p;
}

EdgeRealization WorldRealization(const Graph& g, uint64_t world) {
  EdgeRealization r(g.num_edges());
  for (int j = 0; j < g.num_edges(); ++j) r[j] = EdgeLive(world, j, g.edge(j).p);
  return r;
}

int Spread(std::span<const Item> seeds, const EdgeRealization& live,
           const Graph& g) {
  CheckSeeds(seeds, g);
  if (static_cast<int>(live.size()) != g.num_edges()) {
    throw InputError("edge realization has the wrong length");
  }
  Scratch scratch(g.num_nodes());
  return Reach(g, seeds, nullptr, [&](int j) { return live[j] != 0; },
               scratch.mark, scratch.Next(), scratch.queue);
}

std::vector<double> IcWorldValues(std::span<const Item> seeds, const Graph& g,
                                  std::span<const uint64_t> worlds) {
  CheckSeeds(seeds, g);
  Scratch scratch(g.num_nodes());
  const double cost = DistinctCount(seeds);
  std::vector<double> values;
  values.reserve(worlds.size());
  for (uint64_t world : worlds) {
    int reached = Reach(g, seeds, nullptr,
                        [&](int j) { return EdgeLive(world, j, g.edge(j).p); },
                        scratch.mark, scratch.Next(), scratch.queue);
    values.push_back(reached - cost);
  }
  return values;
}

MeanEstimate IcEstimate(std::span<const Item> seeds, const Graph& g,
                        int samples, uint64_t seed) {
  if (samples < 1) throw InputError("samples must be positive");
  std::vector<uint64_t> worlds(samples);
  for (int w = 0; w < samples; ++w) {
    worlds[w] = DeriveSeed(seed, {static_cast<uint64_t>(w)});
  }
  std::vector<double> values = IcWorldValues(seeds, g, worlds);
  return Summarize(values);
}

double IcObjectiveValue(std::span<const Item> seeds, const Graph& g,
                        int samples, uint64_t seed) {
  if (seeds.empty()) return 0.0;
  return IcEstimate(seeds, g, samples, seed).mean;
}

double IcExactValue(std::span<const Item> seeds, const Graph& g) {
  CheckSeeds(seeds, g);
  if (g.num_edges() > 24) {
    throw CapabilityError("exact cascade values support at most 24 edges");
  }
  Scratch scratch(g.num_nodes());
  double total = 0.0;
  const int m = g.num_edges();
  for (uint32_t mask = 0; mask < (1u << m); ++mask) {
    double prob = 1.0;
    for (int j = 0; j < m && prob > 0.0; ++j) {
      prob *= (mask >> j & 1u) ? g.edge(j).p : 1.0 - g.edge(j).p;
    }
    if (prob == 0.0) continue;
    total += prob * Reach(g, seeds, nullptr,
                          [&](int j) { return (mask >> j & 1u) != 0; },
                          scratch.mark, scratch.Next(), scratch.queue);
  }
  return total - DistinctCount(seeds);
}

SetObjective MakeIcObjective(std::shared_ptr<const Graph> g, int samples,
                             uint64_t seed) {
  if (samples < 1) throw InputError("samples must be positive");
  std::shared_ptr<const WorldSample> ws = SampleWorlds(g, samples, seed);
  SetObjective f(
      g->num_nodes(),
      [ws](std::span<const Item> set) {
        const Graph& graph = *ws->g;
        CheckSeeds(set, graph);
        Scratch scratch(graph.num_nodes());
        long total = 0;
        for (int w = 0; w < ws->count; ++w) {
          total += Reach(graph, set, nullptr,
                         [&](int j) { return ws->Live(w, j); }, scratch.mark,
                         scratch.Next(), scratch.queue);
        }
        return static_cast<double>(total) / ws->count - DistinctCount(set);
      },
      std::nullopt, "independent_cascade");
  // Not monotone: a seed that is already reached costs 1 and adds nothing.
  f.set_state_factory([ws](const SetObjective& self) {
    return std::make_unique<WorldCoverState>(ws, self);
  });
  f.set_note("sample average over " + std::to_string(samples) +
             " fixed cascade worlds");
  return f;
}

void RevealIc(IcObservation& obs, Item e, const EdgeRealization& hidden,
              const Graph& g) {
  if (e < 0 || e >= g.num_nodes()) throw InputError("node out of range");
  if (std::find(obs.selected.begin(), obs.selected.end(), e) !=
      obs.selected.end()) {
    return;
  }
  obs.selected.push_back(e);
  std::vector<int> queue;
  auto activate = [&](int v) {
    if (obs.active[v]) return;
    obs.active[v] = 1;
    ++obs.num_active;
    queue.push_back(v);
  };
  // An already-active seed has all its out-edges revealed already.
  activate(e);
  for (size_t head = 0; head < queue.size(); ++head) {
    int u = queue[head];
    for (int j : g.out_edges(u)) {
      if (obs.edge_state[j] < 0) {
        obs.edge_state[j] = hidden[j];
        ++obs.num_observed;
      }
      if (obs.edge_state[j] == 1) activate(g.edge(j).dst);
    }
  }
}

double AdaptiveIcMarginal(Item e, const IcObservation& obs, const Graph& g,
                          int samples, uint64_t seed) {
  if (samples < 1) throw InputError("samples must be positive");
  if (obs.active[e]) return -1.0;
  Scratch scratch(g.num_nodes());
  std::vector<uint64_t> worlds(samples);
  for (int w = 0; w < samples; ++w) {
    worlds[w] = DeriveSeed(seed, {static_cast<uint64_t>(w)});
  }
  return SampledNewReach({&e, 1}, obs, g, worlds, scratch) - 1.0;
}

double AdaptiveIcMarginalExact(Item e, const IcObservation& obs,
                               const Graph& g) {
  if (obs.active[e]) return -1.0;
  Scratch scratch(g.num_nodes());
  return ExactNewReach({&e, 1}, obs, g, scratch) - 1.0;
}

IcAdaptiveInstance::IcAdaptiveInstance(std::shared_ptr<const Graph> g,
                                       IcEstimator estimator)
    : g_(std::move(g)), estimator_(estimator) {
  if (!estimator_.exact && estimator_.samples < 1) {
    throw InputError("samples must be positive");
  }
}

std::unique_ptr<Episode> IcAdaptiveInstance::NewEpisode(uint64_t seed) const {
  return std::make_unique<IcEpisode>(g_, estimator_, seed);
}

uint64_t HiddenWorldSeed(uint64_t episode_seed) {
  return DeriveSeed(episode_seed, {kHiddenStream});
}

std::vector<int> RandomGroups(int n, int m, uint64_t seed) {
  if (m <= 0) throw InputError("number of groups must be positive");
  if (n < 0) throw InputError("negative node count");
  Rng rng(seed);
  std::vector<int> group(n);
  for (int& g : group) g = static_cast<int>(rng() % static_cast<uint64_t>(m));
  return group;
}

std::vector<int> GaussianGroups(int n, int m, double sigma, uint64_t seed) {
  if (m <= 0) throw InputError("number of groups must be positive");
  if (n < 0) throw InputError("negative node count");
  if (!(sigma > 0.0)) sigma = m / 6.0;
  Rng rng(seed);
  std::vector<int> group(n);
  for (int& g : group) {
    double x = m / 2.0 + sigma * StandardNormal(rng);
    g = static_cast<int>(std::clamp(std::floor(x), 0.0, m - 1.0));
  }
  return group;
}

Graph SyntheticPowerLawGraph(const SyntheticGraphOptions& o, uint64_t seed) {
  if (o.nodes < 2) throw InputError("synthetic graphs need at least 2 nodes");
  if (o.max_out_degree < 1) throw InputError("max_out_degree must be positive");
  if (!(o.sink_fraction >= 0.0 && o.sink_fraction <= 1.0)) {
    throw InputError("sink_fraction must be in [0, 1]");
  }
  Rng rng(seed);
  const int cap = std::min(o.max_out_degree, o.nodes - 1);
  std::vector<double> degree_weight(cap);
  for (int d = 1; d <= cap; ++d) degree_weight[d - 1] = std::pow(d, -o.exponent);
  Discrete degree(degree_weight);

  std::vector<int> rank(o.nodes);
  std::iota(rank.begin(), rank.end(), 0);
  std::shuffle(rank.begin(), rank.end(), rng);
  std::vector<double> popularity(o.nodes);
  for (int v = 0; v < o.nodes; ++v) {
    popularity[v] = std::pow(rank[v] + 1.0, -o.popularity);
  }
  Discrete target(popularity);

  std::vector<Edge> edges;
  std::vector<char> used(o.nodes, 0);
  for (int u = 0; u < o.nodes; ++u) {
    if (HashToUnit(rng()) < o.sink_fraction) continue;
    int d = degree.Draw(rng) + 1;
    std::vector<int> picked;
    int attempts = 0;
    while (static_cast<int>(picked.size()) < d && attempts < 50 * d) {
      ++attempts;
      int v = target.Draw(rng);
      if (v == u || used[v]) continue;
      used[v] = 1;
      picked.push_back(v);
    }
    std::sort(picked.begin(), picked.end());
    for (int v : picked) {
      used[v] = 0;
      edges.push_back({u, v, 0.0});
    }
  }
  return Graph(o.nodes, std::move(edges));
}

}  // namespace fairsub
