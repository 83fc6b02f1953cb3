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

#include "fairsub/adaptive.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fairsub/errors.h"

namespace fairsub {
namespace {

constexpr double kSumTolerance = 1e-9;
constexpr uint64_t kHiddenStream = 0x68696464656eULL;
constexpr uint64_t kGainStream = 0x6761696eULL;
constexpr uint64_t kValueStream = 0x76616cULL;
constexpr uint64_t kBackupStream = 0x6261636bULL;

size_t PickWeighted(std::span<const double> cumulative, Rng& rng) {
  double u = HashToUnit(rng()) * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  size_t k = static_cast<size_t>(it - cumulative.begin());
  return std::min(k, cumulative.size() - 1);
}

State SampleState(std::span<const double> dist, Rng& rng) {
  double u = HashToUnit(rng());
  double acc = 0.0;
  State last = 0;
  for (size_t s = 0; s < dist.size(); ++s) {
    if (dist[s] <= 0.0) continue;
    acc += dist[s];
    last = static_cast<State>(s);
    if (u < acc) return last;
  }
  return last;
}

void CheckStates(std::span<const State> phi, int n) {
  if (static_cast<int>(phi.size()) != n) {
    throw InputError("realization has the wrong length");
  }
  for (State s : phi) {
    if (s < 0) throw InputError("states must be non-negative");
  }
}

// The weighted realizations consistent with psi, with their total mass.
struct Conditional {
  std::vector<const WeightedRealization*> members;
  double mass = 0.0;
};

Conditional Condition(std::span<const WeightedRealization> support,
                      const PartialRealization& psi) {
  Conditional c;
  for (const WeightedRealization& w : support) {
    if (psi.ConsistentWith(w.states)) {
      c.members.push_back(&w);
      c.mass += w.probability;
    }
  }
  if (c.members.empty() || !(c.mass > 0.0)) {
    throw ContractError("partial realization has zero probability");
  }
  return c;
}

// E[h(Phi) | psi] by enumeration or sampling.
template <typename H>
double ConditionalExpectation(const StatePrior& prior,
                              const PartialRealization& psi,
                              const EstimatorConfig& cfg, uint64_t seed,
                              H&& h) {
  if (cfg.exact) {
    if (prior.kind() == StatePrior::Kind::kGenerative) {
      throw CapabilityError("exact estimates need an enumerable prior");
    }
    std::vector<WeightedRealization> support = prior.Support(cfg.max_support);
    Conditional c = Condition(support, psi);
    double total = 0.0;
    for (const WeightedRealization* w : c.members) {
      total += w->probability * h(w->states);
    }
    return total / c.mass;
  }
  if (cfg.samples < 1) throw InputError("samples must be positive");
  Rng rng(seed);
  double total = 0.0;
  for (int k = 0; k < cfg.samples; ++k) {
    total += h(prior.SampleConditional(psi, rng));
  }
  return total / cfg.samples;
}

ItemSet Concat(std::span<const Item> a, std::span<const Item> b) {
  ItemSet out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

class TabularEpisode : public Episode {
 public:
  TabularEpisode(const TabularInstance& instance,
                 std::shared_ptr<const std::vector<WeightedRealization>> support,
                 uint64_t seed)
      : prior_(instance.prior()),
        f_(instance.objective()),
        cfg_(instance.estimator()),
        support_(std::move(support)),
        psi_(instance.ground_size()),
        seed_(seed) {
    Rng rng(DeriveSeed(seed, {kHiddenStream}));
    hidden_ = prior_.Sample(rng);
    if (support_) {
      for (const WeightedRealization& w : *support_) {
        consistent_.push_back(&w);
        mass_ += w.probability;
      }
    }
  }

  void Gains(std::span<const Item> candidates,
             std::span<double> out) override {
    std::fill(out.begin(), out.end(), 0.0);
    auto accumulate = [&](std::span<const State> phi, double weight) {
      double base = f_(selected_, phi);
      for (size_t k = 0; k < candidates.size(); ++k) {
        scratch_ = selected_;
        scratch_.push_back(candidates[k]);
        out[k] += weight * (f_(scratch_, phi) - base);
      }
    };
    if (support_) {
      for (const WeightedRealization* w : consistent_) {
        accumulate(w->states, w->probability);
      }
      for (double& g : out) g /= mass_;
      return;
    }
    Rng rng(DeriveSeed(seed_, {kGainStream, step_}));
    for (int k = 0; k < cfg_.samples; ++k) {
      accumulate(prior_.SampleConditional(psi_, rng), 1.0);
    }
    for (double& g : out) g /= cfg_.samples;
  }

  void Commit(Item e) override {
    if (psi_.Contains(e)) throw ContractError("item already selected");
    psi_.Observe(e, hidden_[e]);
    selected_.push_back(e);
    ++step_;
    if (support_) {
      std::vector<const WeightedRealization*> kept;
      double mass = 0.0;
      for (const WeightedRealization* w : consistent_) {
        if (w->states[e] == hidden_[e]) {
          kept.push_back(w);
          mass += w->probability;
        }
      }
      consistent_ = std::move(kept);
      mass_ = mass;
    }
  }

  double ConditionalValue(std::span<const Item> extra) override {
    ItemSet set = Concat(selected_, extra);
    if (support_) {
      double total = 0.0;
      for (const WeightedRealization* w : consistent_) {
        total += w->probability * f_(set, w->states);
      }
      return total / mass_;
    }
    Rng rng(DeriveSeed(seed_, {kValueStream, step_}));
    double total = 0.0;
    for (int k = 0; k < cfg_.samples; ++k) {
      total += f_(set, prior_.SampleConditional(psi_, rng));
    }
    return total / cfg_.samples;
  }

  double RealizedValue() override { return f_(selected_, hidden_); }
  const ItemSet& selected() const override { return selected_; }
  bool exact() const override { return support_ != nullptr; }
  int observations() const override {
    return static_cast<int>(psi_.domain().size());
  }

 private:
  const StatePrior& prior_;
  const AdaptiveObjective& f_;
  const EstimatorConfig& cfg_;
  std::shared_ptr<const std::vector<WeightedRealization>> support_;
  std::vector<const WeightedRealization*> consistent_;
  double mass_ = 0.0;
  PartialRealization psi_;
  Realization hidden_;
  ItemSet selected_;
  ItemSet scratch_;
  uint64_t seed_;
  uint64_t step_ = 0;
};

std::vector<std::vector<double>> ValidatedTable(
    std::vector<std::vector<double>> value) {
  for (const auto& row : value) {
    for (double v : row) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw InputError("utility values must be finite and non-negative");
      }
    }
  }
  return value;
}

double TableEntry(const std::vector<std::vector<double>>& value, Item e,
                  State s) {
  if (e < 0 || e >= static_cast<Item>(value.size()) || s < 0 ||
      s >= static_cast<State>(value[e].size())) {
    throw InputError("state outside the utility table");
  }
  return value[e][s];
}

struct PairCovers {
  std::vector<std::vector<std::vector<int>>> covers;
  std::vector<double> weights;
  std::vector<int> potential;  // K_u
};

std::shared_ptr<PairCovers> BuildPairCovers(
    std::vector<std::vector<std::vector<int>>> covers,
    std::vector<double> weights) {
  auto pc = std::make_shared<PairCovers>();
  int top = -1;
  for (const auto& item : covers) {
    for (const auto& state : item) {
      for (int u : state) {
        if (u < 0) throw InputError("universe elements must be non-negative");
        top = std::max(top, u);
      }
    }
  }
  size_t universe = static_cast<size_t>(top + 1);
  if (weights.empty()) weights.assign(universe, 1.0);
  if (weights.size() < universe) throw InputError("element weights too short");
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw InputError("element weights must be finite and non-negative");
    }
  }
  pc->potential.assign(universe, 0);
  for (const auto& item : covers) {
    std::vector<char> any(universe, 0);
    for (const auto& state : item) {
      for (int u : state) any[u] = 1;
    }
    for (size_t u = 0; u < universe; ++u) pc->potential[u] += any[u];
  }
  pc->covers = std::move(covers);
  pc->weights = std::move(weights);
  return pc;
}

const std::vector<int>& CoveredBy(const PairCovers& pc, Item e, State s) {
  if (e < 0 || e >= static_cast<Item>(pc.covers.size()) || s < 0 ||
      s >= static_cast<State>(pc.covers[e].size())) {
    throw InputError("state outside the cover table");
  }
  return pc.covers[e][s];
}

PolicyRun Finish(Episode& episode,
                 std::function<bool(std::span<const Item>)> feasible,
                 std::vector<GreedyStep> trace, std::string branch,
                 std::vector<RepairRecord> repairs, double p) {
  PolicyRun run;
  run.selections = episode.selected();
  run.set = run.selections;
  std::sort(run.set.begin(), run.set.end());
  run.value = episode.RealizedValue();
  run.trace = std::move(trace);
  run.branch = std::move(branch);
  run.repairs = std::move(repairs);
  run.feasible = feasible(run.set);
  run.observations = episode.observations();
  run.p_used = p;
  return run;
}

// Compares the two completions by g_psi and commits the better (X on ties).
void AdaptiveRepair(Episode& episode, const Padding& pad,
                    std::vector<RepairRecord>& repairs) {
  RepairRecord rec;
  rec.base = episode.selected();
  rec.x = pad.x;
  rec.y = pad.y;
  rec.base_value = episode.ConditionalValue({});
  rec.value_x = episode.ConditionalValue(pad.x);
  rec.value_y = episode.ConditionalValue(pad.y);
  rec.chose_x = rec.value_x >= rec.value_y;
  for (Item e : rec.chose_x ? pad.x : pad.y) episode.Commit(e);
  repairs.push_back(std::move(rec));
}

Padding PadEpisode(Episode& episode, const GroupedGroundSet& ground,
                   std::span<const int> target, const AdaptiveConfig& cfg) {
  const ItemSet& sel = episode.selected();
  switch (cfg.padding) {
    case PaddingOrder::kIndex:
      return DisjointPadding(sel, ground, target);
    case PaddingOrder::kShuffled:
      return DisjointPadding(sel, ground, target,
                             DeriveSeed(cfg.seed, {0x706164ULL}));
    case PaddingOrder::kRanked: {
      std::vector<char> in(ground.size(), 0);
      for (Item e : sel) in[e] = 1;
      ItemSet spare;
      for (Item e = 0; e < ground.size(); ++e) {
        if (!in[e]) spare.push_back(e);
      }
      std::vector<double> gains(spare.size());
      episode.Gains(spare, gains);
      std::vector<double> priority(ground.size(), 0.0);
      for (size_t k = 0; k < spare.size(); ++k) priority[spare[k]] = gains[k];
      return RankedDisjointPadding(sel, ground, target, priority);
    }
  }
  return DisjointPadding(sel, ground, target);
}

ItemSet AllItems(const GroupedGroundSet& ground) {
  ItemSet v(ground.size());
  std::iota(v.begin(), v.end(), 0);
  return v;
}

ItemSet Without(const GroupedGroundSet& ground, std::span<const Item> taken) {
  std::vector<char> skip(ground.size(), 0);
  for (Item e : taken) skip[e] = 1;
  ItemSet pool;
  for (Item e = 0; e < ground.size(); ++e) {
    if (!skip[e]) pool.push_back(e);
  }
  return pool;
}

void CheckInstanceSize(const AdaptiveInstance& instance,
                       const GroupedGroundSet& ground) {
  if (instance.ground_size() != ground.size()) {
    throw InputError("instance and ground set sizes differ (" +
                     std::to_string(instance.ground_size()) + " vs " +
                     std::to_string(ground.size()) + ")");
  }
}

// Random selection paths with the gains observed before each step.
template <typename Visit>
int64_t WalkPaths(const AdaptiveInstance& instance, int paths, uint64_t seed,
                  Visit&& visit) {
  const int n = instance.ground_size();
  int64_t checked = 0;
  for (int r = 0; r < paths; ++r) {
    Rng rng(DeriveSeed(seed, {0x70617468ULL, static_cast<uint64_t>(r)}));
    std::unique_ptr<Episode> episode =
        instance.NewEpisode(DeriveSeed(seed, {static_cast<uint64_t>(r)}));
    ItemSet order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    int steps = n == 0 ? 0 : static_cast<int>(rng() % n);
    std::vector<std::vector<double>> history;  // gains per prefix
    for (int t = 0; t <= steps; ++t) {
      ItemSet rest(order.begin() + t, order.end());
      std::sort(rest.begin(), rest.end());
      std::vector<double> g(rest.size());
      episode->Gains(rest, g);
      std::vector<double> full(n, std::numeric_limits<double>::quiet_NaN());
      for (size_t k = 0; k < rest.size(); ++k) full[rest[k]] = g[k];
      history.push_back(std::move(full));
      if (!visit(history, rest, r, t)) return checked;
      checked += static_cast<int64_t>(rest.size());
      if (t < steps) episode->Commit(order[t]);
    }
  }
  return checked;
}

}  // namespace

void PartialRealization::Observe(Item e, State s) {
  if (e < 0 || e >= ground_size()) throw InputError("item out of range");
  if (s < 0) throw InputError("states must be non-negative");
  if (state_[e] >= 0) {
    if (state_[e] != s) throw ContractError("conflicting observation");
    return;
  }
  state_[e] = s;
  order_.push_back(e);
}

std::optional<State> PartialRealization::StateOf(Item e) const {
  if (state_[e] < 0) return std::nullopt;
  return state_[e];
}

bool PartialRealization::ConsistentWith(std::span<const State> phi) const {
  for (Item e : order_) {
    if (phi[e] != state_[e]) return false;
  }
  return true;
}

bool PartialRealization::SubrealizationOf(
    const PartialRealization& other) const {
  for (Item e : order_) {
    if (other.ground_size() <= e || other.state_[e] != state_[e]) return false;
  }
  return true;
}

StatePrior StatePrior::Enumerated(int n,
                                  std::vector<WeightedRealization> support) {
  StatePrior p;
  p.kind_ = Kind::kEnumerated;
  p.n_ = n;
  double total = 0.0;
  for (WeightedRealization& w : support) {
    CheckStates(w.states, n);
    if (!(w.probability >= 0.0) || !std::isfinite(w.probability)) {
      throw InputError("realization probabilities must be non-negative");
    }
    total += w.probability;
    if (w.probability > 0.0) p.support_.push_back(std::move(w));
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw InputError("realization probabilities sum to " +
                     std::to_string(total) + ", not 1");
  }
  double acc = 0.0;
  for (const WeightedRealization& w : p.support_) {
    acc += w.probability;
    p.cumulative_.push_back(acc);
  }
  return p;
}

StatePrior StatePrior::Independent(std::vector<std::vector<double>> dist) {
  StatePrior p;
  p.kind_ = Kind::kIndependent;
  p.n_ = static_cast<int>(dist.size());
  for (size_t e = 0; e < dist.size(); ++e) {
    double total = 0.0;
    for (double q : dist[e]) {
      if (!(q >= 0.0) || !std::isfinite(q)) {
        throw InputError("state probabilities must be non-negative");
      }
      total += q;
    }
    if (std::abs(total - 1.0) > kSumTolerance) {
      throw InputError("state distribution of item " + std::to_string(e) +
                       " sums to " + std::to_string(total) + ", not 1");
    }
  }
  p.dist_ = std::move(dist);
  return p;
}

StatePrior StatePrior::Generative(int n, Sampler sample,
                                  ConditionalSampler conditional) {
  if (!sample || !conditional) {
    throw InputError("generative priors need both samplers");
  }
  StatePrior p;
  p.kind_ = Kind::kGenerative;
  p.n_ = n;
  p.sample_ = std::move(sample);
  p.conditional_ = std::move(conditional);
  return p;
}

StatePrior StatePrior::Deterministic(Realization phi) {
  int n = static_cast<int>(phi.size());
  return Enumerated(n, {{std::move(phi), 1.0}});
}

std::optional<double> StatePrior::support_size() const {
  switch (kind_) {
    case Kind::kEnumerated:
      return static_cast<double>(support_.size());
    case Kind::kIndependent: {
      double size = 1.0;
      for (const auto& row : dist_) {
        size *= static_cast<double>(
            std::count_if(row.begin(), row.end(), [](double q) { return q > 0; }));
      }
      return size;
    }
    case Kind::kGenerative:
      return std::nullopt;
  }
  return std::nullopt;
}

bool StatePrior::enumerable(size_t max_support) const {
  std::optional<double> s = support_size();
  return s && *s <= static_cast<double>(max_support);
}

std::vector<WeightedRealization> StatePrior::Support(size_t max_support) const {
  if (!enumerable(max_support)) {
    throw CapabilityError(
        kind_ == Kind::kGenerative
            ? "generative priors cannot be enumerated"
            : "prior support exceeds the enumeration limit of " +
                  std::to_string(max_support));
  }
  if (kind_ == Kind::kEnumerated) return support_;
  std::vector<WeightedRealization> out{{Realization(n_, 0), 1.0}};
  for (int e = 0; e < n_; ++e) {
    std::vector<WeightedRealization> next;
    for (const WeightedRealization& w : out) {
      for (size_t s = 0; s < dist_[e].size(); ++s) {
        if (dist_[e][s] <= 0.0) continue;
        WeightedRealization x = w;
        x.states[e] = static_cast<State>(s);
        x.probability *= dist_[e][s];
        next.push_back(std::move(x));
      }
    }
    out = std::move(next);
  }
  return out;
}

Realization StatePrior::Sample(Rng& rng) const {
  switch (kind_) {
    case Kind::kEnumerated:
      return support_[PickWeighted(cumulative_, rng)].states;
    case Kind::kIndependent: {
      Realization phi(n_);
      for (int e = 0; e < n_; ++e) phi[e] = SampleState(dist_[e], rng);
      return phi;
    }
    case Kind::kGenerative:
      return sample_(rng);
  }
  return {};
}

Realization StatePrior::SampleConditional(const PartialRealization& psi,
                                          Rng& rng) const {
  switch (kind_) {
    case Kind::kEnumerated: {
      std::vector<double> cumulative;
      std::vector<size_t> index;
      double acc = 0.0;
      for (size_t k = 0; k < support_.size(); ++k) {
        if (!psi.ConsistentWith(support_[k].states)) continue;
        acc += support_[k].probability;
        cumulative.push_back(acc);
        index.push_back(k);
      }
      if (index.empty()) {
        throw ContractError("partial realization has zero probability");
      }
      return support_[index[PickWeighted(cumulative, rng)]].states;
    }
    case Kind::kIndependent: {
      Realization phi(n_);
      for (int e = 0; e < n_; ++e) {
        std::optional<State> s = psi.StateOf(e);
        phi[e] = s ? *s : SampleState(dist_[e], rng);
      }
      return phi;
    }
    case Kind::kGenerative:
      return conditional_(psi, rng);
  }
  return {};
}

AdaptiveObjective MakeAdditiveUtility(std::vector<std::vector<double>> value) {
  auto table = std::make_shared<std::vector<std::vector<double>>>(
      ValidatedTable(std::move(value)));
  AdaptiveObjective f;
  f.fn = [table](std::span<const Item> set, std::span<const State> phi) {
    double total = 0.0;
    for (Item e : set) total += TableEntry(*table, e, phi[e]);
    return total;
  };
  f.monotone_hint = true;
  f.label = "additive";
  return f;
}

AdaptiveObjective MakeMaxUtility(std::vector<std::vector<double>> value) {
  auto table = std::make_shared<std::vector<std::vector<double>>>(
      ValidatedTable(std::move(value)));
  AdaptiveObjective f;
  f.fn = [table](std::span<const Item> set, std::span<const State> phi) {
    double best = 0.0;
    for (Item e : set) best = std::max(best, TableEntry(*table, e, phi[e]));
    return best;
  };
  f.monotone_hint = true;
  f.label = "max";
  return f;
}

AdaptiveObjective MakePairCoverageUtility(
    std::vector<std::vector<std::vector<int>>> covers,
    std::vector<double> element_weights) {
  auto pc = BuildPairCovers(std::move(covers), std::move(element_weights));
  AdaptiveObjective f;
  f.fn = [pc](std::span<const Item> set, std::span<const State> phi) {
    std::vector<char> hit(pc->potential.size(), 0);
    double total = 0.0;
    for (Item e : set) {
      for (int u : CoveredBy(*pc, e, phi[e])) {
        if (!hit[u]) {
          hit[u] = 1;
          total += pc->weights[u];
        }
      }
    }
    return total;
  };
  f.monotone_hint = true;
  f.label = "pair_coverage";
  return f;
}

AdaptiveObjective MakePairOverlapUtility(
    std::vector<std::vector<std::vector<int>>> covers,
    std::vector<double> element_weights) {
  auto pc = BuildPairCovers(std::move(covers), std::move(element_weights));
  AdaptiveObjective f;
  f.fn = [pc](std::span<const Item> set, std::span<const State> phi) {
    std::vector<int> count(pc->potential.size(), 0);
    for (Item e : set) {
      for (int u : CoveredBy(*pc, e, phi[e])) ++count[u];
    }
    double total = 0.0;
    for (size_t u = 0; u < count.size(); ++u) {
      total += pc->weights[u] * count[u] * (pc->potential[u] - count[u]);
    }
    return total;
  };
  f.monotone_hint = std::nullopt;
  f.label = "pair_overlap";
  return f;
}

double ConditionalMarginal(const AdaptiveObjective& f, Item e,
                           const PartialRealization& psi,
                           const StatePrior& prior, const EstimatorConfig& cfg,
                           uint64_t seed) {
  if (psi.Contains(e)) throw InputError("item already observed");
  ItemSet base(psi.domain().begin(), psi.domain().end());
  ItemSet with = base;
  with.push_back(e);
  return ConditionalExpectation(prior, psi, cfg, seed,
                                [&](std::span<const State> phi) {
                                  return f(with, phi) - f(base, phi);
                                });
}

double ConditionalValue(const AdaptiveObjective& f,
                        const PartialRealization& psi,
                        std::span<const Item> set, const StatePrior& prior,
                        const EstimatorConfig& cfg, uint64_t seed) {
  for (Item e : set) {
    if (psi.Contains(e)) throw InputError("set overlaps dom(psi)");
  }
  ItemSet all = Concat(psi.domain(), set);
  return ConditionalExpectation(
      prior, psi, cfg, seed,
      [&](std::span<const State> phi) { return f(all, phi); });
}

TabularInstance::TabularInstance(StatePrior prior, AdaptiveObjective f,
                                 EstimatorConfig estimator)
    : prior_(std::move(prior)),
      f_(std::move(f)),
      estimator_(estimator) {
  if (!f_.fn) throw InputError("adaptive objective needs a function");
  if (estimator_.exact) {
    if (prior_.kind() == StatePrior::Kind::kGenerative) {
      throw CapabilityError("exact estimates need an enumerable prior");
    }
    support_ = std::make_shared<const std::vector<WeightedRealization>>(
        prior_.Support(estimator_.max_support));
  } else if (estimator_.samples < 1) {
    throw InputError("samples must be positive");
  }
}

std::unique_ptr<Episode> TabularInstance::NewEpisode(uint64_t seed) const {
  return std::make_unique<TabularEpisode>(*this, support_, seed);
}

GreedyResult AdaptiveSamplingGreedy(Episode& episode,
                                    const GroupedGroundSet& ground,
                                    std::span<const Item> pool,
                                    const CountPredicate& independent, double p,
                                    Rng& rng) {
  std::vector<int> counts = GroupCounts(episode.selected(), ground);
  // The caps apply to what the greedy adds, not to pre-selected items.
  std::fill(counts.begin(), counts.end(), 0);
  return RunCoinFlipGreedy(episode, ground, pool, independent, counts, p, rng);
}

PolicyRun SolveAdaptive(const AdaptiveInstance& instance,
                        const GroupedGroundSet& ground, int alpha,
                        const AdaptiveConfig& cfg) {
  if (alpha < 0) throw InputError("alpha must be non-negative");
  if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) throw InputError("p must be in [0, 1]");
  CheckInstanceSize(instance, ground);
  auto feasible = [&](std::span<const Item> s) {
    return IsGroupEqual(s, ground, alpha);
  };
  std::unique_ptr<Episode> episode = instance.NewEpisode(cfg.seed);
  Rng coin(RunSeed(cfg.seed, 0));
  const int k_min = ground.min_group_size();
  std::vector<RepairRecord> repairs;

  if (k_min > 1) {
    std::vector<int> bounds = SemiFeasibleBounds(ground, alpha);
    GreedyResult g = AdaptiveSamplingGreedy(
        *episode, ground, AllItems(ground), CapsPredicate(bounds), cfg.p, coin);
    AdaptiveRepair(*episode, PadEpisode(*episode, ground, bounds, cfg), repairs);
    return Finish(*episode, feasible, std::move(g.trace), "kmin_gt1",
                  std::move(repairs), cfg.p);
  }
  if (k_min == 0 || alpha > 0) {
    GreedyResult g = AdaptiveSamplingGreedy(
        *episode, ground, AllItems(ground),
        CapsPredicate(std::vector<int>(ground.num_groups(), alpha)), cfg.p,
        coin);
    return Finish(*episode, feasible, std::move(g.trace),
                  k_min == 0 ? "kmin_eq0" : "kmin_eq1_alpha_pos", {}, cfg.p);
  }

  std::vector<int> singles = GroupsOfSize(ground, 1);
  ItemSet forced = ItemsOfGroups(ground, singles);
  for (Item e : forced) episode->Commit(e);
  std::vector<int> caps(ground.num_groups(), 1);
  for (int i : singles) caps[i] = 0;
  GreedyResult g = AdaptiveSamplingGreedy(*episode, ground,
                                          Without(ground, forced),
                                          CapsPredicate(caps), cfg.p, coin);
  std::vector<int> counts = GroupCounts(episode->selected(), ground);
  std::vector<int> target(ground.num_groups(), 0);
  for (int i = 0; i < ground.num_groups(); ++i) target[i] = counts[i] == 0;
  AdaptiveRepair(*episode, PadEpisode(*episode, ground, target, cfg), repairs);
  return Finish(*episode, feasible, std::move(g.trace),
                "kmin_eq1_alpha0", std::move(repairs), cfg.p);
}

PolicyRun MonotoneAdaptiveSolve(const AdaptiveInstance& instance,
                                const GroupedGroundSet& ground, int alpha,
                                const AdaptiveConfig& cfg) {
  if (alpha < 0) throw InputError("alpha must be non-negative");
  CheckInstanceSize(instance, ground);
  RequireAdaptiveMonotone(instance, cfg.seed);
  auto feasible = [&](std::span<const Item> s) {
    return IsGroupEqual(s, ground, alpha);
  };
  std::unique_ptr<Episode> episode = instance.NewEpisode(cfg.seed);
  Rng coin(RunSeed(cfg.seed, 0));  // p = 1 never draws
  const int k_min = ground.min_group_size();
  std::vector<int> smallest = GroupsOfSize(ground, k_min);
  ItemSet forced = ItemsOfGroups(ground, smallest);
  for (Item e : forced) episode->Commit(e);
  std::vector<int> caps(ground.num_groups(), k_min + alpha);
  for (int i : smallest) caps[i] = 0;
  GreedyResult g = AdaptiveSamplingGreedy(
      *episode, ground, Without(ground, forced), CapsPredicate(caps), 1.0, coin);
  std::vector<int> target =
      MinimalEqualityTargets(GroupCounts(episode->selected(), ground), alpha);
  for (Item e : PadInIndexOrder(episode->selected(), ground, target)) {
    episode->Commit(e);
  }
  return Finish(*episode, feasible, std::move(g.trace), "monotone", {},
                1.0);
}

PolicyRun EquityAdaptiveSolve(const AdaptiveInstance& instance,
                              const GroupedGroundSet& ground,
                              const EquityBounds& bounds, int cardinality,
                              const AdaptiveConfig& cfg) {
  CheckInstanceSize(instance, ground);
  FairnessSpec spec;
  spec.alpha = ground.size();
  spec.cardinality = cardinality;
  spec.equity = bounds;
  spec.Validate(ground);
  long low_total = 0;
  for (int v : bounds.low) low_total += v;
  if (low_total > cardinality) {
    throw InfeasibleError("sum of lower bounds " + std::to_string(low_total) +
                          " exceeds the budget " + std::to_string(cardinality));
  }
  auto feasible = [&](std::span<const Item> s) {
    return EquityFeasible(s, ground, spec);
  };
  const bool monotone = instance.monotone_hint().value_or(false);
  const double p = monotone ? 1.0 : cfg.p;
  std::unique_ptr<Episode> episode = instance.NewEpisode(cfg.seed);
  Rng coin(RunSeed(cfg.seed, 0));
  GreedyResult g = AdaptiveSamplingGreedy(
      *episode, ground, AllItems(ground),
      FloorBudgetPredicate(bounds.high, bounds.low, cardinality), p, coin);

  Rng backup(DeriveSeed(cfg.seed, {kBackupStream}));
  std::vector<int> counts = GroupCounts(episode->selected(), ground);
  std::vector<char> taken(ground.size(), 0);
  for (Item e : episode->selected()) taken[e] = 1;
  for (int i = 0; i < ground.num_groups(); ++i) {
    int deficit = bounds.low[i] - counts[i];
    if (deficit <= 0) continue;
    ItemSet spare;
    for (Item e : ground.members(i)) {
      if (!taken[e]) spare.push_back(e);
    }
    // Partial Fisher-Yates: the first `deficit` entries are a uniform draw.
    for (int k = 0; k < deficit; ++k) {
      size_t j = k + static_cast<size_t>(backup() % (spare.size() - k));
      std::swap(spare[k], spare[j]);
      episode->Commit(spare[k]);
    }
  }
  return Finish(*episode, feasible, std::move(g.trace),
                monotone ? "equity_monotone" : "equity", {}, p);
}

PolicyValue EstimatePolicyValue(const PolicyRunner& runner, int episodes,
                                uint64_t seed, bool keep_runs) {
  if (episodes < 1) throw InputError("episodes must be positive");
  PolicyValue out;
  std::vector<double> values;
  values.reserve(episodes);
  for (int i = 0; i < episodes; ++i) {
    PolicyRun run = runner(DeriveSeed(seed, {static_cast<uint64_t>(i)}));
    values.push_back(run.value);
    if (keep_runs) out.runs.push_back(std::move(run));
  }
  out.estimate = Summarize(values);
  return out;
}

AdaptivePropertyReport CheckAdaptiveSubmodular(const AdaptiveInstance& instance,
                                               int paths, uint64_t seed,
                                               double tolerance) {
  AdaptivePropertyReport report;
  int64_t checked = WalkPaths(
      instance, paths, seed,
      [&](const std::vector<std::vector<double>>& history,
          std::span<const Item> rest, int path, int t) {
        const std::vector<double>& now = history.back();
        for (int s = 0; s < t; ++s) {
          for (Item e : rest) {
            if (history[s][e] < now[e] - tolerance) {
              report.passed = false;
              report.detail = "path " + std::to_string(path) + ": item " +
                              std::to_string(e) + " gain grew from " +
                              std::to_string(history[s][e]) + " to " +
                              std::to_string(now[e]);
              return false;
            }
          }
        }
        return true;
      });
  report.checked = checked;
  return report;
}

AdaptivePropertyReport CheckAdaptiveMonotone(const AdaptiveInstance& instance,
                                             int paths, uint64_t seed,
                                             double tolerance) {
  AdaptivePropertyReport report;
  int64_t checked = WalkPaths(
      instance, paths, seed,
      [&](const std::vector<std::vector<double>>& history,
          std::span<const Item> rest, int path, int) {
        for (Item e : rest) {
          if (history.back()[e] < -tolerance) {
            report.passed = false;
            report.detail = "path " + std::to_string(path) + ": item " +
                            std::to_string(e) + " has expected gain " +
                            std::to_string(history.back()[e]);
            return false;
          }
        }
        return true;
      });
  report.checked = checked;
  return report;
}

void RequireAdaptiveMonotone(const AdaptiveInstance& instance, uint64_t seed) {
  if (auto hint = instance.monotone_hint()) {
    if (*hint) return;
    throw ContractError("instance '" + instance.label() +
                        "' is declared non-monotone; use SolveAdaptive");
  }
  AdaptivePropertyReport r = CheckAdaptiveMonotone(instance, 16, seed);
  if (!r.passed) {
    throw ContractError("adaptive monotonicity check failed (" + r.detail +
                        "); use SolveAdaptive");
  }
}

PartialRealization SamplePartialRealization(const StatePrior& prior,
                                            double density, Rng& rng) {
  Realization phi = prior.Sample(rng);
  PartialRealization psi(prior.ground_size());
  for (int e = 0; e < prior.ground_size(); ++e) {
    if (FlipCoin(rng, density)) psi.Observe(e, phi[e]);
  }
  return psi;
}

}  // namespace fairsub
