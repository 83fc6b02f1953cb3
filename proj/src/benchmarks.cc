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

#include "fairsub/benchmarks.h"

#include <algorithm>
#include <numeric>

#include "fairsub/errors.h"
#include "fairsub/random.h"

namespace fairsub {
namespace {

constexpr uint64_t kPadStream = 0x686970ULL;

class StateSource : public GainSource {
 public:
  explicit StateSource(GainState& state) : state_(state) {}
  void Gains(std::span<const Item> c, std::span<double> out) override {
    for (size_t k = 0; k < c.size(); ++k) out[k] = state_.Gain(c[k]);
  }
  void Commit(Item e) override { state_.Add(e); }
  bool diminishing() const override { return state_.diminishing(); }

 private:
  GainState& state_;
};

std::vector<int> IntervalCaps(const GroupedGroundSet& ground, int alpha) {
  if (alpha < 0) throw InputError("alpha must be non-negative");
  const int k_min = ground.min_group_size();
  if (k_min + alpha < 1) {
    throw InputError("interval heuristic needs k_min + alpha >= 1");
  }
  std::vector<int> caps(ground.num_groups());
  for (int i = 0; i < ground.num_groups(); ++i) {
    caps[i] = std::min(ground.group_size(i), k_min + alpha - 1);
  }
  return caps;
}

// Uniformly random spare items lifting every group to k_min, in the order
// they should be added.
ItemSet RandomLift(std::span<const Item> set, const GroupedGroundSet& ground,
                   uint64_t seed) {
  std::vector<int> counts = GroupCounts(set, ground);
  std::vector<char> taken(ground.size(), 0);
  for (Item e : set) taken[e] = 1;
  const int k_min = ground.min_group_size();
  Rng rng(DeriveSeed(seed, {kPadStream}));
  ItemSet added;
  for (int i = 0; i < ground.num_groups(); ++i) {
    int deficit = k_min - counts[i];
    if (deficit <= 0) continue;
    ItemSet spare;
    for (Item e : ground.members(i)) {
      if (!taken[e]) spare.push_back(e);
    }
    if (static_cast<int>(spare.size()) < deficit) {
      throw Error(ErrorCode::kContract, "interval padding ran out of items");
    }
    for (int k = 0; k < deficit; ++k) {
      size_t j = k + static_cast<size_t>(rng() % (spare.size() - k));
      std::swap(spare[k], spare[j]);
      added.push_back(spare[k]);
    }
  }
  return added;
}

}  // namespace

Solution RunBenchmarkHi(const SetObjective& f, const GroupedGroundSet& ground,
                        int alpha, double p, uint64_t seed) {
  std::vector<int> caps = IntervalCaps(ground, alpha);
  std::unique_ptr<GainState> state = f.NewState();
  StateSource source(*state);
  ItemSet pool(ground.size());
  std::iota(pool.begin(), pool.end(), 0);
  Rng rng(RunSeed(seed, 0));
  GreedyResult g = RunCoinFlipGreedy(source, ground, pool, CapsPredicate(caps),
                                     std::vector<int>(ground.num_groups(), 0),
                                     p, rng);
  ItemSet lift = RandomLift(g.selected, ground, seed);
  Solution s;
  s.set = g.selected;
  s.set.insert(s.set.end(), lift.begin(), lift.end());
  std::sort(s.set.begin(), s.set.end());
  s.value = f.Evaluate(s.set);
  s.trace = std::move(g.trace);
  s.branch = "interval";
  s.p_used = p;
  return s;
}

PolicyRun RunBenchmarkAhi(const AdaptiveInstance& instance,
                          const GroupedGroundSet& ground, int alpha,
                          const AdaptiveConfig& cfg) {
  if (instance.ground_size() != ground.size()) {
    throw InputError("instance and ground set sizes differ");
  }
  std::vector<int> caps = IntervalCaps(ground, alpha);
  std::unique_ptr<Episode> episode = instance.NewEpisode(cfg.seed);
  ItemSet pool(ground.size());
  std::iota(pool.begin(), pool.end(), 0);
  Rng rng(RunSeed(cfg.seed, 0));
  GreedyResult g =
      AdaptiveSamplingGreedy(*episode, ground, pool, CapsPredicate(caps), cfg.p, rng);
  for (Item e : RandomLift(episode->selected(), ground, cfg.seed)) {
    episode->Commit(e);
  }
  PolicyRun run;
  run.selections = episode->selected();
  run.set = run.selections;
  std::sort(run.set.begin(), run.set.end());
  run.value = episode->RealizedValue();
  run.trace = std::move(g.trace);
  run.branch = "interval";
  run.feasible = IsGroupEqual(run.set, ground, alpha);
  run.observations = episode->observations();
  run.p_used = cfg.p;
  return run;
}

}  // namespace fairsub
