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

// Set-function oracles. A SetObjective is a non-negative function on subsets
// of {0..n-1} with a shared, thread-safe evaluation counter. Solvers never
// call the function directly; they go through a GainState, which objectives
// with cheap incremental structure (cascade worlds, for one) may override.

#ifndef FAIRSUB_OBJECTIVE_H_
#define FAIRSUB_OBJECTIVE_H_

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairsub/ground.h"

namespace fairsub {

class SetObjective;

// Running set S with cached f(S).
class GainState {
 public:
  virtual ~GainState() = default;
  // f(e | S); e must not be in S.
  virtual double Gain(Item e) = 0;
  virtual void Add(Item e) = 0;
  virtual double Value() const = 0;
  virtual std::span<const Item> items() const = 0;
  // See GainSource::diminishing.
  virtual bool diminishing() const { return false; }
};

class SetObjective {
 public:
  using ValueFn = std::function<double(std::span<const Item>)>;
  using StateFactory =
      std::function<std::unique_ptr<GainState>(const SetObjective&)>;

  SetObjective(int ground_size, ValueFn fn,
               std::optional<bool> monotone_hint = std::nullopt,
               std::string label = "custom");

  int ground_size() const { return shared_->n; }
  const std::string& label() const { return shared_->label; }
  std::optional<bool> monotone_hint() const { return shared_->monotone_hint; }

  // One counted oracle call.
  double Evaluate(std::span<const Item> set) const;
  double operator()(std::span<const Item> set) const { return Evaluate(set); }
  uint64_t eval_count() const { return shared_->calls.load(); }
  // For specialized gain states that bypass Evaluate.
  void RecordCalls(uint64_t k) const { shared_->calls.fetch_add(k); }

  std::unique_ptr<GainState> NewState() const;
  void set_state_factory(StateFactory factory) {
    shared_->factory = std::move(factory);
  }
  // Free-form notes surfaced in reports (e.g. which reading of a formula the
  // objective implements).
  const std::string& note() const { return shared_->note; }
  void set_note(std::string note) { shared_->note = std::move(note); }

 private:
  struct Shared {
    int n = 0;
    ValueFn fn;
    std::optional<bool> monotone_hint;
    std::string label;
    std::string note;
    StateFactory factory;
    std::atomic<uint64_t> calls{0};
  };
  std::shared_ptr<Shared> shared_;
};

// f(S ∪ {e}) - f(S). Throws InputError when e ∈ S.
double Marginal(const SetObjective& f, Item e, std::span<const Item> set);

// ---------------------------------------------------------------------------
// Built-in objectives.

// Non-negative weights.
SetObjective MakeModular(std::vector<double> weights);

// Item e covers the universe elements sets[e]; value is the total weight of
// covered elements (unit weights when `element_weights` is empty).
SetObjective MakeCoverage(std::vector<std::vector<int>> sets,
                          std::vector<double> element_weights = {});

struct WeightedEdge {
  int src = 0;
  int dst = 0;
  double weight = 1.0;
};

// Directed: total weight of edges leaving S. Undirected: total weight of
// edges with exactly one endpoint in S.
SetObjective MakeCut(int n, std::vector<WeightedEdge> edges,
                     bool directed = true);

// sum_u w_u * c_u(S) * (K_u - c_u(S)), where c_u(S) counts items of S whose
// set contains u and K_u counts all such items. Concave in each count, so
// submodular; non-negative and non-monotone.
SetObjective MakeConcaveOverlap(std::vector<std::vector<int>> sets,
                                std::vector<double> element_weights = {});

// Pointwise sum of objectives over the same ground set.
SetObjective MakeSum(std::vector<SetObjective> parts);

struct MnlParams {
  std::vector<double> theta;            // customer-type shares, sum to 1
  std::vector<std::vector<double>> nu;  // nu[item][type] >= 0
  std::vector<double> nu0;              // no-purchase weight per type, > 0

  int num_items() const { return static_cast<int>(nu.size()); }
  int num_types() const { return static_cast<int>(theta.size()); }
  void Validate() const;
};

// Expected number of purchases from assortment S under the mixed-MNL model:
// sum_j theta_j * (sum_{i in S} nu_ij) / (nu0_j + sum_{i in S} nu_ij).
double MnlRate(std::span<const Item> set, const MnlParams& params);
SetObjective MakeMnl(MnlParams params);

// ---------------------------------------------------------------------------
// Statistical property checks. Comparisons use an absolute tolerance of 1e-9.

inline constexpr double kCheckTolerance = 1e-9;

struct ChainWitness {
  ItemSet x;  // for monotonicity witnesses, the base set
  ItemSet y;
  Item e = -1;
  double gain_x = 0.0;
  double gain_y = 0.0;
};

struct PropertyReport {
  bool passed = true;
  std::optional<ChainWitness> witness;
  int64_t checked = 0;
};

// Samples chains X ⊆ Y ⊆ V \ {e} and looks for f(e|Y) > f(e|X) + tol.
PropertyReport CheckSubmodular(const SetObjective& f, int n, int trials,
                               uint64_t seed);
// Samples (S, e) and looks for f(e|S) < -tol.
PropertyReport CheckMonotone(const SetObjective& f, int n, int trials,
                             uint64_t seed);

// Exhaustive variants over an explicit item list (at most 14 items). Chains
// are visited with Y ascending as a bitmask, then X ⊆ Y ascending, then e.
using SetFunction = std::function<double(std::span<const Item>)>;
PropertyReport CheckSubmodularExhaustive(const SetFunction& f,
                                         std::span<const Item> items);
PropertyReport CheckMonotoneExhaustive(const SetFunction& f,
                                       std::span<const Item> items);
PropertyReport CheckSubmodularExhaustive(const SetObjective& f, int n);
PropertyReport CheckMonotoneExhaustive(const SetObjective& f, int n);

}  // namespace fairsub

#endif  // FAIRSUB_OBJECTIVE_H_
