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

#include <algorithm>
#include <cmath>

#include "fairsub/errors.h"
#include "fairsub/random.h"

namespace fairsub {
namespace {

class CachedGainState : public GainState {
 public:
  explicit CachedGainState(const SetObjective& f)
      : f_(f), value_(f.Evaluate({})) {}

  double Gain(Item e) override {
    scratch_ = items_;
    scratch_.push_back(e);
    return f_.Evaluate(scratch_) - value_;
  }
  void Add(Item e) override {
    items_.push_back(e);
    value_ = f_.Evaluate(items_);
  }
  double Value() const override { return value_; }
  std::span<const Item> items() const override { return items_; }

 private:
  SetObjective f_;
  ItemSet items_;
  ItemSet scratch_;
  double value_;
};

std::vector<double> UnitIfEmpty(std::vector<double> w, size_t size) {
  if (w.empty()) w.assign(size, 1.0);
  if (w.size() < size) throw InputError("element weight list too short");
  for (double x : w) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw InputError("element weights must be finite and non-negative");
    }
  }
  return w;
}

size_t UniverseSize(const std::vector<std::vector<int>>& sets) {
  int top = -1;
  for (const auto& s : sets) {
    for (int u : s) {
      if (u < 0) throw InputError("universe elements must be non-negative");
      top = std::max(top, u);
    }
  }
  return static_cast<size_t>(top + 1);
}

ItemSet MaskToSet(uint32_t mask, std::span<const Item> items) {
  ItemSet s;
  for (size_t i = 0; i < items.size(); ++i) {
    if (mask >> i & 1u) s.push_back(items[i]);
  }
  return s;
}

std::vector<double> TabulateMasks(const SetFunction& f,
                                  std::span<const Item> items) {
  if (items.size() > 14) {
    throw CapabilityError("exhaustive checks support at most 14 items");
  }
  std::vector<double> table(size_t{1} << items.size());
  for (uint32_t mask = 0; mask < table.size(); ++mask) {
    table[mask] = f(MaskToSet(mask, items));
  }
  return table;
}

std::vector<Item> Iota(int n) {
  std::vector<Item> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

SetObjective::SetObjective(int ground_size, ValueFn fn,
                           std::optional<bool> monotone_hint,
                           std::string label)
    : shared_(std::make_shared<Shared>()) {
  if (ground_size < 0) throw InputError("negative ground size");
  if (!fn) throw InputError("objective needs a value function");
  shared_->n = ground_size;
  shared_->fn = std::move(fn);
  shared_->monotone_hint = monotone_hint;
  shared_->label = std::move(label);
}

double SetObjective::Evaluate(std::span<const Item> set) const {
  shared_->calls.fetch_add(1, std::memory_order_relaxed);
  return shared_->fn(set);
}

std::unique_ptr<GainState> SetObjective::NewState() const {
  if (shared_->factory) return shared_->factory(*this);
  return std::make_unique<CachedGainState>(*this);
}

double Marginal(const SetObjective& f, Item e, std::span<const Item> set) {
  if (std::find(set.begin(), set.end(), e) != set.end()) {
    throw InputError("marginal of item " + std::to_string(e) +
                     " requested on a set that contains it");
  }
  ItemSet with(set.begin(), set.end());
  with.push_back(e);
  return f.Evaluate(with) - f.Evaluate(set);
}

SetObjective MakeModular(std::vector<double> weights) {
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw InputError("modular weights must be finite and non-negative");
    }
  }
  int n = static_cast<int>(weights.size());
  return SetObjective(
      n,
      [w = std::move(weights)](std::span<const Item> s) {
        double total = 0.0;
        for (Item e : s) total += w[e];
        return total;
      },
      true, "modular");
}

SetObjective MakeCoverage(std::vector<std::vector<int>> sets,
                          std::vector<double> element_weights) {
  size_t universe = UniverseSize(sets);
  std::vector<double> w = UnitIfEmpty(std::move(element_weights), universe);
  int n = static_cast<int>(sets.size());
  return SetObjective(
      n,
      [sets = std::move(sets), w = std::move(w)](std::span<const Item> s) {
        std::vector<char> hit(w.size(), 0);
        double total = 0.0;
        for (Item e : s) {
          for (int u : sets[e]) {
            if (!hit[u]) {
              hit[u] = 1;
              total += w[u];
            }
          }
        }
        return total;
      },
      true, "coverage");
}

SetObjective MakeCut(int n, std::vector<WeightedEdge> edges, bool directed) {
  for (const auto& ed : edges) {
    if (ed.src < 0 || ed.src >= n || ed.dst < 0 || ed.dst >= n) {
      throw InputError("cut edge endpoint outside [0, n)");
    }
    if (!(ed.weight >= 0.0) || !std::isfinite(ed.weight)) {
      throw InputError("cut edge weights must be finite and non-negative");
    }
  }
  bool has_edge = std::any_of(edges.begin(), edges.end(), [](const auto& ed) {
    return ed.src != ed.dst && ed.weight > 0.0;
  });
  return SetObjective(
      n,
      [n, directed, edges = std::move(edges)](std::span<const Item> s) {
        std::vector<char> in(n, 0);
        for (Item e : s) in[e] = 1;
        double total = 0.0;
        for (const auto& ed : edges) {
          bool crossing = directed ? (in[ed.src] && !in[ed.dst])
                                   : (in[ed.src] != in[ed.dst]);
          if (crossing) total += ed.weight;
        }
        return total;
      },
      has_edge ? std::optional<bool>(false) : std::optional<bool>(true),
      directed ? "cut" : "undirected_cut");
}

SetObjective MakeConcaveOverlap(std::vector<std::vector<int>> sets,
                                std::vector<double> element_weights) {
  size_t universe = UniverseSize(sets);
  std::vector<double> w = UnitIfEmpty(std::move(element_weights), universe);
  std::vector<int> capacity(w.size(), 0);
  for (const auto& s : sets) {
    std::vector<int> uniq(s);
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    for (int u : uniq) ++capacity[u];
  }
  int n = static_cast<int>(sets.size());
  return SetObjective(
      n,
      [sets = std::move(sets), w = std::move(w),
       capacity = std::move(capacity)](std::span<const Item> s) {
        std::vector<int> count(w.size(), 0);
        std::vector<int> stamp(w.size(), -1);
        for (size_t k = 0; k < s.size(); ++k) {
          for (int u : sets[s[k]]) {
            if (stamp[u] != static_cast<int>(k)) {
              stamp[u] = static_cast<int>(k);
              ++count[u];
            }
          }
        }
        double total = 0.0;
        for (size_t u = 0; u < w.size(); ++u) {
          total += w[u] * count[u] * (capacity[u] - count[u]);
        }
        return total;
      },
      std::nullopt, "concave_overlap");
}

SetObjective MakeSum(std::vector<SetObjective> parts) {
  if (parts.empty()) throw InputError("sum of zero objectives");
  int n = parts.front().ground_size();
  bool all_monotone = true;
  for (const auto& p : parts) {
    if (p.ground_size() != n) throw InputError("summed objectives differ in n");
    all_monotone = all_monotone && p.monotone_hint().value_or(false);
  }
  return SetObjective(
      n,
      [parts = std::move(parts)](std::span<const Item> s) {
        double total = 0.0;
        for (const auto& p : parts) total += p.Evaluate(s);
        return total;
      },
      all_monotone ? std::optional<bool>(true) : std::nullopt, "sum");
}

void MnlParams::Validate() const {
  if (theta.empty()) throw InputError("mnl needs at least one customer type");
  if (nu0.size() != theta.size()) {
    throw InputError("mnl nu0 must have one entry per customer type");
  }
  double total = 0.0;
  for (double t : theta) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
      throw InputError("mnl theta must be finite and non-negative");
    }
    total += t;
  }
  if (std::abs(total - 1.0) > 1e-9) throw InputError("mnl theta must sum to 1");
  for (double v : nu0) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InputError("mnl no-purchase weights must be positive and finite");
    }
  }
  for (const auto& row : nu) {
    if (row.size() != theta.size()) {
      throw InputError("mnl nu rows must have one weight per customer type");
    }
    for (double v : row) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw InputError("mnl preference weights must be finite and >= 0");
      }
    }
  }
}

double MnlRate(std::span<const Item> set, const MnlParams& params) {
  if (set.empty()) return 0.0;
  double rate = 0.0;
  for (int j = 0; j < params.num_types(); ++j) {
    double offered = 0.0;
    for (Item e : set) offered += params.nu[e][j];
    rate += params.theta[j] * offered / (params.nu0[j] + offered);
  }
  return rate;
}

SetObjective MakeMnl(MnlParams params) {
  params.Validate();
  int n = params.num_items();
  SetObjective f(
      n,
      [params = std::move(params)](std::span<const Item> s) {
        return MnlRate(s, params);
      },
      true, "mnl");
  f.set_note(
      "mnl_rate sums the mixed-MNL purchase probability over every offered "
      "product: sum_j theta_j * sum_{i in S} nu_ij / (nu0_j + sum_{i in S} "
      "nu_ij)");
  return f;
}

PropertyReport CheckSubmodular(const SetObjective& f, int n, int trials,
                               uint64_t seed) {
  PropertyReport report;
  if (n < 1) return report;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    ItemSet x, y, outside;
    for (Item e = 0; e < n; ++e) {
      if (FlipCoin(rng, 0.5)) {
        y.push_back(e);
        if (FlipCoin(rng, 0.5)) x.push_back(e);
      } else {
        outside.push_back(e);
      }
    }
    if (outside.empty()) continue;
    Item e = outside[rng() % outside.size()];
    double gx = Marginal(f, e, x), gy = Marginal(f, e, y);
    ++report.checked;
    if (gy > gx + kCheckTolerance) {
      report.passed = false;
      report.witness = ChainWitness{x, y, e, gx, gy};
      return report;
    }
  }
  return report;
}

PropertyReport CheckMonotone(const SetObjective& f, int n, int trials,
                             uint64_t seed) {
  PropertyReport report;
  if (n < 1) return report;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    ItemSet s, outside;
    for (Item e = 0; e < n; ++e) {
      (FlipCoin(rng, 0.5) ? s : outside).push_back(e);
    }
    if (outside.empty()) continue;
    Item e = outside[rng() % outside.size()];
    double g = Marginal(f, e, s);
    ++report.checked;
    if (g < -kCheckTolerance) {
      report.passed = false;
      report.witness = ChainWitness{s, s, e, g, g};
      return report;
    }
  }
  return report;
}

PropertyReport CheckSubmodularExhaustive(const SetFunction& f,
                                         std::span<const Item> items) {
  std::vector<double> table = TabulateMasks(f, items);
  PropertyReport report;
  uint32_t full = static_cast<uint32_t>(table.size()) - 1;
  for (uint32_t y = 0; y <= full; ++y) {
    // Submasks of y in ascending order.
    for (uint32_t x = 0;; x = (x - y) & y) {
      for (size_t i = 0; i < items.size(); ++i) {
        uint32_t bit = 1u << i;
        if (y & bit) continue;
        double gx = table[x | bit] - table[x];
        double gy = table[y | bit] - table[y];
        ++report.checked;
        if (gy > gx + kCheckTolerance) {
          report.passed = false;
          report.witness = ChainWitness{MaskToSet(x, items),
                                        MaskToSet(y, items), items[i], gx, gy};
          return report;
        }
      }
      if (x == y) break;
    }
  }
  return report;
}

PropertyReport CheckMonotoneExhaustive(const SetFunction& f,
                                       std::span<const Item> items) {
  std::vector<double> table = TabulateMasks(f, items);
  PropertyReport report;
  for (uint32_t s = 0; s < table.size(); ++s) {
    for (size_t i = 0; i < items.size(); ++i) {
      uint32_t bit = 1u << i;
      if (s & bit) continue;
      double g = table[s | bit] - table[s];
      ++report.checked;
      if (g < -kCheckTolerance) {
        report.passed = false;
        ItemSet base = MaskToSet(s, items);
        report.witness = ChainWitness{base, base, items[i], g, g};
        return report;
      }
    }
  }
  return report;
}

PropertyReport CheckSubmodularExhaustive(const SetObjective& f, int n) {
  std::vector<Item> items = Iota(n);
  return CheckSubmodularExhaustive(
      [&f](std::span<const Item> s) { return f.Evaluate(s); }, items);
}

PropertyReport CheckMonotoneExhaustive(const SetObjective& f, int n) {
  std::vector<Item> items = Iota(n);
  return CheckMonotoneExhaustive(
      [&f](std::span<const Item> s) { return f.Evaluate(s); }, items);
}

}  // namespace fairsub
