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
#include <functional>
#include <fstream>
#include <numeric>
#include <sstream>

#include "fairsub/errors.h"
#include "fairsub/random.h"

namespace fairsub {

GroupedGroundSet GroupedGroundSet::FromAssignment(std::vector<int> group_of,
                                                  int num_groups) {
  if (num_groups < 1) throw InputError("ground set needs at least one group");
  GroupedGroundSet g;
  g.members_.resize(num_groups);
  for (size_t e = 0; e < group_of.size(); ++e) {
    int gi = group_of[e];
    if (gi < 0 || gi >= num_groups) {
      throw InputError("item " + std::to_string(e) + " has group " +
                       std::to_string(gi) + " outside [0, " +
                       std::to_string(num_groups) + ")");
    }
    g.members_[gi].push_back(static_cast<Item>(e));
  }
  g.group_of_ = std::move(group_of);
  g.k_min_ = static_cast<int>(g.members_[0].size());
  for (const auto& m : g.members_) {
    g.k_min_ = std::min(g.k_min_, static_cast<int>(m.size()));
  }
  return g;
}

GroupedGroundSet GroupedGroundSet::FromSizes(std::span<const int> sizes) {
  std::vector<int> group_of;
  for (size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 0) throw InputError("negative group size");
    group_of.insert(group_of.end(), sizes[i], static_cast<int>(i));
  }
  return FromAssignment(std::move(group_of), static_cast<int>(sizes.size()));
}

std::vector<int> GroupedGroundSet::group_sizes() const {
  std::vector<int> k(members_.size());
  for (size_t i = 0; i < members_.size(); ++i) {
    k[i] = static_cast<int>(members_[i].size());
  }
  return k;
}

void FairnessSpec::Validate(const GroupedGroundSet& ground) const {
  if (alpha < 0 || alpha > std::max(ground.size(), 0)) {
    throw InputError("alpha must lie in [0, n]");
  }
  if (cardinality && *cardinality < 0) {
    throw InputError("cardinality bound must be non-negative");
  }
  if (equity) {
    int m = ground.num_groups();
    if (static_cast<int>(equity->low.size()) != m ||
        static_cast<int>(equity->high.size()) != m) {
      throw InputError("equity intervals must have one entry per group");
    }
    for (int i = 0; i < m; ++i) {
      if (equity->low[i] < 0 || equity->low[i] > equity->high[i] ||
          equity->high[i] > ground.group_size(i)) {
        throw InputError("equity interval of group " + std::to_string(i) +
                         " must satisfy 0 <= low <= high <= k_i");
      }
    }
  }
}

std::vector<int> GroupCounts(std::span<const Item> set,
                             const GroupedGroundSet& ground) {
  std::vector<int> counts(ground.num_groups(), 0);
  for (Item e : set) {
    if (e < 0 || e >= ground.size()) {
      throw InputError("item " + std::to_string(e) + " outside ground set of " +
                       std::to_string(ground.size()));
    }
    ++counts[ground.group_of(e)];
  }
  return counts;
}

bool CountsGroupEqual(std::span<const int> counts, int alpha) {
  if (counts.empty()) return true;
  auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
  return *hi - *lo <= alpha;
}

bool IsGroupEqual(std::span<const Item> set, const GroupedGroundSet& ground,
                  int alpha) {
  return CountsGroupEqual(GroupCounts(set, ground), alpha);
}

int SemiFeasibleBound(const GroupedGroundSet& ground, int alpha, int group) {
  if (group < 0 || group >= ground.num_groups()) {
    throw InputError("group index " + std::to_string(group) + " out of range");
  }
  return std::min(ground.group_size(group) / 2,
                  ground.min_group_size() / 2 + alpha);
}

std::vector<int> SemiFeasibleBounds(const GroupedGroundSet& ground,
                                    int alpha) {
  std::vector<int> b(ground.num_groups());
  for (int i = 0; i < ground.num_groups(); ++i) {
    b[i] = SemiFeasibleBound(ground, alpha, i);
  }
  return b;
}

bool IsSemiFeasible(std::span<const Item> set, const GroupedGroundSet& ground,
                    int alpha) {
  std::vector<int> counts = GroupCounts(set, ground);
  for (int i = 0; i < ground.num_groups(); ++i) {
    if (counts[i] > SemiFeasibleBound(ground, alpha, i)) return false;
  }
  return true;
}

namespace {

using SpareOrder = std::function<void(int group, std::vector<Item>& spare)>;

Padding DealPadding(std::span<const Item> set, const GroupedGroundSet& ground,
                    std::span<const int> target, const SpareOrder& order) {
  if (static_cast<int>(target.size()) != ground.num_groups()) {
    throw InputError("padding target must have one entry per group");
  }
  std::vector<int> counts = GroupCounts(set, ground);
  std::vector<char> taken(ground.size(), 0);
  for (Item e : set) taken[e] = 1;

  Padding out;
  for (int i = 0; i < ground.num_groups(); ++i) {
    int deficit = target[i] - counts[i];
    if (deficit <= 0) continue;
    std::vector<Item> spare;
    for (Item e : ground.members(i)) {
      if (!taken[e]) spare.push_back(e);
    }
    if (static_cast<int>(spare.size()) < 2 * deficit) {
      throw InfeasibleError("group " + std::to_string(i) + " has " +
                            std::to_string(spare.size()) +
                            " spare items but padding needs " +
                            std::to_string(2 * deficit));
    }
    if (order) order(i, spare);
    for (int j = 0; j < deficit; ++j) {
      out.x.push_back(spare[2 * j]);
      out.y.push_back(spare[2 * j + 1]);
    }
  }
  return out;
}

}  // namespace

Padding DisjointPadding(std::span<const Item> set,
                        const GroupedGroundSet& ground,
                        std::span<const int> target,
                        std::optional<uint64_t> shuffle_seed) {
  if (!shuffle_seed) return DealPadding(set, ground, target, nullptr);
  return DealPadding(set, ground, target, [&](int i, std::vector<Item>& spare) {
    Rng rng(DeriveSeed(*shuffle_seed, {static_cast<uint64_t>(i)}));
    std::shuffle(spare.begin(), spare.end(), rng);
  });
}

Padding RankedDisjointPadding(std::span<const Item> set,
                              const GroupedGroundSet& ground,
                              std::span<const int> target,
                              std::span<const double> priority) {
  if (static_cast<int>(priority.size()) != ground.size()) {
    throw InputError("padding priority must have one entry per item");
  }
  return DealPadding(set, ground, target, [&](int, std::vector<Item>& spare) {
    std::stable_sort(spare.begin(), spare.end(), [&](Item a, Item b) {
      return priority[a] > priority[b];
    });
  });
}

bool EquityFeasible(std::span<const Item> set, const GroupedGroundSet& ground,
                    const FairnessSpec& spec) {
  if (!spec.equity) throw InputError("fairness spec has no equity intervals");
  std::vector<int> counts = GroupCounts(set, ground);
  for (int i = 0; i < ground.num_groups(); ++i) {
    if (counts[i] < spec.equity->low[i] || counts[i] > spec.equity->high[i]) {
      return false;
    }
  }
  return !spec.cardinality ||
         static_cast<int>(set.size()) <= *spec.cardinality;
}

GroupedGroundSet ParseGroupAssignment(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  struct Row {
    long item, group;
    int line;
  };
  std::vector<Row> rows;
  long max_item = -1, max_group = -1;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long item, group;
    std::string rest;
    if (!(fields >> item >> group) || (fields >> rest) || item < 0 ||
        group < 0) {
      throw InputError("group file line " + std::to_string(line_no) +
                       ": expected 'item_index group_index'");
    }
    rows.push_back({item, group, line_no});
    max_item = std::max(max_item, item);
    max_group = std::max(max_group, group);
  }
  if (rows.empty()) throw InputError("group file has no assignments");
  std::vector<int> group_of(max_item + 1, -1);
  for (size_t r = 0; r < rows.size(); ++r) {
    auto [item, group, line_no] = rows[r];
    if (group_of[item] != -1) {
      throw InputError("group file line " + std::to_string(line_no) +
                       ": item " + std::to_string(item) + " assigned twice");
    }
    group_of[item] = static_cast<int>(group);
  }
  for (size_t e = 0; e < group_of.size(); ++e) {
    if (group_of[e] == -1) {
      throw InputError("item " + std::to_string(e) + " has no group");
    }
  }
  return GroupedGroundSet::FromAssignment(std::move(group_of),
                                          static_cast<int>(max_group + 1));
}

GroupedGroundSet LoadGroupFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open group file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseGroupAssignment(buf.str());
}

}  // namespace fairsub
