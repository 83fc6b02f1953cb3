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

// Ground sets partitioned into groups, and the feasibility predicates shared
// by every solver: group equality, semi-feasibility, equity intervals.

#ifndef FAIRSUB_GROUND_H_
#define FAIRSUB_GROUND_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fairsub {

using Item = int32_t;
using ItemSet = std::vector<Item>;

// Items 0..n-1 split into m disjoint groups. Empty groups are allowed.
// Immutable after construction.
class GroupedGroundSet {
 public:
  GroupedGroundSet() = default;

  // Throws InputError if any group index falls outside [0, num_groups).
  static GroupedGroundSet FromAssignment(std::vector<int> group_of,
                                         int num_groups);
  // Groups of the given sizes laid out consecutively: items 0..k_0-1 form
  // group 0, and so on.
  static GroupedGroundSet FromSizes(std::span<const int> sizes);

  int size() const { return static_cast<int>(group_of_.size()); }
  int num_groups() const { return static_cast<int>(members_.size()); }
  int group_of(Item e) const { return group_of_[e]; }
  int group_size(int i) const { return static_cast<int>(members_[i].size()); }
  int min_group_size() const { return k_min_; }
  std::vector<int> group_sizes() const;
  // Sorted ascending.
  std::span<const Item> members(int i) const { return members_[i]; }
  std::span<const int> assignment() const { return group_of_; }

 private:
  std::vector<int> group_of_;
  std::vector<std::vector<Item>> members_;
  int k_min_ = 0;
};

struct EquityBounds {
  std::vector<int> low;
  std::vector<int> high;
};

struct FairnessSpec {
  int alpha = 0;
  std::optional<int> cardinality;
  std::optional<EquityBounds> equity;

  // Checks alpha in [0, n] and 0 <= low_i <= high_i <= k_i.
  void Validate(const GroupedGroundSet& ground) const;
};

// Entry i is |S ∩ V_i|. Throws InputError on an out-of-range item.
std::vector<int> GroupCounts(std::span<const Item> set,
                             const GroupedGroundSet& ground);

bool CountsGroupEqual(std::span<const int> counts, int alpha);
bool IsGroupEqual(std::span<const Item> set, const GroupedGroundSet& ground,
                  int alpha);

// min{floor(k_i / 2), floor(k_min / 2) + alpha}.
int SemiFeasibleBound(const GroupedGroundSet& ground, int alpha, int group);
std::vector<int> SemiFeasibleBounds(const GroupedGroundSet& ground, int alpha);
bool IsSemiFeasible(std::span<const Item> set, const GroupedGroundSet& ground,
                    int alpha);

struct Padding {
  ItemSet x;
  ItemSet y;
};

// Two disjoint completions drawn from the items of each group not already in
// `set`, each of size max{0, target_i - |S ∩ V_i|}. Spare items are taken in
// index order and dealt alternately to x and y; passing a seed shuffles the
// spare items of each group first. Throws InfeasibleError naming the group if
// a group lacks 2 * deficit spare items.
Padding DisjointPadding(std::span<const Item> set,
                        const GroupedGroundSet& ground,
                        std::span<const int> target,
                        std::optional<uint64_t> shuffle_seed = std::nullopt);
// Same contract with the spare items of each group ordered by descending
// priority[e] (ties by index) before being dealt.
Padding RankedDisjointPadding(std::span<const Item> set,
                              const GroupedGroundSet& ground,
                              std::span<const int> target,
                              std::span<const double> priority);

bool EquityFeasible(std::span<const Item> set, const GroupedGroundSet& ground,
                    const FairnessSpec& spec);

// "item group" per line, '#' comment lines. Every item 0..n-1 must appear
// exactly once. Throws IoError / InputError with the offending line number.
GroupedGroundSet LoadGroupFile(const std::string& path);
GroupedGroundSet ParseGroupAssignment(const std::string& text);

}  // namespace fairsub

#endif  // FAIRSUB_GROUND_H_
