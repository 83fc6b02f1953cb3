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

// Interval heuristics used as experiment baselines: coin-flip greedy with a
// per-group cap of k_min + alpha - 1, then every group below k_min is lifted
// to exactly k_min with uniformly random spare items. The result has between
// k_min and k_min + alpha items in every group.

#ifndef FAIRSUB_BENCHMARKS_H_
#define FAIRSUB_BENCHMARKS_H_

#include <cstdint>

#include "fairsub/adaptive.h"
#include "fairsub/ground.h"
#include "fairsub/nonadaptive.h"
#include "fairsub/objective.h"

namespace fairsub {

// Throws InputError when k_min + alpha < 1.
Solution RunBenchmarkHi(const SetObjective& f, const GroupedGroundSet& ground,
                        int alpha, double p, uint64_t seed);
PolicyRun RunBenchmarkAhi(const AdaptiveInstance& instance,
                          const GroupedGroundSet& ground, int alpha,
                          const AdaptiveConfig& cfg);

}  // namespace fairsub

#endif  // FAIRSUB_BENCHMARKS_H_
