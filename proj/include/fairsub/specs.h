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

// JSON descriptions of ground sets, objectives and adaptive instances.
//
//   ground:    {"groups": [0, 0, 1]} | {"sizes": [2, 1]} | {"group_file": p}
//   objective: {"type": "modular", "weights": [...]}
//              {"type": "coverage", "sets": [[...]], "weights": [...]}
//              {"type": "cut", "n": 4, "edges": [[u, v, w]], "directed": b}
//              {"type": "concave_overlap", "sets": [[...]], "weights": [...]}
//              {"type": "mnl", "theta": [...], "nu": [[...]], "nu0": [...]}
//              {"type": "sum", "parts": [...]}
//              {"type": "ic", <graph>, "samples": 200, "seed": 1}
//   graph:     "edges": [[u, v, p]] with optional "nodes", or
//              "edge_file": path with optional "p_edge"
//   adaptive:  {"type": "tabular", "prior": <prior>, "utility": <utility>,
//               "estimator": {"exact": true, "samples": 1000}}
//              {"type": "ic", <graph>, "samples": 200, "exact": false}
//   prior:     {"independent": [[p_state0, p_state1, ...], ...]} or
//              {"support": [{"states": [...], "p": 0.25}, ...]}
//   utility:   {"type": "additive" | "max", "values": [[...]]} or
//              {"type": "pair_coverage" | "pair_overlap",
//               "covers": [[[...]]], "weights": [...]}

#ifndef FAIRSUB_SPECS_H_
#define FAIRSUB_SPECS_H_

#include <memory>
#include <optional>

#include "fairsub/adaptive.h"
#include "fairsub/ground.h"
#include "fairsub/influence.h"
#include "fairsub/objective.h"
#include "json.hpp"

namespace fairsub {

GroupedGroundSet GroundFromJson(const nlohmann::json& j);
SetObjective ObjectiveFromJson(const nlohmann::json& j);
std::shared_ptr<const Graph> GraphFromJson(const nlohmann::json& j);

StatePrior PriorFromJson(const nlohmann::json& j);
AdaptiveObjective UtilityFromJson(const nlohmann::json& j);

struct AdaptiveSpec {
  std::shared_ptr<AdaptiveInstance> instance;
  // Set for tabular instances; used by the exhaustive oracles.
  std::optional<StatePrior> prior;
  std::optional<AdaptiveObjective> utility;
};
AdaptiveSpec AdaptiveFromJson(const nlohmann::json& j);

// Wraps nlohmann parse and type errors into InputError.
nlohmann::json ParseJson(const std::string& text, const std::string& what);

}  // namespace fairsub

#endif  // FAIRSUB_SPECS_H_
