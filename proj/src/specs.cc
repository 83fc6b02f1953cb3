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

#include "fairsub/specs.h"

#include <algorithm>

#include "fairsub/errors.h"

namespace fairsub {
namespace {

using nlohmann::json;

const json& Need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(std::string("missing key '") + key + "'");
  }
  return j.at(key);
}

template <typename T>
T Get(const json& j, const char* key) {
  try {
    return Need(j, key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string("bad value for '") + key + "': " + e.what());
  }
}

template <typename T>
T GetOr(const json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return Get<T>(j, key);
}

std::string TypeOf(const json& j) { return Get<std::string>(j, "type"); }

}  // namespace

json ParseJson(const std::string& text, const std::string& what) {
  try {
    return json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::exception& e) {
    throw InputError(what + " is not valid JSON: " + e.what());
  }
}

GroupedGroundSet GroundFromJson(const json& j) {
  if (j.contains("group_file")) return LoadGroupFile(Get<std::string>(j, "group_file"));
  if (j.contains("sizes")) {
    std::vector<int> sizes = Get<std::vector<int>>(j, "sizes");
    return GroupedGroundSet::FromSizes(sizes);
  }
  std::vector<int> groups = Get<std::vector<int>>(j, "groups");
  int m = 0;
  for (int g : groups) m = std::max(m, g + 1);
  m = GetOr<int>(j, "num_groups", m);
  return GroupedGroundSet::FromAssignment(std::move(groups), m);
}

std::shared_ptr<const Graph> GraphFromJson(const json& j) {
  if (j.contains("edge_file")) {
    return std::make_shared<const Graph>(
        LoadEdgeList(Get<std::string>(j, "edge_file"),
                     GetOr<double>(j, "p_edge", 0.1), GetOr<int>(j, "nodes", 0)));
  }
  std::vector<Edge> edges;
  int n = GetOr<int>(j, "nodes", 0);
  double default_p = GetOr<double>(j, "p_edge", 0.1);
  for (const json& e : Need(j, "edges")) {
    if (!e.is_array() || e.size() < 2 || e.size() > 3) {
      throw InputError("edges are [src, dst] or [src, dst, p]");
    }
    Edge edge{e[0].get<int>(), e[1].get<int>(),
              e.size() == 3 ? e[2].get<double>() : default_p};
    n = std::max({n, edge.src + 1, edge.dst + 1});
    edges.push_back(edge);
  }
  return std::make_shared<const Graph>(n, std::move(edges));
}

SetObjective ObjectiveFromJson(const json& j) {
  const std::string type = TypeOf(j);
  if (type == "modular") return MakeModular(Get<std::vector<double>>(j, "weights"));
  if (type == "coverage") {
    return MakeCoverage(Get<std::vector<std::vector<int>>>(j, "sets"),
                        GetOr<std::vector<double>>(j, "weights", {}));
  }
  if (type == "concave_overlap") {
    return MakeConcaveOverlap(Get<std::vector<std::vector<int>>>(j, "sets"),
                              GetOr<std::vector<double>>(j, "weights", {}));
  }
  if (type == "cut") {
    std::vector<WeightedEdge> edges;
    for (const json& e : Need(j, "edges")) {
      if (!e.is_array() || e.size() < 2 || e.size() > 3) {
        throw InputError("cut edges are [src, dst] or [src, dst, weight]");
      }
      edges.push_back({e[0].get<int>(), e[1].get<int>(),
                       e.size() == 3 ? e[2].get<double>() : 1.0});
    }
    return MakeCut(Get<int>(j, "n"), std::move(edges), GetOr<bool>(j, "directed", true));
  }
  if (type == "mnl") {
    MnlParams p;
    p.theta = Get<std::vector<double>>(j, "theta");
    p.nu = Get<std::vector<std::vector<double>>>(j, "nu");
    p.nu0 = Get<std::vector<double>>(j, "nu0");
    return MakeMnl(std::move(p));
  }
  if (type == "sum") {
    std::vector<SetObjective> parts;
    for (const json& part : Need(j, "parts")) parts.push_back(ObjectiveFromJson(part));
    return MakeSum(std::move(parts));
  }
  if (type == "ic") {
    return MakeIcObjective(GraphFromJson(j), GetOr<int>(j, "samples", 200),
                           GetOr<uint64_t>(j, "seed", 1));
  }
  throw InputError("unknown objective type '" + type + "'");
}

StatePrior PriorFromJson(const json& j) {
  if (j.contains("independent")) {
    return StatePrior::Independent(
        Get<std::vector<std::vector<double>>>(j, "independent"));
  }
  std::vector<WeightedRealization> support;
  int n = -1;
  for (const json& w : Need(j, "support")) {
    WeightedRealization r{Get<Realization>(w, "states"), Get<double>(w, "p")};
    if (n >= 0 && static_cast<int>(r.states.size()) != n) {
      throw InputError("realizations must all have the same length");
    }
    n = static_cast<int>(r.states.size());
    support.push_back(std::move(r));
  }
  if (n < 0) throw InputError("prior support is empty");
  return StatePrior::Enumerated(n, std::move(support));
}

AdaptiveObjective UtilityFromJson(const json& j) {
  const std::string type = TypeOf(j);
  if (type == "additive") {
    return MakeAdditiveUtility(Get<std::vector<std::vector<double>>>(j, "values"));
  }
  if (type == "max") {
    return MakeMaxUtility(Get<std::vector<std::vector<double>>>(j, "values"));
  }
  using Covers = std::vector<std::vector<std::vector<int>>>;
  if (type == "pair_coverage") {
    return MakePairCoverageUtility(Get<Covers>(j, "covers"),
                                   GetOr<std::vector<double>>(j, "weights", {}));
  }
  if (type == "pair_overlap") {
    return MakePairOverlapUtility(Get<Covers>(j, "covers"),
                                  GetOr<std::vector<double>>(j, "weights", {}));
  }
  throw InputError("unknown utility type '" + type + "'");
}

AdaptiveSpec AdaptiveFromJson(const json& j) {
  const std::string type = TypeOf(j);
  AdaptiveSpec spec;
  if (type == "tabular") {
    StatePrior prior = PriorFromJson(Need(j, "prior"));
    AdaptiveObjective f = UtilityFromJson(Need(j, "utility"));
    EstimatorConfig est;
    if (j.contains("estimator")) {
      const json& e = j["estimator"];
      est.exact = GetOr<bool>(e, "exact", est.exact);
      est.samples = GetOr<int>(e, "samples", est.samples);
    }
    spec.instance = std::make_shared<TabularInstance>(prior, f, est);
    spec.prior = std::move(prior);
    spec.utility = std::move(f);
    return spec;
  }
  if (type == "ic") {
    IcEstimator est{GetOr<bool>(j, "exact", false), GetOr<int>(j, "samples", 200)};
    spec.instance = std::make_shared<IcAdaptiveInstance>(GraphFromJson(j), est);
    return spec;
  }
  throw InputError("unknown adaptive instance type '" + type + "'");
}

}  // namespace fairsub
