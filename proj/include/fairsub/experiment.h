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

// Influence-maximization sweeps over grouping strategy, group count, alpha,
// edge probability and solver. Every cell of a sweep shares the instance
// seeds, and all solvers in a cell are scored on the same hidden worlds.

#ifndef FAIRSUB_EXPERIMENT_H_
#define FAIRSUB_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairsub/ground.h"
#include "fairsub/influence.h"
#include "fairsub/nonadaptive.h"

namespace fairsub {

enum class Grouping { kRandom, kGaussian };
enum class SolverKind { kSg, kAsg, kHi, kAhi };

std::string GroupingName(Grouping g);
std::string SolverName(SolverKind s);
std::string PaddingName(PaddingOrder p);
// "index", "shuffled" or "ranked".
PaddingOrder ParsePadding(const std::string& s);

struct ExperimentConfig {
  // Edge-list file; empty means the synthetic graph below.
  std::string dataset;
  SyntheticGraphOptions synthetic;
  uint64_t graph_seed = 1;

  std::vector<Grouping> groupings = {Grouping::kRandom, Grouping::kGaussian};
  double sigma = 0.0;  // gaussian spread, <= 0 selects m / 6
  std::vector<int> m = {3};
  std::vector<int> alpha = {0, 10, 50};
  std::vector<double> p_edge = {0.01};
  std::vector<SolverKind> solvers = {SolverKind::kSg, SolverKind::kAsg,
                                     SolverKind::kHi, SolverKind::kAhi};

  double p = kExperimentSamplingRate;
  // Completion order for SG and ASG repairs.
  PaddingOrder padding = PaddingOrder::kRanked;
  bool p_from_config = false;
  // Adaptive solvers: one policy execution per episode, each against its
  // own hidden world. Non-adaptive solvers: `runs` executions, each output
  // scored over `rounds` evaluation worlds. World i is the hidden world of
  // episode i, so rounds == episodes pairs the two estimates.
  int episodes = 100;
  int runs = 10;
  int rounds = 1000;
  int objective_samples = 200;  // worlds behind the non-adaptive objective
  int adaptive_samples = 100;   // Monte Carlo draws per adaptive gain
  uint64_t seed = 1;
  int workers = 1;
  bool timing = false;  // runtime_ms is left empty unless set

  std::string output;
  std::string json_output;
};

// Parses the JSON-compatible config and validates it. Unknown keys are
// rejected so typos surface as input errors.
ExperimentConfig ParseExperimentConfig(const std::string& json_text);
void ValidateExperimentConfig(const ExperimentConfig& cfg);

struct ExperimentRow {
  SolverKind solver = SolverKind::kSg;
  int alpha = 0;
  double p_edge = 0.0;
  int m = 0;
  Grouping grouping = Grouping::kRandom;
  uint64_t seed = 0;
  double mean_utility = 0.0;
  double std_error = 0.0;
  std::optional<double> runtime_ms;
  bool feasible = false;
  std::string branch;
  std::optional<std::string> error;

  // Mirror-only detail.
  double p_used = 0.0;
  int k_min = 0;
  std::vector<int> group_sizes;
  ItemSet set;  // non-adaptive solvers
  double mean_seeds = 0.0;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;
  int num_nodes = 0;
  int num_edges = 0;
};

// Fixed cell order: grouping, m, p_edge, alpha, solver.
ExperimentResult RunExperiment(const ExperimentConfig& cfg);

inline constexpr const char* kCsvHeader =
    "solver,alpha,p_edge,m,grouping,seed,mean_utility,std_error,runtime_ms,"
    "feasible,branch";

std::string FormatCsv(const ExperimentResult& result);
std::string FormatJson(const ExperimentConfig& cfg,
                       const ExperimentResult& result);

}  // namespace fairsub

#endif  // FAIRSUB_EXPERIMENT_H_
