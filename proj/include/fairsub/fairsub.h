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


/* C interface to the fairsub library. Handles are opaque; every fallible
 * call returns an fs_status and leaves a message for fs_last_error() on the
 * calling thread. Strings returned through char** are owned by the caller
 * and released with fs_string_free().
 *
 * Structured inputs and results are JSON text. See README.md for the
 * layouts. */

#ifndef FAIRSUB_FAIRSUB_H_
#define FAIRSUB_FAIRSUB_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define FS_API __declspec(dllexport)
#else
#define FS_API __attribute__((visibility("default")))
#endif

typedef enum fs_status {
  FS_OK = 0,
  FS_ERR_INPUT = 1,
  FS_ERR_INFEASIBLE = 2,
  FS_ERR_CAPABILITY = 3,
  FS_ERR_CONTRACT = 4,
  FS_ERR_IO = 5,
  FS_ERR_INTERNAL = 6
} fs_status;

typedef struct fs_ground fs_ground;
typedef struct fs_objective fs_objective;
typedef struct fs_adaptive fs_adaptive;

FS_API const char* fs_version(void);
/* Message of the last failed call on this thread; "" after a success. */
FS_API const char* fs_last_error(void);
FS_API const char* fs_status_name(fs_status status);
FS_API void fs_string_free(char* s);

/* Ground sets. group_of[e] in [0, num_groups). */
FS_API fs_status fs_ground_from_groups(const int* group_of, size_t n,
                                       int num_groups, fs_ground** out);
FS_API fs_status fs_ground_from_json(const char* json, fs_ground** out);
FS_API fs_status fs_ground_load(const char* path, fs_ground** out);
FS_API size_t fs_ground_size(const fs_ground* g);
FS_API int fs_ground_num_groups(const fs_ground* g);
FS_API void fs_ground_free(fs_ground* g);

/* Set objectives. */
FS_API fs_status fs_objective_from_json(const char* json, fs_objective** out);
FS_API fs_status fs_objective_evaluate(const fs_objective* f, const int* items,
                                       size_t count, double* value);
FS_API uint64_t fs_objective_eval_count(const fs_objective* f);
FS_API void fs_objective_free(fs_objective* f);

/* Non-adaptive solvers. options: {"mode": "group_equality" | "cardinality" |
 * "monotone" | "hi", "alpha", "cardinality", "p", "seed", "repeats",
 * "padding": "index" | "shuffled" | "ranked"}. */
FS_API fs_status fs_solve(const fs_objective* f, const fs_ground* g,
                          const char* options, char** result_json);
/* Exhaustive optimum. options: {"constraint": "none" | "group_equality" |
 * "cardinality" | "equity", "alpha", "cardinality", "low", "high"}. */
FS_API fs_status fs_brute_force(const fs_objective* f, const fs_ground* g,
                                const char* options, char** result_json);

/* Adaptive instances. */
FS_API fs_status fs_adaptive_from_json(const char* json, fs_adaptive** out);
FS_API void fs_adaptive_free(fs_adaptive* a);
/* Runs a policy for "episodes" episodes. options: {"mode": "group_equality" |
 * "monotone" | "equity" | "ahi", "alpha", "p", "seed", "episodes",
 * "padding", "low", "high", "cardinality"}. */
FS_API fs_status fs_adaptive_evaluate(const fs_adaptive* a, const fs_ground* g,
                                      const char* options, char** result_json);
/* Optimal policy value and best fixed set; tabular instances only. Takes the
 * same constraint options as fs_brute_force. */
FS_API fs_status fs_adaptive_optimum(const fs_adaptive* a, const fs_ground* g,
                                     const char* options, char** result_json);

/* Influence sweeps. json_out may be NULL. */
FS_API fs_status fs_experiment_run(const char* config_json, char** csv_out,
                                   char** json_out);

/* Property and acceptance suites. options: {"level": "fast" | "full",
 * "seed", "criteria": [ids]}; a criteria list runs only those criteria.
 * *passed is 1 when everything passed. */
FS_API fs_status fs_checks_run(const char* options, int* passed,
                               char** summary_json, char** summary_text);

#ifdef __cplusplus
}
#endif

#endif /* FAIRSUB_FAIRSUB_H_ */
