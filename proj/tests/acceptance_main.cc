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


// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Thresholds and slack live with each criterion in checks.cc: 3 standard
// errors on every ratio and trend comparison, 1e-9 on exact identities, zero
// tolerance on feasibility and determinism.
//
//   acceptance_main [--seed N] [id ...]

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <set>

#include "fairsub/checks.h"

int main(int argc, char** argv) {
  uint64_t seed = 1;
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
      seed = std::strtoull(argv[++i], nullptr, 10);
    } else {
      only.insert(std::atoi(argv[i]));
    }
  }
  int failed = 0;
  for (const fairsub::Criterion& c : fairsub::AcceptanceCriteria()) {
    if (!only.empty() && !only.count(c.id)) continue;
    fairsub::CheckResult r = fairsub::RunCriterion(c, seed);
    std::printf("%s %s (%lld checked, %.1fs) %s\n", r.passed ? "PASS" : "FAIL",
                r.name.c_str(), static_cast<long long>(r.checked), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
    failed += !r.passed;
  }
  std::printf("%s: %d failed\n", failed ? "FAIL" : "PASS", failed);
  return failed ? 1 : 0;
}
