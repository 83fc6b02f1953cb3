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

#ifndef FAIRSUB_STATS_H_
#define FAIRSUB_STATS_H_

#include <cmath>
#include <span>

namespace fairsub {

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  int count = 0;
};

// Sample mean and standard error (n - 1 denominator); the error is zero for a
// single observation.
inline MeanEstimate Summarize(std::span<const double> values) {
  MeanEstimate out;
  out.count = static_cast<int>(values.size());
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / values.size();
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std_error = std::sqrt(ss / (values.size() - 1) / values.size());
  }
  return out;
}

}  // namespace fairsub

#endif  // FAIRSUB_STATS_H_
