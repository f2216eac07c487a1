//
// Copyright 2026 The Private Prediction Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef PRIVATE_PREDICTION_GEOMETRY_SUBSAMPLE_CHECK_H_
#define PRIVATE_PREDICTION_GEOMETRY_SUBSAMPLE_CHECK_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "private_prediction/core/noise_source.h"
#include "private_prediction/geometry/depth.h"
#include "private_prediction/geometry/feasible_subspace.h"

namespace private_prediction {

// Subsample size at which cdepth fractions of a uniform subset track those of
// the full set to within alpha, with probability 1 - beta, for halfspaces in
// R^d: ceil((d ln(d / alpha) + ln(1 / beta)) / alpha^2), constant 1.
int64_t CdepthSubsampleBound(int d, double alpha, double beta);

struct SubsampleCheckOptions {
  // Shared sphere sample used as the cdepth candidate set for S and S'.
  int64_t sphere_points = 1000;
  // Fixed probes drawn evenly from the candidate set. Each trial also probes
  // the top-depth candidates of S and of that trial's S'.
  int64_t probes = 48;
  // Allowed excess of the violation fraction over beta; negative selects
  // two binomial standard errors.
  double slack = -1.0;
  CdepthOptions cdepth;
};

struct SubsampleCheckReport {
  int64_t trials = 0;
  int64_t violating_trials = 0;
  int64_t probe_checks = 0;
  int64_t probe_violations = 0;
  double trial_violation_fraction = 0.0;
  double probe_violation_fraction = 0.0;
  double max_gap = 0.0;
  double slack = 0.0;
  int64_t indeterminate = 0;
  // trial_violation_fraction <= beta + slack.
  bool pass = false;
};

// Draws `trials` uniform size-m subsets S' of `constraints` and reports how
// often some probe p has |cdepth_S(p)/n - cdepth_S'(p)/m| > alpha. Fails with
// kFailedPrecondition when m is below CdepthSubsampleBound.
absl::StatusOr<SubsampleCheckReport> CdepthSubsampleCheck(
    const std::vector<Constraint>& constraints, int64_t m, int64_t trials,
    double alpha, double beta, NoiseSource& noise,
    const SubsampleCheckOptions& options = {});

}  // namespace private_prediction

#endif  // PRIVATE_PREDICTION_GEOMETRY_SUBSAMPLE_CHECK_H_
