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

#ifndef PRIVATE_PREDICTION_HARNESS_PLANNER_H_
#define PRIVATE_PREDICTION_HARNESS_PLANNER_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "private_prediction/harness/config.h"

namespace private_prediction {

struct PlanInputs {
  // VC dimension (oblivious) or ambient dimension (halfspace).
  int d = 1;
  int64_t rounds = 1024;
  double alpha = 0.1;
  double beta = 0.1;
  double epsilon = 1.0;
  double delta = 1e-6;
  // Multiplies the hidden constant of the block size formula.
  double block_size_constant = 1.0;
};

struct PlanResult {
  int64_t k = 0;
  // The closed-form k missed the gap precondition and k was raised to the
  // smallest value that meets it.
  bool k_raised_for_gap = false;
  int64_t m = 0;
  int64_t n = 0;
  double epsilon_bt = 0.0;
  double delta_bt = 0.0;
  double alpha_bt = 0.0;
  double beta_bt = 0.0;
  // Top budget of the run.
  int64_t top_budget = 0;
  // Gap BetweenThresholds needs at these parameters; at most 1/4.
  double required_gap = 0.0;
};

// Closed-form per-instance parameters against an oblivious adversary, for a
// class of VC dimension d. All logs are natural. With
//   L = d ln T + ln(d ln T / (alpha beta eps delta)),
//   l = ln(d ln T / (alpha beta eps delta)):
//   beta_bt = beta eps / (L sqrt(L l) l),  eps_bt = eps / sqrt(L l),
//   delta_bt = delta / L,  alpha_bt = alpha / L,
//   k = ceil((64 / eps_bt)(ln(T + 1) + ln(1 / beta_bt))),
//   m = ceil(c (d ln(d / alpha_bt) + ln(1 / beta_bt)) / alpha_bt^2).
// k is raised to MinBlocksForGap() when that is larger, so every plan meets
// the BetweenThresholds gap precondition. Fails naming the binding
// constraint when an input is out of range.
absl::StatusOr<PlanResult> PlanOblivious(const PlanInputs& inputs,
                                         const PlanOverrides& overrides = {});

// Same for halfspaces in R^d:
//   beta_bt = beta eps / (d ln T sqrt(d ln(d ln T / delta))
//             (ln d + ln ln T + ln ln(1 / delta) + ln(1 / eps))),
//   eps_bt = eps / sqrt(d ln(d / delta)),  delta_bt = delta / d,
//   alpha_bt = alpha / d^2,
// with k and m as above.
absl::StatusOr<PlanResult> PlanHalfspace(const PlanInputs& inputs,
                                         const PlanOverrides& overrides = {});

// Plan for an experiment config: its mode picks the formulas.
absl::StatusOr<PlanResult> PlanExperiment(const ExperimentConfig& config,
                                          int vc_dimension);

}  // namespace private_prediction

#endif  // PRIVATE_PREDICTION_HARNESS_PLANNER_H_
