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

#include "private_prediction/dp/between_thresholds.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "private_prediction/base/status_macros.h"
#include "private_prediction/dp/laplace.h"

namespace private_prediction {

double RequiredThresholdGap(double epsilon, double delta, int64_t n) {
  return 12.0 / (epsilon * static_cast<double>(n)) *
         (std::log(10.0 / epsilon) + std::log(1.0 / delta) + 1.0);
}

absl::Status ValidateBTParams(const BTParams& params) {
  if (!(params.epsilon > 0.0) || !std::isfinite(params.epsilon)) {
    return absl::InvalidArgumentError("BetweenThresholds epsilon must be > 0");
  }
  if (!(params.delta > 0.0 && params.delta < 1.0)) {
    return absl::InvalidArgumentError(
        "BetweenThresholds delta must lie in (0, 1)");
  }
  if (params.n < 1) {
    return absl::InvalidArgumentError("BetweenThresholds n must be >= 1");
  }
  if (!(params.t_lower > 0.0 && params.t_lower < params.t_upper &&
        params.t_upper < 1.0)) {
    return absl::InvalidArgumentError(
        "Thresholds must satisfy 0 < t_lower < t_upper < 1");
  }
  if (params.max_queries < 0) {
    return absl::InvalidArgumentError("max_queries must be >= 0");
  }
  if (!(params.noise_multiplier > 0.0)) {
    return absl::InvalidArgumentError("noise_multiplier must be > 0");
  }
  const double required =
      RequiredThresholdGap(params.epsilon, params.delta, params.n);
  const double gap = params.t_upper - params.t_lower;
  if (gap < required) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Threshold gap ", gap, " is below the required gap ", required,
        " for epsilon=", params.epsilon, ", delta=", params.delta,
        ", n=", params.n));
  }
  return absl::OkStatus();
}

std::string_view ToString(BTOutcome outcome) {
  switch (outcome) {
    case BTOutcome::kLeft:
      return "L";
    case BTOutcome::kRight:
      return "R";
    case BTOutcome::kTop:
      return "T";
  }
  return "?";
}

absl::StatusOr<BetweenThresholds> BetweenThresholds::Create(
    const BTParams& params, NoiseSource& noise) {
  PP_RETURN_IF_ERROR(ValidateBTParams(params));
  const double scale = params.noise_multiplier * 2.0 /
                       (params.epsilon * static_cast<double>(params.n));
  PP_ASSIGN_OR_RETURN(const double mu, SampleLaplace(scale, noise));
  return BetweenThresholds(params, params.t_lower + mu, params.t_upper - mu);
}

absl::StatusOr<BTOutcome> BetweenThresholds::Query(double value,
                                                   NoiseSource& noise) {
  if (halted_) {
    return absl::FailedPreconditionError(
        "BetweenThresholds instance already halted after a Top");
  }
  if (queries_answered_ >= params_.max_queries) {
    return absl::FailedPreconditionError(absl::StrCat(
        "BetweenThresholds query budget of ", params_.max_queries,
        " exhausted"));
  }
  if (!(value >= 0.0 && value <= 1.0)) {
    return absl::InvalidArgumentError("Query value must lie in [0, 1]");
  }
  const double scale = params_.noise_multiplier * 6.0 /
                       (params_.epsilon * static_cast<double>(params_.n));
  PP_ASSIGN_OR_RETURN(const double nu, SampleLaplace(scale, noise));
  const double noisy_value = value + nu;
  ++queries_answered_;
  if (noisy_value < noisy_lower_) return BTOutcome::kLeft;
  if (noisy_value > noisy_upper_) return BTOutcome::kRight;
  halted_ = true;
  return BTOutcome::kTop;
}

}  // namespace private_prediction
