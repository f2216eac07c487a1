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

#include "private_prediction/harness/planner.h"

#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"
#include "private_prediction/base/status_macros.h"
#include "private_prediction/dp/between_thresholds.h"
#include "private_prediction/predictor/predictor.h"

namespace private_prediction {
namespace {

constexpr double kMaxCount = 4.0e18;

absl::Status CheckInputs(const PlanInputs& in) {
  const auto in_unit = [](double v) { return v > 0.0 && v < 1.0; };
  if (in.d < 1) return absl::InvalidArgumentError("d must be >= 1");
  if (in.rounds < 0) return absl::InvalidArgumentError("T must be >= 0");
  if (!in_unit(in.alpha)) return absl::InvalidArgumentError("alpha must lie in (0, 1)");
  if (!in_unit(in.beta)) return absl::InvalidArgumentError("beta must lie in (0, 1)");
  if (!(in.epsilon > 0.0) || !std::isfinite(in.epsilon)) {
    return absl::InvalidArgumentError("epsilon must be positive");
  }
  if (!in_unit(in.delta)) return absl::InvalidArgumentError("delta must lie in (0, 1)");
  if (!(in.block_size_constant > 0.0)) {
    return absl::InvalidArgumentError("block size constant must be positive");
  }
  return absl::OkStatus();
}

absl::Status NeedLogT(const PlanInputs& in) {
  if (in.rounds < 2) {
    return absl::InvalidArgumentError(
        "Closed forms need T >= 2 (ln T > 0); override every per-instance "
        "parameter for shorter runs");
  }
  return absl::OkStatus();
}

absl::Status Positive(double value, absl::string_view name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    return absl::InvalidArgumentError(
        absl::StrCat(name, " = ", value, " must be positive and finite"));
  }
  return absl::OkStatus();
}

// Shared tail: k, m, N and the Top budget.
absl::StatusOr<PlanResult> Finish(const PlanInputs& in, PlanResult plan,
                                  const PlanOverrides& overrides,
                                  int64_t default_top_budget) {
  if (!(plan.epsilon_bt > 0.0) || !std::isfinite(plan.epsilon_bt)) {
    return absl::InvalidArgumentError(
        absl::StrCat("eps_bt = ", plan.epsilon_bt, " must be positive"));
  }
  if (!(plan.delta_bt > 0.0 && plan.delta_bt < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta_bt = ", plan.delta_bt, " must lie in (0, 1)"));
  }
  if (!(plan.beta_bt > 0.0 && plan.beta_bt < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("beta_bt = ", plan.beta_bt, " must lie in (0, 1)"));
  }
  if (!(plan.alpha_bt > 0.0 && plan.alpha_bt < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("alpha_bt = ", plan.alpha_bt, " must lie in (0, 1)"));
  }
  const double k = (64.0 / plan.epsilon_bt) *
                   (std::log(static_cast<double>(in.rounds) + 1.0) +
                    std::log(1.0 / plan.beta_bt));
  if (!(k < kMaxCount)) {
    return absl::InvalidArgumentError(absl::StrCat("k = ", k, " overflows"));
  }
  const double gap_blocks =
      12.0 *
      (std::log(10.0 / plan.epsilon_bt) + std::log(1.0 / plan.delta_bt) + 1.0) /
      (plan.epsilon_bt * (kVoteUpperThreshold - kVoteLowerThreshold));
  if (!(gap_blocks < kMaxCount)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Gap-safe k = ", gap_blocks, " overflows"));
  }
  plan.k = BlockCount(plan.epsilon_bt, in.rounds, plan.beta_bt);
  const int64_t gap_k = MinBlocksForGap(plan.epsilon_bt, plan.delta_bt);
  if (gap_k > plan.k) {
    plan.k = gap_k;
    plan.k_raised_for_gap = true;
  }
  if (overrides.block_size.has_value()) {
    if (*overrides.block_size < 1) {
      return absl::InvalidArgumentError("block_size override must be >= 1");
    }
    plan.m = *overrides.block_size;
  } else {
    const double d = in.d;
    const double m = in.block_size_constant *
                     (d * std::log(d / plan.alpha_bt) +
                      std::log(1.0 / plan.beta_bt)) /
                     (plan.alpha_bt * plan.alpha_bt);
    if (!(m < kMaxCount)) {
      return absl::InvalidArgumentError(absl::StrCat("m = ", m, " overflows"));
    }
    plan.m = std::max<int64_t>(1, static_cast<int64_t>(std::ceil(m)));
  }
  if (static_cast<double>(plan.k) * static_cast<double>(plan.m) >= kMaxCount) {
    return absl::InvalidArgumentError("N = k m overflows");
  }
  plan.n = plan.k * plan.m;
  if (overrides.top_budget.has_value()) {
    if (*overrides.top_budget < 1) {
      return absl::InvalidArgumentError("top_budget override must be >= 1");
    }
    plan.top_budget = *overrides.top_budget;
  } else {
    plan.top_budget = default_top_budget;
  }
  plan.required_gap = RequiredThresholdGap(plan.epsilon_bt, plan.delta_bt, plan.k);
  return plan;
}

}  // namespace

absl::StatusOr<PlanResult> PlanOblivious(const PlanInputs& in,
                                         const PlanOverrides& overrides) {
  PP_RETURN_IF_ERROR(CheckInputs(in));
  const bool closed_form_needed =
      !overrides.epsilon_bt || !overrides.delta_bt || !overrides.beta_bt ||
      !overrides.alpha_bt;
  PlanResult plan;
  if (closed_form_needed) {
    PP_RETURN_IF_ERROR(NeedLogT(in));
    const double d = in.d;
    const double log_t = std::log(static_cast<double>(in.rounds));
    const double l =
        std::log(d * log_t / (in.alpha * in.beta * in.epsilon * in.delta));
    PP_RETURN_IF_ERROR(Positive(l, "ln(d ln T / (alpha beta eps delta))"));
    const double big_l = d * log_t + l;
    plan.beta_bt = in.beta * in.epsilon / (big_l * std::sqrt(big_l * l) * l);
    plan.epsilon_bt = in.epsilon / std::sqrt(big_l * l);
    plan.delta_bt = in.delta / big_l;
    plan.alpha_bt = in.alpha / big_l;
  }
  if (overrides.epsilon_bt) plan.epsilon_bt = *overrides.epsilon_bt;
  if (overrides.delta_bt) plan.delta_bt = *overrides.delta_bt;
  if (overrides.beta_bt) plan.beta_bt = *overrides.beta_bt;
  if (overrides.alpha_bt) plan.alpha_bt = *overrides.alpha_bt;
  return Finish(in, plan, overrides,
                DefaultObliviousTopBudget(in.d, in.rounds, in.beta));
}

absl::StatusOr<PlanResult> PlanHalfspace(const PlanInputs& in,
                                         const PlanOverrides& overrides) {
  PP_RETURN_IF_ERROR(CheckInputs(in));
  const double d = in.d;
  PlanResult plan;
  if (!overrides.beta_bt) {
    PP_RETURN_IF_ERROR(NeedLogT(in));
    const double log_t = std::log(static_cast<double>(in.rounds));
    const double inner = d * std::log(d * log_t / in.delta);
    PP_RETURN_IF_ERROR(Positive(inner, "d ln(d ln T / delta)"));
    const double tail = std::log(d) + std::log(log_t) +
                        std::log(std::log(1.0 / in.delta)) +
                        std::log(1.0 / in.epsilon);
    PP_RETURN_IF_ERROR(
        Positive(tail, "ln d + ln ln T + ln ln(1 / delta) + ln(1 / eps)"));
    plan.beta_bt =
        in.beta * in.epsilon / (d * log_t * std::sqrt(inner) * tail);
  }
  const double eps_inner = d * std::log(d / in.delta);
  PP_RETURN_IF_ERROR(Positive(eps_inner, "d ln(d / delta)"));
  plan.epsilon_bt = in.epsilon / std::sqrt(eps_inner);
  plan.delta_bt = in.delta / d;
  plan.alpha_bt = in.alpha / (d * d);
  if (overrides.epsilon_bt) plan.epsilon_bt = *overrides.epsilon_bt;
  if (overrides.delta_bt) plan.delta_bt = *overrides.delta_bt;
  if (overrides.beta_bt) plan.beta_bt = *overrides.beta_bt;
  if (overrides.alpha_bt) plan.alpha_bt = *overrides.alpha_bt;
  return Finish(in, plan, overrides, DefaultHalfspaceTopBudget(in.d));
}

absl::StatusOr<PlanResult> PlanExperiment(const ExperimentConfig& config,
                                          int vc_dimension) {
  PlanInputs in;
  in.d = config.mode == Mode::kHalfspace ? config.dimension : vc_dimension;
  in.rounds = config.rounds;
  in.alpha = config.alpha;
  in.beta = config.beta;
  in.epsilon = config.epsilon;
  in.delta = config.delta;
  in.block_size_constant = config.block_size_constant;
  if (config.mode == Mode::kHalfspace) return PlanHalfspace(in, config.overrides);
  return PlanOblivious(in, config.overrides);
}

}  // namespace private_prediction
