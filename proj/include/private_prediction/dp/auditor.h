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

#ifndef PRIVATE_PREDICTION_DP_AUDITOR_H_
#define PRIVATE_PREDICTION_DP_AUDITOR_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "private_prediction/core/noise_source.h"
#include "private_prediction/core/types.h"

namespace private_prediction {

// Mechanism outputs are encoded as integer sequences so events can be
// arbitrary predicates over them.
using DiscreteOutput = std::vector<int64_t>;
using Mechanism =
    std::function<DiscreteOutput(const LabeledSample&, NoiseSource&)>;

struct AuditEvent {
  std::string name;
  std::function<bool(const DiscreteOutput&)> contains;
};

struct AuditOptions {
  int64_t trials = 10000;
  // Additive delta subtracted from the larger frequency before taking logs.
  double delta = 0.0;
  // Two-sided Clopper-Pearson confidence level.
  double confidence = 0.95;
  // Threads running trials. Results do not depend on it; the mechanism must
  // be safe to call concurrently.
  int workers = 1;
};

struct EventEstimate {
  std::string name;
  int64_t count = 0;
  int64_t neighbor_count = 0;
  // Conservative estimate, max over both directions; -inf when no direction
  // yields a positive numerator.
  double eps_hat = 0.0;
  // Plug-in log ratio of the raw frequencies (may be +-inf).
  double eps_point = 0.0;
  bool diverged = false;
};

struct AuditResult {
  // Max of per-event conservative estimates; +inf when any event diverged.
  double eps_hat = 0.0;
  // Max of the plug-in ratios over events seen on both sides.
  double eps_point = 0.0;
  bool diverged = false;
  std::string worst_event;
  int64_t trials = 0;
  std::vector<EventEstimate> events;
};

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 1.0;
};

// Exact binomial (Clopper-Pearson) interval for `successes` out of `trials`.
ConfidenceInterval ClopperPearson(int64_t successes, int64_t trials,
                                  double confidence);

// Monte-Carlo lower estimate of the privacy loss of `mechanism` between two
// neighboring samples.
//
// For each event E and each direction, with p the lower confidence bound of
// Pr[M(S) in E] and p' the upper bound of Pr[M(S') in E], the estimate is
// ln((p - delta) / p'). An event whose count is zero on one side while the
// other side's lower bound exceeds delta cannot satisfy the definition for
// any finite epsilon within the confidence level; it is flagged as diverged
// instead of producing a number.
//
// The inputs must have equal size and differ in exactly one position, and at
// least 1000 trials are required. This is an empirical lower estimate, not a
// proof of privacy.
absl::StatusOr<AuditResult> AuditDp(const Mechanism& mechanism,
                                    const LabeledSample& sample,
                                    const LabeledSample& neighbor,
                                    const std::vector<AuditEvent>& events,
                                    const AuditOptions& options,
                                    NoiseSource& noise);

}  // namespace private_prediction

#endif  // PRIVATE_PREDICTION_DP_AUDITOR_H_
