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

#ifndef PRIVATE_PREDICTION_HARNESS_AUDIT_H_
#define PRIVATE_PREDICTION_HARNESS_AUDIT_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "private_prediction/core/types.h"
#include "private_prediction/dp/accountant.h"
#include "private_prediction/dp/auditor.h"
#include "private_prediction/harness/config.h"
#include "private_prediction/harness/planner.h"

namespace private_prediction {

struct AuditReport {
  PlanResult plan;
  // Advanced composition over the Top budget's worth of instances.
  PrivacyCost budget;
  AuditResult correct;
  // Same predictor with every Laplace scale multiplied by
  // audit.broken_multiplier.
  AuditResult broken;
  // correct.eps_hat <= budget.epsilon + audit.ci_slack.
  bool correct_pass = false;
  // broken.eps_hat > budget.epsilon.
  bool broken_flagged = false;
  int64_t changed_index = 0;
  std::vector<Point> queries;
};

// Output of one predictor run as audited: the round of the first Top (0 if
// none), then the first prefix_length released labels as +-1 (0 past the
// end of the run).
absl::StatusOr<DiscreteOutput> AuditOutput(const std::vector<int64_t>& top_rounds,
                                           const std::vector<Label>& labels,
                                           int64_t prefix_length);

// "first Top at round j" for j = 1..T, "no Top", and every label prefix of
// length 1..prefix_length.
std::vector<AuditEvent> AuditEvents(int64_t rounds, int64_t prefix_length);

// Audits an oblivious threshold run. One sample is drawn from the config's
// seed; its neighbor flips the label of the record nearest the target. Every
// trial answers the same fixed query list and the mechanism output is
// AuditOutput().
absl::StatusOr<AuditReport> RunPrivacyAudit(const ExperimentConfig& config,
                                            int workers = 1);

}  // namespace private_prediction

#endif  // PRIVATE_PREDICTION_HARNESS_AUDIT_H_
