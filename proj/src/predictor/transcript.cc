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

#include "private_prediction/predictor/transcript.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "private_prediction/base/status_macros.h"

namespace private_prediction {

bool IsCoherent(const TranscriptEntry& entry) {
  switch (entry.outcome) {
    case BTOutcome::kLeft:
      return entry.label == Label::kNegative;
    case BTOutcome::kRight:
      return entry.label == Label::kPositive;
    case BTOutcome::kTop:
      return true;
  }
  return false;
}

absl::Status HardQuerySet::Append(const TranscriptEntry& entry) {
  if (entry.outcome != BTOutcome::kTop) {
    return absl::InvalidArgumentError(
        absl::StrCat("Round ", entry.round, " is not a Top round"));
  }
  if (full()) {
    return absl::ResourceExhaustedError(
        absl::StrCat("Hard query set is full at ", capacity_));
  }
  entries_.push_back(entry);
  return absl::OkStatus();
}

absl::StatusOr<double> VoteFraction(std::span<const Hypothesis> hypotheses,
                                    const Point& x) {
  if (hypotheses.empty()) {
    return absl::InvalidArgumentError("Vote needs at least one hypothesis");
  }
  int64_t positives = 0;
  for (const Hypothesis& h : hypotheses) {
    PP_ASSIGN_OR_RETURN(const Label label, Evaluate(h, x));
    positives += label == Label::kPositive;
  }
  return static_cast<double>(positives) /
         static_cast<double>(hypotheses.size());
}

}  // namespace private_prediction
