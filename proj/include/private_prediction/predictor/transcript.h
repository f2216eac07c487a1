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

#ifndef PRIVATE_PREDICTION_PREDICTOR_TRANSCRIPT_H_
#define PRIVATE_PREDICTION_PREDICTOR_TRANSCRIPT_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "private_prediction/concepts/hypothesis.h"
#include "private_prediction/core/types.h"
#include "private_prediction/dp/between_thresholds.h"

namespace private_prediction {

struct TranscriptEntry {
  // 1-based round index.
  int64_t round = 0;
  Point x;
  BTOutcome outcome = BTOutcome::kLeft;
  // -1 on L, +1 on R, the recorded coin on Top.
  Label label = Label::kNegative;
  // Fraction of +1 votes fed to BetweenThresholds. Never released; kept for
  // diagnostics.
  double vote = 0.0;
  friend bool operator==(const TranscriptEntry&,
                         const TranscriptEntry&) = default;
};

// True iff the label agrees with a non-Top outcome. Top rounds are always
// coherent.
bool IsCoherent(const TranscriptEntry& entry);

// Top rounds so far, in order. Append-only and bounded.
class HardQuerySet {
 public:
  explicit HardQuerySet(int64_t capacity) : capacity_(capacity) {}

  // Fails on a non-Top entry or when full.
  absl::Status Append(const TranscriptEntry& entry);

  int64_t size() const { return static_cast<int64_t>(entries_.size()); }
  int64_t capacity() const { return capacity_; }
  bool full() const { return size() >= capacity_; }
  std::span<const TranscriptEntry> entries() const { return entries_; }

 private:
  int64_t capacity_;
  std::vector<TranscriptEntry> entries_;
};

// Fraction of hypotheses voting +1 at x: (1/2)(1 + (1/k) sum f(x)). Fails
// when `hypotheses` is empty or one cannot evaluate x.
absl::StatusOr<double> VoteFraction(std::span<const Hypothesis> hypotheses,
                                    const Point& x);

}  // namespace private_prediction

#endif  // PRIVATE_PREDICTION_PREDICTOR_TRANSCRIPT_H_
