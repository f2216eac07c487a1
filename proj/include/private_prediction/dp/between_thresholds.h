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

#ifndef PRIVATE_PREDICTION_DP_BETWEEN_THRESHOLDS_H_
#define PRIVATE_PREDICTION_DP_BETWEEN_THRESHOLDS_H_

#include <cstdint>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "private_prediction/core/noise_source.h"

namespace private_prediction {

struct BTParams {
  double epsilon = 0.0;
  double delta = 0.0;
  // Database size; queries have sensitivity 1/n. For an ensemble vote this
  // is the number of blocks.
  int64_t n = 0;
  double t_lower = 3.0 / 8.0;
  double t_upper = 5.0 / 8.0;
  int64_t max_queries = 0;
  // Multiplies both Laplace scales. Anything other than 1 breaks the privacy
  // guarantee; it exists so auditing can exercise a miscalibrated instance.
  double noise_multiplier = 1.0;
};

// Smallest threshold gap for which an instance with these parameters is
// (epsilon, delta)-private:
//   12 / (epsilon * n) * (ln(10 / epsilon) + ln(1 / delta) + 1).
double RequiredThresholdGap(double epsilon, double delta, int64_t n);

// Checks ranges and the gap precondition.
absl::Status ValidateBTParams(const BTParams& params);

enum class BTOutcome { kLeft, kRight, kTop };

std::string_view ToString(BTOutcome outcome);

// A live BetweenThresholds instance.
//
// Both thresholds are perturbed by one shared draw mu ~ Lap(2 / (eps n)):
// the lower moves up by mu and the upper moves down by mu. Each query value
// gets independent Lap(6 / (eps n)) noise and is compared against the noisy
// thresholds. The instance halts after its first Top.
class BetweenThresholds {
 public:
  // Fails with kInvalidArgument naming the required gap when the gap
  // precondition does not hold.
  static absl::StatusOr<BetweenThresholds> Create(const BTParams& params,
                                                  NoiseSource& noise);

  // Answers one query value in [0, 1]. Querying a halted or exhausted
  // instance is a kFailedPrecondition error.
  absl::StatusOr<BTOutcome> Query(double value, NoiseSource& noise);

  const BTParams& params() const { return params_; }
  double noisy_lower() const { return noisy_lower_; }
  double noisy_upper() const { return noisy_upper_; }
  bool halted() const { return halted_; }
  int64_t queries_answered() const { return queries_answered_; }

 private:
  BetweenThresholds(const BTParams& params, double noisy_lower,
                    double noisy_upper)
      : params_(params), noisy_lower_(noisy_lower), noisy_upper_(noisy_upper) {}

  BTParams params_;
  double noisy_lower_;
  double noisy_upper_;
  bool halted_ = false;
  int64_t queries_answered_ = 0;
};

}  // namespace private_prediction

#endif  // PRIVATE_PREDICTION_DP_BETWEEN_THRESHOLDS_H_
