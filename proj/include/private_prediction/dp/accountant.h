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

#ifndef PRIVATE_PREDICTION_DP_ACCOUNTANT_H_
#define PRIVATE_PREDICTION_DP_ACCOUNTANT_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace private_prediction {

struct PrivacyCost {
  double epsilon = 0.0;
  double delta = 0.0;

  friend bool operator==(const PrivacyCost&, const PrivacyCost&) = default;
};

// Append-only record of the (epsilon, delta) cost of each closed
// BetweenThresholds instance.
class PrivacyLedger {
 public:
  void Append(PrivacyCost cost) { entries_.push_back(cost); }
  std::span<const PrivacyCost> entries() const { return entries_; }
  int64_t size() const { return static_cast<int64_t>(entries_.size()); }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<PrivacyCost> entries_;
};

// Advanced composition of k mechanisms that are each (epsilon, delta)-DP:
//   epsilon' = sqrt(2 k ln(1/delta')) * epsilon
//              + k * epsilon * (e^epsilon - 1) / (e^epsilon + 1),
// and total delta k * delta + delta'.
PrivacyCost AdvancedComposition(int64_t k, PrivacyCost per_mechanism,
                                double delta_prime);

// Composes every ledger entry. All entries must share one (epsilon, delta)
// and delta_prime must lie in (0, 1). An empty ledger costs (0, delta').
absl::StatusOr<PrivacyCost> ComposeAdvanced(const PrivacyLedger& ledger,
                                            double delta_prime);

}  // namespace private_prediction

#endif  // PRIVATE_PREDICTION_DP_ACCOUNTANT_H_
