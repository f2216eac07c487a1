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

#include "private_prediction/dp/accountant.h"

#include <cmath>

#include "absl/status/status.h"

namespace private_prediction {

PrivacyCost AdvancedComposition(int64_t k, PrivacyCost per_mechanism,
                                double delta_prime) {
  if (k == 0) return {0.0, delta_prime};
  const double kd = static_cast<double>(k);
  const double eps = per_mechanism.epsilon;
  // (e^eps - 1) / (e^eps + 1) == tanh(eps / 2), stable for large eps.
  const double epsilon =
      std::sqrt(2.0 * kd * std::log(1.0 / delta_prime)) * eps +
      kd * eps * std::tanh(eps / 2.0);
  return {epsilon, kd * per_mechanism.delta + delta_prime};
}

absl::StatusOr<PrivacyCost> ComposeAdvanced(const PrivacyLedger& ledger,
                                            double delta_prime) {
  if (!(delta_prime > 0.0 && delta_prime < 1.0)) {
    return absl::InvalidArgumentError("delta' must lie in (0, 1)");
  }
  if (ledger.empty()) return PrivacyCost{0.0, delta_prime};
  const PrivacyCost first = ledger.entries().front();
  for (const PrivacyCost& entry : ledger.entries()) {
    if (entry != first) {
      return absl::InvalidArgumentError(
          "Advanced composition requires identical per-instance costs");
    }
  }
  return AdvancedComposition(ledger.size(), first, delta_prime);
}

}  // namespace private_prediction
