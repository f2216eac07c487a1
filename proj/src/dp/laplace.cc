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

#include "private_prediction/dp/laplace.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace private_prediction {

double LaplaceQuantile(double u, double scale) {
  const double centered = u - 0.5;
  if (centered == 0.0) return 0.0;
  const double magnitude = -scale * std::log1p(-2.0 * std::abs(centered));
  return centered < 0 ? -magnitude : magnitude;
}

double LaplaceCdf(double x, double scale) {
  if (x < 0) return 0.5 * std::exp(x / scale);
  return 1.0 - 0.5 * std::exp(-x / scale);
}

absl::StatusOr<double> SampleLaplace(double scale, NoiseSource& noise) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Laplace scale must be finite and positive, got ", scale));
  }
  return LaplaceQuantile(noise.Uniform(), scale);
}

}  // namespace private_prediction
