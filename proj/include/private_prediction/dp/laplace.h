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

#ifndef PRIVATE_PREDICTION_DP_LAPLACE_H_
#define PRIVATE_PREDICTION_DP_LAPLACE_H_

#include "absl/status/statusor.h"
#include "private_prediction/core/noise_source.h"

namespace private_prediction {

// One draw from Laplace(0, scale) by inverting the CDF at a uniform draw.
absl::StatusOr<double> SampleLaplace(double scale, NoiseSource& noise);

// Inverse CDF of Laplace(0, scale) at u in (0, 1).
double LaplaceQuantile(double u, double scale);

double LaplaceCdf(double x, double scale);

}  // namespace private_prediction

#endif  // PRIVATE_PREDICTION_DP_LAPLACE_H_
