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

#ifndef PRIVATE_PREDICTION_CORE_DISTRIBUTION_H_
#define PRIVATE_PREDICTION_CORE_DISTRIBUTION_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "absl/functional/function_ref.h"
#include "absl/status/statusor.h"
#include "private_prediction/core/noise_source.h"
#include "private_prediction/core/types.h"

namespace private_prediction {

// Uniform over the integer grid {1, ..., size}, as one-dimensional points.
struct GridSampler {
  int64_t size = 0;
};

// Uniform over the axis-aligned box [lower, upper].
struct BoxSampler {
  std::vector<double> lower;
  std::vector<double> upper;
};

struct PointMass {
  Point point;
  double weight = 0.0;
};

// Labels every sampled point; the realizable setting.
using Labeler = std::function<Label(const Point&)>;

// A sampling distribution over the domain together with the target concept.
//
// With a base sampler the point masses take their weights and the base takes
// the remaining mass. Without one the masses must carry positive total weight
// and are renormalized.
class DataDistribution {
 public:
  static absl::StatusOr<DataDistribution> Create(
      std::optional<std::variant<GridSampler, BoxSampler>> base,
      std::vector<PointMass> masses, Labeler target);

  Point SamplePoint(NoiseSource& noise) const;
  Label Target(const Point& x) const { return target_(x); }
  const Labeler& target() const { return target_; }
  int dimension() const { return dimension_; }

 private:
  DataDistribution() = default;

  std::optional<std::variant<GridSampler, BoxSampler>> base_;
  std::vector<PointMass> masses_;
  std::vector<double> cumulative_weights_;
  double total_mass_weight_ = 0.0;
  Labeler target_;
  int dimension_ = 0;
};

// Draws n i.i.d. records labeled by the target. Requires n >= 1.
absl::StatusOr<LabeledSample> DrawSample(const DataDistribution& dist,
                                         int64_t n, NoiseSource& noise);

// Uniformly random partition of `sample` into k equal blocks, by shuffling
// indices. Requires |sample| to be a positive multiple of k.
absl::StatusOr<std::vector<LabeledSample>> Partition(
    const LabeledSample& sample, int64_t k, NoiseSource& noise);

// Fraction of records whose label differs from `h`. Errors on an empty sample.
absl::StatusOr<double> EmpiricalError(
    absl::FunctionRef<Label(const Point&)> h, const LabeledSample& sample);

}  // namespace private_prediction

#endif  // PRIVATE_PREDICTION_CORE_DISTRIBUTION_H_
