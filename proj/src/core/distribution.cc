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

#include "private_prediction/core/distribution.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "private_prediction/base/status_macros.h"

namespace private_prediction {
namespace {

absl::Status ValidateBase(const std::variant<GridSampler, BoxSampler>& base) {
  if (const auto* grid = std::get_if<GridSampler>(&base)) {
    if (grid->size < 1) {
      return absl::InvalidArgumentError("Grid size must be >= 1");
    }
    return absl::OkStatus();
  }
  const auto& box = std::get<BoxSampler>(base);
  if (box.lower.empty() || box.lower.size() != box.upper.size()) {
    return absl::InvalidArgumentError(
        "Box bounds must be nonempty and of equal dimension");
  }
  for (size_t i = 0; i < box.lower.size(); ++i) {
    if (!std::isfinite(box.lower[i]) || !std::isfinite(box.upper[i]) ||
        !(box.lower[i] < box.upper[i])) {
      return absl::InvalidArgumentError(
          absl::StrCat("Invalid box bounds on axis ", i));
    }
  }
  return absl::OkStatus();
}

int BaseDimension(const std::variant<GridSampler, BoxSampler>& base) {
  if (std::holds_alternative<GridSampler>(base)) return 1;
  return static_cast<int>(std::get<BoxSampler>(base).lower.size());
}

Point SampleBase(const std::variant<GridSampler, BoxSampler>& base,
                 NoiseSource& noise) {
  if (const auto* grid = std::get_if<GridSampler>(&base)) {
    const auto index = noise.UniformIndex(static_cast<uint64_t>(grid->size));
    return Point({static_cast<double>(index + 1)});
  }
  const auto& box = std::get<BoxSampler>(base);
  std::vector<double> coords(box.lower.size());
  for (size_t i = 0; i < coords.size(); ++i) {
    coords[i] = box.lower[i] + noise.Uniform() * (box.upper[i] - box.lower[i]);
  }
  return Point(std::move(coords));
}

}  // namespace

absl::StatusOr<DataDistribution> DataDistribution::Create(
    std::optional<std::variant<GridSampler, BoxSampler>> base,
    std::vector<PointMass> masses, Labeler target) {
  if (!target) return absl::InvalidArgumentError("Target concept is required");
  int dimension = 0;
  if (base.has_value()) {
    PP_RETURN_IF_ERROR(ValidateBase(*base));
    dimension = BaseDimension(*base);
  }
  double total = 0.0;
  for (const PointMass& mass : masses) {
    if (!(mass.weight >= 0.0) || !std::isfinite(mass.weight)) {
      return absl::InvalidArgumentError("Point-mass weights must be >= 0");
    }
    if (dimension == 0) dimension = mass.point.dimension();
    if (mass.point.dimension() != dimension) {
      return absl::InvalidArgumentError(
          "Point masses must match the distribution dimension");
    }
    total += mass.weight;
  }
  if (base.has_value() && total > 1.0 + 1e-12) {
    return absl::InvalidArgumentError(
        "Point-mass weights must sum to at most 1 alongside a base sampler");
  }
  if (!base.has_value() && !(total > 0.0)) {
    return absl::InvalidArgumentError(
        "A distribution needs a base sampler or positive point-mass weight");
  }
  DataDistribution dist;
  dist.base_ = std::move(base);
  dist.masses_ = std::move(masses);
  dist.total_mass_weight_ = total;
  dist.cumulative_weights_.reserve(dist.masses_.size());
  double running = 0.0;
  for (const PointMass& mass : dist.masses_) {
    running += mass.weight;
    dist.cumulative_weights_.push_back(running);
  }
  dist.target_ = std::move(target);
  dist.dimension_ = dimension;
  return dist;
}

Point DataDistribution::SamplePoint(NoiseSource& noise) const {
  if (!masses_.empty()) {
    // Without a base sampler the masses are renormalized to total 1.
    const double scale = base_.has_value() ? 1.0 : total_mass_weight_;
    const double u = noise.Uniform() * scale;
    if (u < total_mass_weight_) {
      const auto it = std::upper_bound(cumulative_weights_.begin(),
                                       cumulative_weights_.end(), u);
      const size_t index = std::min<size_t>(
          static_cast<size_t>(it - cumulative_weights_.begin()),
          masses_.size() - 1);
      return masses_[index].point;
    }
  }
  return SampleBase(*base_, noise);
}

absl::StatusOr<LabeledSample> DrawSample(const DataDistribution& dist,
                                         int64_t n, NoiseSource& noise) {
  if (n < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("Sample size must be >= 1, got ", n));
  }
  std::vector<LabeledExample> records;
  records.reserve(static_cast<size_t>(n));
  for (int64_t i = 0; i < n; ++i) {
    Point x = dist.SamplePoint(noise);
    const Label y = dist.Target(x);
    records.push_back({std::move(x), y});
  }
  return LabeledSample::Create(std::move(records));
}

absl::StatusOr<std::vector<LabeledSample>> Partition(
    const LabeledSample& sample, int64_t k, NoiseSource& noise) {
  if (k < 1) {
    return absl::InvalidArgumentError("Number of blocks must be >= 1");
  }
  const auto n = static_cast<int64_t>(sample.size());
  if (n == 0 || n % k != 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Sample size ", n, " is not a positive multiple of ", k, " blocks"));
  }
  std::vector<size_t> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), size_t{0});
  Shuffle(order, noise);
  const int64_t block_size = n / k;
  std::vector<LabeledSample> blocks;
  blocks.reserve(static_cast<size_t>(k));
  for (int64_t b = 0; b < k; ++b) {
    std::vector<LabeledExample> records;
    records.reserve(static_cast<size_t>(block_size));
    for (int64_t i = 0; i < block_size; ++i) {
      records.push_back(sample[order[static_cast<size_t>(b * block_size + i)]]);
    }
    PP_ASSIGN_OR_RETURN(LabeledSample block,
                        LabeledSample::Create(std::move(records)));
    blocks.push_back(std::move(block));
  }
  return blocks;
}

absl::StatusOr<double> EmpiricalError(
    absl::FunctionRef<Label(const Point&)> h, const LabeledSample& sample) {
  if (sample.empty()) {
    return absl::InvalidArgumentError("Empirical error of an empty sample");
  }
  int64_t mistakes = 0;
  for (const LabeledExample& record : sample) {
    if (h(record.x) != record.y) ++mistakes;
  }
  return static_cast<double>(mistakes) / static_cast<double>(sample.size());
}

}  // namespace private_prediction
