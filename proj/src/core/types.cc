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

#include "private_prediction/core/types.h"

#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace private_prediction {

absl::StatusOr<Label> LabelFromInt(int64_t value) {
  if (value == 1) return Label::kPositive;
  if (value == -1) return Label::kNegative;
  return absl::InvalidArgumentError(
      absl::StrCat("Label must be +1 or -1, got ", value));
}

absl::StatusOr<Point> Point::Create(std::vector<double> coordinates) {
  if (coordinates.empty()) {
    return absl::InvalidArgumentError("Point must have dimension >= 1");
  }
  for (double c : coordinates) {
    if (!std::isfinite(c)) {
      return absl::InvalidArgumentError("Point coordinates must be finite");
    }
  }
  return Point(std::move(coordinates));
}

std::string ToString(const Point& point) {
  return absl::StrCat("(", absl::StrJoin(point.coordinates(), ", "), ")");
}

absl::StatusOr<LabeledSample> LabeledSample::Create(
    std::vector<LabeledExample> records) {
  for (const LabeledExample& record : records) {
    if (record.x.dimension() != records.front().x.dimension()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "All points must share one dimension; saw ", record.x.dimension(),
          " and ", records.front().x.dimension()));
    }
    for (double c : record.x.coordinates()) {
      if (!std::isfinite(c)) {
        return absl::InvalidArgumentError("Point coordinates must be finite");
      }
    }
  }
  return LabeledSample(std::move(records));
}

}  // namespace private_prediction
