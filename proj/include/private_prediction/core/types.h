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

#ifndef PRIVATE_PREDICTION_CORE_TYPES_H_
#define PRIVATE_PREDICTION_CORE_TYPES_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"

namespace private_prediction {

// A binary label. The underlying values are the +1/-1 used in vote sums.
enum class Label : int8_t { kNegative = -1, kPositive = 1 };

constexpr int ToInt(Label label) { return static_cast<int>(label); }
constexpr Label Negate(Label label) {
  return label == Label::kPositive ? Label::kNegative : Label::kPositive;
}
// Maps x >= 0 to +1 and x < 0 to -1.
constexpr Label LabelFromSign(double x) {
  return x >= 0 ? Label::kPositive : Label::kNegative;
}
absl::StatusOr<Label> LabelFromInt(int64_t value);

// A point of the query domain. Coordinates are always finite.
class Point {
 public:
  Point() = default;
  // Callers guarantee finiteness; use Create() for untrusted input.
  explicit Point(std::vector<double> coordinates)
      : coordinates_(std::move(coordinates)) {}
  Point(std::initializer_list<double> coordinates)
      : coordinates_(coordinates) {}

  static absl::StatusOr<Point> Create(std::vector<double> coordinates);

  int dimension() const { return static_cast<int>(coordinates_.size()); }
  double operator[](int i) const { return coordinates_[i]; }
  std::span<const double> coordinates() const { return coordinates_; }

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;

 private:
  std::vector<double> coordinates_;
};

std::string ToString(const Point& point);

struct LabeledExample {
  Point x;
  Label y;

  friend bool operator==(const LabeledExample&,
                         const LabeledExample&) = default;
};

// Ordered multiset of labeled examples sharing one dimension.
class LabeledSample {
 public:
  LabeledSample() = default;

  static absl::StatusOr<LabeledSample> Create(
      std::vector<LabeledExample> records);

  size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  // Zero for an empty sample.
  int dimension() const {
    return records_.empty() ? 0 : records_.front().x.dimension();
  }
  const LabeledExample& operator[](size_t i) const { return records_[i]; }
  std::span<const LabeledExample> records() const { return records_; }
  auto begin() const { return records_.begin(); }
  auto end() const { return records_.end(); }

  friend bool operator==(const LabeledSample&, const LabeledSample&) = default;

 private:
  explicit LabeledSample(std::vector<LabeledExample> records)
      : records_(std::move(records)) {}

  std::vector<LabeledExample> records_;
};

}  // namespace private_prediction

#endif  // PRIVATE_PREDICTION_CORE_TYPES_H_
