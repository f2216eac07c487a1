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

#ifndef PRIVATE_PREDICTION_CONCEPTS_HYPOTHESIS_H_
#define PRIVATE_PREDICTION_CONCEPTS_HYPOTHESIS_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "private_prediction/core/types.h"

namespace private_prediction {

// Finite class given extensionally: row i lists hypothesis i's labels on
// `points`, in order.
class PatternTable {
 public:
  static absl::StatusOr<std::shared_ptr<const PatternTable>> Create(
      std::vector<Point> points, std::vector<std::vector<Label>> patterns);

  const std::vector<Point>& points() const { return points_; }
  const std::vector<std::vector<Label>>& patterns() const { return patterns_; }
  int64_t num_hypotheses() const {
    return static_cast<int64_t>(patterns_.size());
  }
  // Column of `x`, or nullopt when x is outside the table's domain.
  std::optional<int64_t> ColumnOf(const Point& x) const;

 private:
  PatternTable() = default;

  std::vector<Point> points_;
  std::vector<std::vector<Label>> patterns_;
  std::map<Point, int64_t> columns_;
};

// c_t(x) = +1 iff x >= t.
struct ThresholdHypothesis {
  int64_t threshold = 1;

  friend bool operator==(const ThresholdHypothesis&,
                         const ThresholdHypothesis&) = default;
};

struct EnumeratedHypothesis {
  std::shared_ptr<const PatternTable> table;
  int64_t index = 0;

  friend bool operator==(const EnumeratedHypothesis& a,
                         const EnumeratedHypothesis& b) {
    return a.table == b.table && a.index == b.index;
  }
};

// weights = (a_1, ..., a_d, w); labels x as +1 iff <a, x> >= w, i.e. iff
// <(x, -1), weights> >= 0. The zero vector labels everything +1.
struct HalfspaceHypothesis {
  std::vector<double> weights;

  int dimension() const { return static_cast<int>(weights.size()) - 1; }
  bool IsDegenerate() const;

  friend bool operator==(const HalfspaceHypothesis&,
                         const HalfspaceHypothesis&) = default;
};

using Hypothesis =
    std::variant<ThresholdHypothesis, EnumeratedHypothesis, HalfspaceHypothesis>;

// Absolute slack on <(x, -1), weights>, scaled by |(x, -1)|. It absorbs
// rounding for hypotheses constructed to lie on a query's hyperplane.
inline constexpr double kHalfspaceTolerance = 1e-12;

// Fails with kInvalidArgument on a dimension mismatch or a point outside an
// enumerated class's domain.
absl::StatusOr<Label> Evaluate(const Hypothesis& h, const Point& x);

// Fraction of `sample` that `h` mislabels.
absl::StatusOr<double> EmpiricalError(const Hypothesis& h,
                                      const LabeledSample& sample);

}  // namespace private_prediction

#endif  // PRIVATE_PREDICTION_CONCEPTS_HYPOTHESIS_H_
