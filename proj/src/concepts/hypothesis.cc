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

#include "private_prediction/concepts/hypothesis.h"

#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "private_prediction/base/status_macros.h"

namespace private_prediction {

absl::StatusOr<std::shared_ptr<const PatternTable>> PatternTable::Create(
    std::vector<Point> points, std::vector<std::vector<Label>> patterns) {
  if (points.empty()) {
    return absl::InvalidArgumentError("Pattern table needs at least one point");
  }
  if (patterns.empty()) {
    return absl::InvalidArgumentError(
        "Pattern table needs at least one hypothesis");
  }
  auto table = std::shared_ptr<PatternTable>(new PatternTable());
  for (size_t i = 0; i < points.size(); ++i) {
    if (points[i].dimension() != points.front().dimension()) {
      return absl::InvalidArgumentError("Table points must share a dimension");
    }
    if (!table->columns_.emplace(points[i], static_cast<int64_t>(i)).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("Duplicate table point ", ToString(points[i])));
    }
  }
  for (const auto& row : patterns) {
    if (row.size() != points.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "Pattern row has ", row.size(), " labels for ", points.size(),
          " points"));
    }
  }
  table->points_ = std::move(points);
  table->patterns_ = std::move(patterns);
  return std::shared_ptr<const PatternTable>(std::move(table));
}

std::optional<int64_t> PatternTable::ColumnOf(const Point& x) const {
  const auto it = columns_.find(x);
  if (it == columns_.end()) return std::nullopt;
  return it->second;
}

bool HalfspaceHypothesis::IsDegenerate() const {
  for (double w : weights) {
    if (w != 0.0) return false;
  }
  return true;
}

namespace {

struct EvaluateVisitor {
  const Point& x;

  absl::StatusOr<Label> operator()(const ThresholdHypothesis& h) const {
    if (x.dimension() != 1) {
      return absl::InvalidArgumentError(
          "Thresholds are defined on one-dimensional points");
    }
    return x[0] >= static_cast<double>(h.threshold) ? Label::kPositive
                                                    : Label::kNegative;
  }

  absl::StatusOr<Label> operator()(const EnumeratedHypothesis& h) const {
    if (h.table == nullptr) {
      return absl::InvalidArgumentError("Enumerated hypothesis has no table");
    }
    const auto column = h.table->ColumnOf(x);
    if (!column.has_value()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "Point ", ToString(x), " is outside the enumerated domain"));
    }
    return h.table->patterns()[static_cast<size_t>(h.index)]
                              [static_cast<size_t>(*column)];
  }

  absl::StatusOr<Label> operator()(const HalfspaceHypothesis& h) const {
    if (h.dimension() != x.dimension()) {
      return absl::InvalidArgumentError(
          absl::StrCat("Halfspace of dimension ", h.dimension(),
                       " evaluated at a point of dimension ", x.dimension()));
    }
    const int d = x.dimension();
    double value = -h.weights[static_cast<size_t>(d)];
    double norm_sq = 1.0;
    for (int i = 0; i < d; ++i) {
      value += h.weights[static_cast<size_t>(i)] * x[i];
      norm_sq += x[i] * x[i];
    }
    return value >= -kHalfspaceTolerance * std::sqrt(norm_sq)
               ? Label::kPositive
               : Label::kNegative;
  }
};

}  // namespace

absl::StatusOr<Label> Evaluate(const Hypothesis& h, const Point& x) {
  return std::visit(EvaluateVisitor{x}, h);
}

absl::StatusOr<double> EmpiricalError(const Hypothesis& h,
                                      const LabeledSample& sample) {
  if (sample.empty()) {
    return absl::InvalidArgumentError("Empirical error of an empty sample");
  }
  int64_t mistakes = 0;
  for (const LabeledExample& record : sample) {
    PP_ASSIGN_OR_RETURN(const Label label, Evaluate(h, record.x));
    if (label != record.y) ++mistakes;
  }
  return static_cast<double>(mistakes) / static_cast<double>(sample.size());
}

}  // namespace private_prediction
