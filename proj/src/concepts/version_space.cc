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

#include "private_prediction/concepts/version_space.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "private_prediction/base/status_macros.h"

namespace private_prediction {
namespace {

// c_t(x) = +1 iff floor(x) >= t for integer t. Saturates far outside int64.
int64_t FloorToGrid(double x) {
  constexpr double kLimit = 4.0e18;
  if (x >= kLimit) return static_cast<int64_t>(kLimit);
  if (x <= -kLimit) return -static_cast<int64_t>(kLimit);
  return static_cast<int64_t>(std::floor(x));
}

absl::Status CheckScalar(const Point& x) {
  if (x.dimension() != 1) {
    return absl::InvalidArgumentError(
        "Thresholds are defined on one-dimensional points");
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<int64_t>> Columns(const PatternTable& table,
                                             std::span<const Point> points) {
  std::vector<int64_t> columns;
  columns.reserve(points.size());
  for (const Point& p : points) {
    const auto column = table.ColumnOf(p);
    if (!column.has_value()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "Point ", ToString(p), " is outside the enumerated domain"));
    }
    columns.push_back(*column);
  }
  return columns;
}

}  // namespace

VersionSpace::VersionSpace(ConceptClass base) : base_(std::move(base)) {
  Rebuild();
}

void VersionSpace::Rebuild() {
  lo_ = 1;
  hi_ = 0;
  members_.clear();
  if (const auto* t = std::get_if<ThresholdClass>(&base_)) {
    hi_ = t->max_threshold;
  } else if (const auto* e = std::get_if<EnumeratedClass>(&base_)) {
    if (e->table != nullptr) {
      members_.resize(static_cast<size_t>(e->table->num_hypotheses()));
      for (size_t i = 0; i < members_.size(); ++i) {
        members_[i] = static_cast<int64_t>(i);
      }
    }
  }
}

absl::Status VersionSpace::Apply(const Point& x, Label label) {
  if (std::holds_alternative<ThresholdClass>(base_)) {
    PP_RETURN_IF_ERROR(CheckScalar(x));
    const int64_t v = FloorToGrid(x[0]);
    if (label == Label::kPositive) {
      hi_ = std::min(hi_, v);
    } else {
      lo_ = std::max(lo_, v + 1);
    }
    return absl::OkStatus();
  }
  if (const auto* e = std::get_if<EnumeratedClass>(&base_)) {
    const auto column = e->table->ColumnOf(x);
    if (!column.has_value()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "Point ", ToString(x), " is outside the enumerated domain"));
    }
    const auto& rows = e->table->patterns();
    std::erase_if(members_, [&](int64_t row) {
      return rows[static_cast<size_t>(row)][static_cast<size_t>(*column)] !=
             label;
    });
    return absl::OkStatus();
  }
  const auto& h = std::get<HalfspaceClass>(base_);
  if (x.dimension() != h.dimension) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Constraint point has dimension ", x.dimension(), ", expected ",
        h.dimension));
  }
  return absl::OkStatus();
}

absl::StatusOr<VersionSpace> VersionSpace::Restrict(const Point& x,
                                                    Label label) const {
  VersionSpace copy = *this;
  PP_RETURN_IF_ERROR(copy.RestrictInPlace(x, label));
  return copy;
}

absl::Status VersionSpace::RestrictInPlace(const Point& x, Label label) {
  PP_RETURN_IF_ERROR(Apply(x, label));
  constraints_.push_back({x, label});
  return absl::OkStatus();
}

absl::Status VersionSpace::DropLast() {
  if (constraints_.empty()) {
    return absl::FailedPreconditionError("No constraint to drop");
  }
  constraints_.pop_back();
  Rebuild();
  for (const LabeledExample& c : constraints_) {
    PP_RETURN_IF_ERROR(Apply(c.x, c.y));
  }
  return absl::OkStatus();
}

absl::StatusOr<bool> VersionSpace::IsEmpty() const {
  if (std::holds_alternative<ThresholdClass>(base_)) return lo_ > hi_;
  if (std::holds_alternative<EnumeratedClass>(base_)) return members_.empty();
  return absl::UnimplementedError(
      "Halfspace emptiness is decided by the feasible-subspace geometry");
}

absl::StatusOr<bool> VersionSpace::Contains(const Hypothesis& h) const {
  for (const LabeledExample& c : constraints_) {
    PP_ASSIGN_OR_RETURN(const Label label, Evaluate(h, c.x));
    if (label != c.y) return false;
  }
  if (const auto* t = std::get_if<ThresholdClass>(&base_)) {
    const auto* th = std::get_if<ThresholdHypothesis>(&h);
    return th != nullptr && th->threshold >= 1 &&
           th->threshold <= t->max_threshold;
  }
  if (const auto* e = std::get_if<EnumeratedClass>(&base_)) {
    const auto* eh = std::get_if<EnumeratedHypothesis>(&h);
    return eh != nullptr && eh->table == e->table;
  }
  return std::holds_alternative<HalfspaceHypothesis>(h);
}

absl::StatusOr<ThresholdErmSolver> ThresholdErmSolver::Create(
    const LabeledSample& sample) {
  if (sample.empty()) {
    return absl::InvalidArgumentError("ERM on an empty sample");
  }
  std::vector<std::pair<int64_t, Label>> values;
  values.reserve(sample.size());
  for (const LabeledExample& r : sample) {
    PP_RETURN_IF_ERROR(CheckScalar(r.x));
    values.emplace_back(FloorToGrid(r.x[0]), r.y);
  }
  std::sort(values.begin(), values.end());
  ThresholdErmSolver solver;
  for (const auto& [v, y] : values) {
    if (solver.buckets_.empty() || solver.buckets_.back().value != v) {
      solver.buckets_.push_back({v, 0, 0});
    }
    (y == Label::kPositive ? solver.buckets_.back().positives
                           : solver.buckets_.back().negatives)++;
  }
  return solver;
}

int64_t ThresholdErmSolver::Mistakes(int64_t t) const {
  int64_t mistakes = 0;
  for (const Bucket& b : buckets_) {
    mistakes += b.value < t ? b.positives : b.negatives;
  }
  return mistakes;
}

int64_t ThresholdErmSolver::Solve(int64_t lo, int64_t hi) const {
  int64_t best_t = lo;
  int64_t current = Mistakes(lo);
  int64_t best = current;
  // Raising t past a bucket value v flips that bucket's predictions to -1;
  // the error only changes at t = v + 1.
  for (const Bucket& b : buckets_) {
    if (b.value < lo) continue;
    if (b.value >= hi) break;
    current += b.positives - b.negatives;
    if (current < best) {
      best = current;
      best_t = b.value + 1;
    }
  }
  return best_t;
}

absl::StatusOr<Hypothesis> Erm(const VersionSpace& v, const LabeledSample& s) {
  if (std::holds_alternative<HalfspaceClass>(v.base())) {
    return absl::UnimplementedError(
        "Halfspace hypotheses are chosen by depth, not ERM");
  }
  PP_ASSIGN_OR_RETURN(const bool empty, v.IsEmpty());
  if (empty) {
    return absl::FailedPreconditionError("Version space is empty");
  }
  if (std::holds_alternative<ThresholdClass>(v.base())) {
    PP_ASSIGN_OR_RETURN(const ThresholdErmSolver solver,
                        ThresholdErmSolver::Create(s));
    return ThresholdHypothesis{
        solver.Solve(v.threshold_lower(), v.threshold_upper())};
  }
  const auto& table = std::get<EnumeratedClass>(v.base()).table;
  if (s.empty()) {
    return absl::InvalidArgumentError("ERM on an empty sample");
  }
  std::vector<Point> points;
  points.reserve(s.size());
  for (const LabeledExample& r : s) points.push_back(r.x);
  PP_ASSIGN_OR_RETURN(const auto columns, Columns(*table, points));
  int64_t best_row = -1;
  int64_t best = std::numeric_limits<int64_t>::max();
  for (int64_t row : v.members()) {
    const auto& labels = table->patterns()[static_cast<size_t>(row)];
    int64_t mistakes = 0;
    for (size_t i = 0; i < columns.size(); ++i) {
      if (labels[static_cast<size_t>(columns[i])] != s[i].y) ++mistakes;
    }
    if (mistakes < best) {
      best = mistakes;
      best_row = row;
    }
  }
  return EnumeratedHypothesis{table, best_row};
}

absl::StatusOr<int64_t> PatternCount(const VersionSpace& v,
                                     std::span<const Point> queries) {
  if (std::holds_alternative<ThresholdClass>(v.base())) {
    if (v.threshold_lower() > v.threshold_upper()) return 0;
    // Within [lo, hi], thresholds t and t' disagree somewhere iff a query
    // value lies in [min(t,t'), max(t,t') - 1].
    std::vector<int64_t> cuts;
    for (const Point& q : queries) {
      PP_RETURN_IF_ERROR(CheckScalar(q));
      const int64_t value = FloorToGrid(q[0]);
      if (value >= v.threshold_lower() && value < v.threshold_upper()) {
        cuts.push_back(value);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return 1 + static_cast<int64_t>(cuts.size());
  }
  PP_ASSIGN_OR_RETURN(const auto patterns, Patterns(v, queries));
  return static_cast<int64_t>(patterns.size());
}

absl::StatusOr<std::set<std::vector<Label>>> Patterns(
    const VersionSpace& v, std::span<const Point> queries) {
  std::set<std::vector<Label>> out;
  if (std::holds_alternative<ThresholdClass>(v.base())) {
    if (v.threshold_lower() > v.threshold_upper()) return out;
    // One representative threshold per cut suffices.
    std::vector<int64_t> thresholds = {v.threshold_lower()};
    for (const Point& q : queries) {
      PP_RETURN_IF_ERROR(CheckScalar(q));
      const int64_t value = FloorToGrid(q[0]);
      if (value >= v.threshold_lower() && value < v.threshold_upper()) {
        thresholds.push_back(value + 1);
      }
    }
    for (int64_t t : thresholds) {
      std::vector<Label> labels;
      labels.reserve(queries.size());
      for (const Point& q : queries) {
        labels.push_back(FloorToGrid(q[0]) >= t ? Label::kPositive
                                                : Label::kNegative);
      }
      out.insert(std::move(labels));
    }
    return out;
  }
  if (const auto* e = std::get_if<EnumeratedClass>(&v.base())) {
    PP_ASSIGN_OR_RETURN(const auto columns, Columns(*e->table, queries));
    for (int64_t row : v.members()) {
      const auto& labels = e->table->patterns()[static_cast<size_t>(row)];
      std::vector<Label> tuple;
      tuple.reserve(columns.size());
      for (int64_t c : columns) tuple.push_back(labels[static_cast<size_t>(c)]);
      out.insert(std::move(tuple));
    }
    return out;
  }
  return absl::UnimplementedError(
      "Pattern counting is not supported for halfspaces");
}

}  // namespace private_prediction
