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

#ifndef PRIVATE_PREDICTION_CONCEPTS_VERSION_SPACE_H_
#define PRIVATE_PREDICTION_CONCEPTS_VERSION_SPACE_H_

#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "private_prediction/concepts/concept_class.h"
#include "private_prediction/concepts/hypothesis.h"
#include "private_prediction/core/types.h"

namespace private_prediction {

// The hypotheses of a base class consistent with an ordered constraint list.
//
// Thresholds keep the surviving interval [lo, hi] of t; enumerated classes
// keep the surviving row indices; halfspaces keep only the constraints (their
// feasible region lives in the geometry module).
class VersionSpace {
 public:
  explicit VersionSpace(ConceptClass base);

  const ConceptClass& base() const { return base_; }
  const std::vector<LabeledExample>& constraints() const {
    return constraints_;
  }

  // Appends (x, label). Fails only on inputs the base class cannot evaluate
  // (wrong dimension, point outside an enumerated domain); an inconsistent
  // constraint is accepted and shows up in IsEmpty().
  absl::StatusOr<VersionSpace> Restrict(const Point& x, Label label) const;
  absl::Status RestrictInPlace(const Point& x, Label label);

  // Removes the newest constraint.
  absl::Status DropLast();

  // Halfspaces: kUnimplemented; use the geometry module.
  absl::StatusOr<bool> IsEmpty() const;

  // True iff h satisfies every constraint.
  absl::StatusOr<bool> Contains(const Hypothesis& h) const;

  // Surviving threshold interval; lo > hi means empty. Thresholds only.
  int64_t threshold_lower() const { return lo_; }
  int64_t threshold_upper() const { return hi_; }

  // Surviving rows in increasing order. Enumerated classes only.
  const std::vector<int64_t>& members() const { return members_; }

 private:
  void Rebuild();
  absl::Status Apply(const Point& x, Label label);

  ConceptClass base_;
  std::vector<LabeledExample> constraints_;
  int64_t lo_ = 1;
  int64_t hi_ = 0;
  std::vector<int64_t> members_;
};

// A hypothesis in V with minimum error on S. Ties go to the smallest
// threshold or the lowest row. Fails with kFailedPrecondition when V is empty
// and kUnimplemented for halfspaces.
absl::StatusOr<Hypothesis> Erm(const VersionSpace& v, const LabeledSample& s);

// Threshold ERM over a fixed sample, answering interval queries in O(|S|).
class ThresholdErmSolver {
 public:
  // Fails if `sample` has non-scalar points or is empty.
  static absl::StatusOr<ThresholdErmSolver> Create(const LabeledSample& sample);

  // Smallest t in [lo, hi] minimizing the error; requires lo <= hi.
  int64_t Solve(int64_t lo, int64_t hi) const;
  // Number of mistakes of c_t on the sample.
  int64_t Mistakes(int64_t t) const;

 private:
  struct Bucket {
    int64_t value;  // floor of the point
    int64_t positives;
    int64_t negatives;
  };
  std::vector<Bucket> buckets_;
};

// Number of distinct label tuples V induces on `queries`. Closed form for
// thresholds; explicit for enumerated classes; kUnimplemented for halfspaces.
absl::StatusOr<int64_t> PatternCount(const VersionSpace& v,
                                     std::span<const Point> queries);

// The distinct label tuples themselves. Desk scale only.
absl::StatusOr<std::set<std::vector<Label>>> Patterns(
    const VersionSpace& v, std::span<const Point> queries);

}  // namespace private_prediction

#endif  // PRIVATE_PREDICTION_CONCEPTS_VERSION_SPACE_H_
