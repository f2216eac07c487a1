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

#ifndef PRIVATE_PREDICTION_GEOMETRY_FEASIBLE_SUBSPACE_H_
#define PRIVATE_PREDICTION_GEOMETRY_FEASIBLE_SUBSPACE_H_

#include <utility>

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "private_prediction/core/types.h"

namespace private_prediction {

// Homogeneous halfspace constraint: satisfied at z iff <normal, z> >= 0.
struct Constraint {
  Eigen::VectorXd normal;
};

// Labeled point (x, y) as the constraint with normal y * (x_1, ..., x_d, -1).
Constraint ToConstraint(const Point& x, Label label);

// Normal of the hyperplane of hypotheses that place x exactly on their
// boundary: (x_1, ..., x_d, -1).
Eigen::VectorXd QueryHyperplane(const Point& x);

// Linear subspace of R^ambient held as an orthonormal basis (columns).
class FeasibleSubspace {
 public:
  // The whole space.
  static FeasibleSubspace Full(int ambient_dimension);

  int ambient_dimension() const { return static_cast<int>(basis_.rows()); }
  int dimension() const { return static_cast<int>(basis_.cols()); }
  const Eigen::MatrixXd& basis() const { return basis_; }

  // Projection below which a normal counts as orthogonal to the subspace.
  static constexpr double kRedundancyTolerance = 1e-9;

  struct IntersectResult;
  // Intersects with {z : <normal, z> = 0}. A normal whose projection onto
  // the subspace is at most kRedundancyTolerance * |normal| leaves the
  // subspace unchanged and is reported as redundant.
  absl::StatusOr<IntersectResult> Intersect(const Eigen::VectorXd& normal) const;

  // Coordinates of an ambient vector's projection, in the basis.
  Eigen::VectorXd Coordinates(const Eigen::VectorXd& v) const {
    return basis_.transpose() * v;
  }
  Eigen::VectorXd Embed(const Eigen::VectorXd& coords) const {
    return basis_ * coords;
  }

 private:
  explicit FeasibleSubspace(Eigen::MatrixXd basis) : basis_(std::move(basis)) {}

  Eigen::MatrixXd basis_;
};

struct FeasibleSubspace::IntersectResult {
  FeasibleSubspace subspace;
  bool redundant = false;
};

}  // namespace private_prediction

#endif  // PRIVATE_PREDICTION_GEOMETRY_FEASIBLE_SUBSPACE_H_
