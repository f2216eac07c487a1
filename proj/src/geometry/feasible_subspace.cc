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

#include "private_prediction/geometry/feasible_subspace.h"

#include <cmath>

#include "Eigen/QR"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace private_prediction {

Constraint ToConstraint(const Point& x, Label label) {
  Eigen::VectorXd normal = QueryHyperplane(x);
  if (label == Label::kNegative) normal = -normal;
  return {std::move(normal)};
}

Eigen::VectorXd QueryHyperplane(const Point& x) {
  const int d = x.dimension();
  Eigen::VectorXd normal(d + 1);
  for (int i = 0; i < d; ++i) normal[i] = x[i];
  normal[d] = -1.0;
  return normal;
}

FeasibleSubspace FeasibleSubspace::Full(int ambient_dimension) {
  return FeasibleSubspace(
      Eigen::MatrixXd::Identity(ambient_dimension, ambient_dimension));
}

absl::StatusOr<FeasibleSubspace::IntersectResult> FeasibleSubspace::Intersect(
    const Eigen::VectorXd& normal) const {
  if (normal.size() != ambient_dimension()) {
    return absl::InvalidArgumentError(
        absl::StrCat("Normal has dimension ", normal.size(), ", expected ",
                     ambient_dimension()));
  }
  if (!normal.allFinite()) {
    return absl::InvalidArgumentError("Normal must be finite");
  }
  const double norm = normal.norm();
  if (norm == 0.0) {
    return absl::InvalidArgumentError("Normal must be nonzero");
  }
  const Eigen::VectorXd p = Coordinates(normal);
  if (dimension() == 0 || p.norm() <= kRedundancyTolerance * norm) {
    return IntersectResult{*this, true};
  }
  // Columns 2..r of Q from a QR of p span p's orthogonal complement.
  const int r = dimension();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(p);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(r, r);
  Eigen::MatrixXd next = basis_ * q.rightCols(r - 1);
  return IntersectResult{FeasibleSubspace(std::move(next)), false};
}

}  // namespace private_prediction
