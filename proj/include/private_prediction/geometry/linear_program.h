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

#ifndef PRIVATE_PREDICTION_GEOMETRY_LINEAR_PROGRAM_H_
#define PRIVATE_PREDICTION_GEOMETRY_LINEAR_PROGRAM_H_

#include <cstdint>
#include <vector>

#include "Eigen/Core"

namespace private_prediction {

enum class Membership { kMember, kNonMember, kIndeterminate };

struct LpOptions {
  // Re-solve in exact rational arithmetic when the floating-point answer
  // falls in the indeterminate band or hits the pivot limit.
  bool exact_fallback = true;
  // Skip floating point entirely.
  bool exact_only = false;
  // Phase-I optimum at or below this is feasible; at or above
  // `infeasible_threshold` it is infeasible; in between is indeterminate.
  double feasible_tolerance = 1e-9;
  double infeasible_threshold = 1e-7;
  int64_t max_pivots = 20000;
};

// Decides {lambda >= 0, sum_i lambda_i p_i = z}, i.e. whether z lies in the
// cone generated by `points`. The zero vector is always a member.
Membership ConeMembership(const std::vector<Eigen::VectorXd>& points,
                          const Eigen::VectorXd& z,
                          const LpOptions& options = {});

// Decides {lambda >= 0, sum lambda = 1, sum_i lambda_i p_i = z}.
Membership ConvexHullMembership(const std::vector<Eigen::VectorXd>& points,
                                const Eigen::VectorXd& z,
                                const LpOptions& options = {});

struct HullMembershipResult {
  bool member = false;
  // Set when neither arithmetic settled the question; `member` is then false.
  bool indeterminate = false;
};

// Convex-hull membership with indeterminate answers reported as
// non-membership. Points must share z's dimension.
HullMembershipResult HullMembership(const std::vector<Eigen::VectorXd>& points,
                                    const Eigen::VectorXd& z,
                                    const LpOptions& options = {});

}  // namespace private_prediction

#endif  // PRIVATE_PREDICTION_GEOMETRY_LINEAR_PROGRAM_H_
