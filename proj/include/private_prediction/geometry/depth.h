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

#ifndef PRIVATE_PREDICTION_GEOMETRY_DEPTH_H_
#define PRIVATE_PREDICTION_GEOMETRY_DEPTH_H_

#include <cstdint>
#include <map>
#include <vector>

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "private_prediction/geometry/feasible_subspace.h"
#include "private_prediction/geometry/linear_program.h"

namespace private_prediction {

// Slack on <a, z> when counting satisfied constraints.
inline constexpr double kDepthTolerance = 1e-12;

// A multiset of constraints with a memo of depth evaluations. Not thread
// safe; give each task its own profile.
class DepthProfile {
 public:
  explicit DepthProfile(int ambient_dimension)
      : ambient_dimension_(ambient_dimension) {}
  // Fails unless all normals share one finite dimension.
  static absl::StatusOr<DepthProfile> Create(std::vector<Constraint> constraints);

  absl::Status Add(Constraint constraint);

  int ambient_dimension() const { return ambient_dimension_; }
  int64_t size() const { return static_cast<int64_t>(constraints_.size()); }
  const std::vector<Constraint>& constraints() const { return constraints_; }

  // Number of constraints with <a, z> >= -kDepthTolerance. Requires
  // z.size() == ambient_dimension().
  int64_t Depth(const Eigen::VectorXd& z) const;

 private:
  int ambient_dimension_;
  std::vector<Constraint> constraints_;
  mutable std::map<std::vector<double>, int64_t> cache_;
};

struct CdepthOptions {
  LpOptions lp;
};

struct CdepthResult {
  int64_t value = 0;
  // Hull tests that stayed indeterminate and were read as non-membership.
  int64_t indeterminate = 0;
};

// Largest y such that z lies in the cone spanned by {z} and the candidates of
// depth >= y, found by binary search over the achieved depth levels.
//
// Hypotheses are rays, so the hull is taken conically; on the affine slice
// w = 1 this is the ordinary convex hull. The result is a lower bound on the
// exact value and is exact when the candidates include every vertex of the
// arrangement.
absl::StatusOr<CdepthResult> Cdepth(const DepthProfile& profile,
                                    const Eigen::VectorXd& z,
                                    const std::vector<Eigen::VectorXd>& candidates,
                                    const CdepthOptions& options = {});

// Same, with candidate depths supplied by the caller (one per candidate).
absl::StatusOr<CdepthResult> CdepthWithDepths(
    int64_t depth_at_z, const Eigen::VectorXd& z,
    const std::vector<Eigen::VectorXd>& candidates,
    const std::vector<int64_t>& candidate_depths,
    const CdepthOptions& options = {});

// Deterministic quasi-uniform unit vectors in R^r: two antipodes for r = 1,
// equally spaced angles for r = 2, a Fibonacci lattice for r = 3, normalized
// Gaussians from a fixed stream for r >= 4.
std::vector<Eigen::VectorXd> SphereSample(int r, int64_t count);

struct CandidateOptions {
  // Sphere points added on top of the arrangement vertices.
  int64_t sphere_samples = 64;
  // Largest candidate set we are willing to build.
  int64_t max_candidates = 50000;
  double dedup_tolerance = 1e-8;
};

// Unit vectors of the subspace where r - 1 projected constraint boundaries
// meet (both signs), plus a sphere sample; deduplicated and sorted
// lexicographically. Returned in ambient coordinates. Fails with
// kResourceExhausted beyond `max_candidates`, and with kInvalidArgument on a
// 0-dimensional subspace.
absl::StatusOr<std::vector<Eigen::VectorXd>> ArrangementCandidates(
    const DepthProfile& profile, const FeasibleSubspace& subspace,
    const CandidateOptions& options = {});

struct ArgmaxResult {
  // Unit vector in the subspace, or zero when the subspace is {0}.
  Eigen::VectorXd point;
  int64_t cdepth = 0;
  int64_t depth = 0;
  bool degenerate = false;
  int64_t num_candidates = 0;
};

// A point of maximal cdepth over the candidate set. Among maximizers it
// returns the normalized sum of a greedy run of max-depth candidates, which
// sits inside the top cell rather than on one of its edges.
absl::StatusOr<ArgmaxResult> ArgmaxCdepth(const DepthProfile& profile,
                                          const FeasibleSubspace& subspace,
                                          const CandidateOptions& options = {});

}  // namespace private_prediction

#endif  // PRIVATE_PREDICTION_GEOMETRY_DEPTH_H_
