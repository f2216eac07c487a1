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

#include "private_prediction/geometry/depth.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "Eigen/LU"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "private_prediction/core/noise_source.h"

namespace private_prediction {
namespace {

constexpr uint64_t kSphereSeed = 0x5eed5eedULL;

bool LexLess(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                      b.data() + b.size());
}

// Sorts lexicographically and drops vectors within `tol` (max-norm) of an
// earlier survivor.
std::vector<Eigen::VectorXd> SortDedup(std::vector<Eigen::VectorXd> points,
                                       double tol) {
  std::sort(points.begin(), points.end(), LexLess);
  std::vector<Eigen::VectorXd> kept;
  kept.reserve(points.size());
  for (auto& p : points) {
    bool duplicate = false;
    for (auto it = kept.rbegin(); it != kept.rend(); ++it) {
      if ((*it)[0] < p[0] - tol) break;
      if ((*it - p).lpNorm<Eigen::Infinity>() <= tol) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) kept.push_back(std::move(p));
  }
  return kept;
}

// A vector orthogonal to the r - 1 rows of `m` (r columns), by cofactor
// expansion. Zero when the rows are dependent.
Eigen::VectorXd GeneralizedCross(const Eigen::MatrixXd& m) {
  const int r = static_cast<int>(m.cols());
  Eigen::VectorXd u(r);
  Eigen::MatrixXd minor(r - 1, r - 1);
  for (int k = 0; k < r; ++k) {
    for (int c = 0, col = 0; c < r; ++c) {
      if (c == k) continue;
      minor.col(col++) = m.col(c);
    }
    u[k] = ((k % 2 == 0) ? 1.0 : -1.0) * minor.determinant();
  }
  return u;
}

double Binomial(int64_t n, int64_t k) {
  if (k < 0 || k > n) return 0.0;
  double out = 1.0;
  for (int64_t i = 1; i <= k; ++i) {
    out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return out;
}

}  // namespace

absl::StatusOr<DepthProfile> DepthProfile::Create(
    std::vector<Constraint> constraints) {
  if (constraints.empty()) {
    return absl::InvalidArgumentError(
        "Cannot infer a dimension from zero constraints");
  }
  DepthProfile profile(static_cast<int>(constraints.front().normal.size()));
  for (auto& c : constraints) {
    if (auto status = profile.Add(std::move(c)); !status.ok()) return status;
  }
  return profile;
}

absl::Status DepthProfile::Add(Constraint constraint) {
  if (constraint.normal.size() != ambient_dimension_) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Constraint has dimension ", constraint.normal.size(), ", expected ",
        ambient_dimension_));
  }
  if (!constraint.normal.allFinite()) {
    return absl::InvalidArgumentError("Constraint normal must be finite");
  }
  constraints_.push_back(std::move(constraint));
  cache_.clear();
  return absl::OkStatus();
}

int64_t DepthProfile::Depth(const Eigen::VectorXd& z) const {
  std::vector<double> key(z.data(), z.data() + z.size());
  const auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  int64_t count = 0;
  for (const Constraint& c : constraints_) {
    if (c.normal.dot(z) >= -kDepthTolerance) ++count;
  }
  cache_.emplace(std::move(key), count);
  return count;
}

absl::StatusOr<CdepthResult> CdepthWithDepths(
    int64_t depth_at_z, const Eigen::VectorXd& z,
    const std::vector<Eigen::VectorXd>& candidates,
    const std::vector<int64_t>& candidate_depths,
    const CdepthOptions& options) {
  if (candidates.empty()) {
    return absl::InvalidArgumentError("cdepth needs a nonempty candidate set");
  }
  if (candidates.size() != candidate_depths.size()) {
    return absl::InvalidArgumentError("One depth per candidate is required");
  }
  std::vector<int64_t> levels;
  for (int64_t d : candidate_depths) {
    if (d > depth_at_z) levels.push_back(d);
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  CdepthResult result;
  result.value = depth_at_z;
  // Membership only weakens as the level rises: fewer generators.
  int64_t lo = -1;
  auto hi = static_cast<int64_t>(levels.size());
  std::vector<Eigen::VectorXd> generators;
  while (hi - lo > 1) {
    const int64_t mid = lo + (hi - lo) / 2;
    const int64_t level = levels[static_cast<size_t>(mid)];
    generators.clear();
    for (size_t i = 0; i < candidates.size(); ++i) {
      if (candidate_depths[i] >= level) generators.push_back(candidates[i]);
    }
    const Membership m = ConeMembership(generators, z, options.lp);
    if (m == Membership::kIndeterminate) ++result.indeterminate;
    if (m == Membership::kMember) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (lo >= 0) result.value = levels[static_cast<size_t>(lo)];
  return result;
}

absl::StatusOr<CdepthResult> Cdepth(
    const DepthProfile& profile, const Eigen::VectorXd& z,
    const std::vector<Eigen::VectorXd>& candidates,
    const CdepthOptions& options) {
  if (z.size() != profile.ambient_dimension()) {
    return absl::InvalidArgumentError("Point dimension does not match profile");
  }
  std::vector<int64_t> depths;
  depths.reserve(candidates.size());
  for (const auto& c : candidates) {
    if (c.size() != z.size()) {
      return absl::InvalidArgumentError(
          "Candidate dimension does not match profile");
    }
    depths.push_back(profile.Depth(c));
  }
  return CdepthWithDepths(profile.Depth(z), z, candidates, depths, options);
}

std::vector<Eigen::VectorXd> SphereSample(int r, int64_t count) {
  std::vector<Eigen::VectorXd> out;
  if (r <= 0 || count <= 0) return out;
  if (r == 1) {
    out.push_back(Eigen::VectorXd::Constant(1, 1.0));
    out.push_back(Eigen::VectorXd::Constant(1, -1.0));
    return out;
  }
  out.reserve(static_cast<size_t>(count));
  const double n = static_cast<double>(count);
  if (r == 2) {
    for (int64_t i = 0; i < count; ++i) {
      const double angle =
          2.0 * std::numbers::pi * (static_cast<double>(i) + 0.5) / n;
      Eigen::VectorXd v(2);
      v << std::cos(angle), std::sin(angle);
      out.push_back(std::move(v));
    }
    return out;
  }
  if (r == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int64_t i = 0; i < count; ++i) {
      const double y = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / n;
      const double radius = std::sqrt(std::max(0.0, 1.0 - y * y));
      const double theta = golden * static_cast<double>(i);
      Eigen::VectorXd v(3);
      v << std::cos(theta) * radius, y, std::sin(theta) * radius;
      out.push_back(std::move(v));
    }
    return out;
  }
  NoiseSource noise(kSphereSeed);
  while (static_cast<int64_t>(out.size()) < count) {
    Eigen::VectorXd v(r);
    for (int i = 0; i < r; ++i) v[i] = noise.StandardNormal();
    const double norm = v.norm();
    if (norm > 1e-12) out.push_back(v / norm);
  }
  return out;
}

absl::StatusOr<std::vector<Eigen::VectorXd>> ArrangementCandidates(
    const DepthProfile& profile, const FeasibleSubspace& subspace,
    const CandidateOptions& options) {
  const int r = subspace.dimension();
  if (r == 0) {
    return absl::InvalidArgumentError(
        "A 0-dimensional subspace has no unit vectors");
  }
  if (subspace.ambient_dimension() != profile.ambient_dimension()) {
    return absl::InvalidArgumentError("Subspace and profile dimensions differ");
  }
  std::vector<Eigen::VectorXd> raw;
  if (r == 1) {
    raw = SphereSample(1, 2);
  } else {
    std::vector<Eigen::VectorXd> projected;
    for (const Constraint& c : profile.constraints()) {
      Eigen::VectorXd p = subspace.Coordinates(c.normal);
      const double norm = p.norm();
      // Constant-sign constraints have no boundary inside the subspace.
      if (norm <= FeasibleSubspace::kRedundancyTolerance * c.normal.norm()) {
        continue;
      }
      projected.push_back(p / norm);
    }
    projected = SortDedup(std::move(projected), options.dedup_tolerance);
    const double subsets =
        Binomial(static_cast<int64_t>(projected.size()), r - 1);
    const double total = 2.0 * subsets + static_cast<double>(
                                             options.sphere_samples);
    if (total > static_cast<double>(options.max_candidates)) {
      return absl::ResourceExhaustedError(absl::StrCat(
          "Candidate set would hold ", total, " points, above the cap of ",
          options.max_candidates, "; use fewer constraints per block or a "
          "smaller dimension"));
    }
    const int n = static_cast<int>(projected.size());
    const int s = r - 1;
    if (n >= s) {
      std::vector<int> idx(static_cast<size_t>(s));
      for (int i = 0; i < s; ++i) idx[static_cast<size_t>(i)] = i;
      Eigen::MatrixXd rows(s, r);
      while (true) {
        for (int i = 0; i < s; ++i) {
          rows.row(i) = projected[static_cast<size_t>(idx[static_cast<size_t>(i)])]
                            .transpose();
        }
        Eigen::VectorXd u = GeneralizedCross(rows);
        const double norm = u.norm();
        if (norm > 1e-12) {
          u /= norm;
          raw.push_back(u);
          raw.push_back(-u);
        }
        int i = s - 1;
        while (i >= 0 && idx[static_cast<size_t>(i)] == n - s + i) --i;
        if (i < 0) break;
        ++idx[static_cast<size_t>(i)];
        for (int j = i + 1; j < s; ++j) {
          idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
        }
      }
    }
    for (auto& v : SphereSample(r, options.sphere_samples)) {
      raw.push_back(std::move(v));
    }
  }
  std::vector<Eigen::VectorXd> ambient;
  ambient.reserve(raw.size());
  for (const auto& u : raw) {
    Eigen::VectorXd v = subspace.Embed(u);
    v.normalize();
    ambient.push_back(std::move(v));
  }
  return SortDedup(std::move(ambient), options.dedup_tolerance);
}

absl::StatusOr<ArgmaxResult> ArgmaxCdepth(const DepthProfile& profile,
                                          const FeasibleSubspace& subspace,
                                          const CandidateOptions& options) {
  ArgmaxResult result;
  if (subspace.dimension() == 0) {
    result.point = Eigen::VectorXd::Zero(subspace.ambient_dimension());
    result.degenerate = true;
    result.depth = profile.Depth(result.point);
    result.cdepth = result.depth;
    return result;
  }
  auto candidates = ArrangementCandidates(profile, subspace, options);
  if (!candidates.ok()) return candidates.status();
  result.num_candidates = static_cast<int64_t>(candidates->size());

  std::vector<int64_t> depths;
  depths.reserve(candidates->size());
  int64_t best = -1;
  for (const auto& c : *candidates) {
    depths.push_back(profile.Depth(c));
    best = std::max(best, depths.back());
  }
  // Sums of points of one cell stay in that cell; a candidate from another
  // top cell would pull the sum out and is skipped.
  Eigen::VectorXd sum;
  for (size_t i = 0; i < candidates->size(); ++i) {
    if (depths[i] != best) continue;
    if (sum.size() == 0) {
      sum = (*candidates)[i];
      continue;
    }
    const Eigen::VectorXd trial = sum + (*candidates)[i];
    const double norm = trial.norm();
    if (norm > 1e-9 && profile.Depth(trial / norm) >= best) sum = trial;
  }
  result.point = sum / sum.norm();
  result.depth = profile.Depth(result.point);
  // The point lies in the cone of depth->=best candidates.
  result.cdepth = std::max(best, result.depth);
  return result;
}

}  // namespace private_prediction
