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

#include "private_prediction/geometry/linear_program.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include <gmpxx.h>

namespace private_prediction {
namespace {

template <typename T>
struct Arith;

template <>
struct Arith<double> {
  static constexpr double kPivot = 1e-11;
  static bool Positive(double v) { return v > kPivot; }
  static bool Negative(double v) { return v < -kPivot; }
  static bool IsZero(double v) { return v == 0.0; }
  static bool Less(double a, double b) { return a < b - 1e-12; }
  static bool Equal(double a, double b) { return std::abs(a - b) <= 1e-12; }
};

template <>
struct Arith<mpq_class> {
  static bool Positive(const mpq_class& v) { return sgn(v) > 0; }
  static bool Negative(const mpq_class& v) { return sgn(v) < 0; }
  static bool IsZero(const mpq_class& v) { return sgn(v) == 0; }
  static bool Less(const mpq_class& a, const mpq_class& b) { return a < b; }
  static bool Equal(const mpq_class& a, const mpq_class& b) { return a == b; }
};

template <typename T>
struct PhaseOneResult {
  T infeasibility;
  bool hit_limit = false;
};

// Dense Phase-I simplex for {x >= 0, A x = b} with Bland's rule. `a` is
// row-major with `rows` rows and `cols` columns. Returns the minimum of the
// sum of artificial variables.
template <typename T>
PhaseOneResult<T> PhaseOne(int rows, int cols, std::vector<T> a,
                           std::vector<T> b, int64_t max_pivots) {
  using A = Arith<T>;
  const int width = cols + rows;
  std::vector<T> tab(static_cast<size_t>(rows) * width, T(0));
  std::vector<int> basis(static_cast<size_t>(rows));
  for (int i = 0; i < rows; ++i) {
    const bool flip = b[i] < T(0);
    for (int j = 0; j < cols; ++j) {
      T v = a[static_cast<size_t>(i) * cols + j];
      tab[static_cast<size_t>(i) * width + j] = flip ? T(-v) : v;
    }
    if (flip) b[i] = -b[i];
    tab[static_cast<size_t>(i) * width + cols + i] = T(1);
    basis[static_cast<size_t>(i)] = cols + i;
  }
  // Reduced costs of minimizing the artificial sum.
  std::vector<T> obj(static_cast<size_t>(width), T(0));
  T obj_rhs(0);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      obj[j] -= tab[static_cast<size_t>(i) * width + j];
    }
    obj_rhs -= b[i];
  }

  PhaseOneResult<T> result;
  for (int64_t pivots = 0;; ++pivots) {
    int entering = -1;
    for (int j = 0; j < width; ++j) {
      if (A::Negative(obj[j])) {
        entering = j;
        break;
      }
    }
    if (entering < 0) break;
    if (pivots >= max_pivots) {
      result.hit_limit = true;
      break;
    }
    int leaving = -1;
    T best_ratio(0);
    for (int i = 0; i < rows; ++i) {
      const T& coef = tab[static_cast<size_t>(i) * width + entering];
      if (!A::Positive(coef)) continue;
      T ratio = b[i] / coef;
      if (leaving < 0 || A::Less(ratio, best_ratio) ||
          (A::Equal(ratio, best_ratio) &&
           basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leaving)])) {
        leaving = i;
        best_ratio = ratio;
      }
    }
    if (leaving < 0) {
      // Phase I is bounded below by zero; this only happens numerically.
      result.hit_limit = true;
      break;
    }
    T* pivot_row = &tab[static_cast<size_t>(leaving) * width];
    const T pivot = pivot_row[entering];
    for (int j = 0; j < width; ++j) pivot_row[j] /= pivot;
    b[leaving] /= pivot;
    for (int i = 0; i < rows; ++i) {
      if (i == leaving) continue;
      T* row = &tab[static_cast<size_t>(i) * width];
      const T factor = row[entering];
      if (A::IsZero(factor)) continue;
      for (int j = 0; j < width; ++j) row[j] -= factor * pivot_row[j];
      b[i] -= factor * b[leaving];
    }
    const T factor = obj[entering];
    for (int j = 0; j < width; ++j) obj[j] -= factor * pivot_row[j];
    obj_rhs -= factor * b[leaving];
    basis[static_cast<size_t>(leaving)] = entering;
  }
  result.infeasibility = -obj_rhs;
  return result;
}

// System {lambda >= 0, P lambda = z (, sum lambda = 1)} in row-major form.
struct System {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;
  std::vector<double> b;
};

System BuildSystem(const std::vector<Eigen::VectorXd>& points,
                   const Eigen::VectorXd& z, bool convex, double scale) {
  System s;
  const int dim = static_cast<int>(z.size());
  s.cols = static_cast<int>(points.size());
  s.rows = dim + (convex ? 1 : 0);
  s.a.assign(static_cast<size_t>(s.rows) * s.cols, 0.0);
  s.b.assign(static_cast<size_t>(s.rows), 0.0);
  for (int j = 0; j < s.cols; ++j) {
    const Eigen::VectorXd& p = points[static_cast<size_t>(j)];
    // Cone membership is invariant to positive rescaling of generators.
    const double col_scale =
        convex ? scale : (p.norm() > 0.0 ? 1.0 / p.norm() : 1.0);
    for (int i = 0; i < dim; ++i) {
      s.a[static_cast<size_t>(i) * s.cols + j] = p[i] * col_scale;
    }
    if (convex) s.a[static_cast<size_t>(dim) * s.cols + j] = 1.0;
  }
  for (int i = 0; i < dim; ++i) s.b[static_cast<size_t>(i)] = z[i] * scale;
  if (convex) s.b[static_cast<size_t>(dim)] = 1.0;
  return s;
}

Membership SolveExact(const System& s, int64_t max_pivots) {
  std::vector<mpq_class> a(s.a.begin(), s.a.end());
  std::vector<mpq_class> b(s.b.begin(), s.b.end());
  const auto result =
      PhaseOne<mpq_class>(s.rows, s.cols, std::move(a), std::move(b),
                          max_pivots * 10);
  if (result.hit_limit) return Membership::kIndeterminate;
  return sgn(result.infeasibility) == 0 ? Membership::kMember
                                        : Membership::kNonMember;
}

Membership Solve(const System& s, const LpOptions& options) {
  if (options.exact_only) return SolveExact(s, options.max_pivots);
  const auto result =
      PhaseOne<double>(s.rows, s.cols, s.a, s.b, options.max_pivots);
  Membership answer = Membership::kIndeterminate;
  if (!result.hit_limit) {
    if (result.infeasibility <= options.feasible_tolerance) {
      answer = Membership::kMember;
    } else if (result.infeasibility >= options.infeasible_threshold) {
      answer = Membership::kNonMember;
    }
  }
  if (answer == Membership::kIndeterminate && options.exact_fallback) {
    return SolveExact(s, options.max_pivots);
  }
  return answer;
}

bool DimensionsAgree(const std::vector<Eigen::VectorXd>& points,
                     const Eigen::VectorXd& z) {
  return std::all_of(points.begin(), points.end(), [&](const auto& p) {
    return p.size() == z.size();
  });
}

}  // namespace

Membership ConeMembership(const std::vector<Eigen::VectorXd>& points,
                          const Eigen::VectorXd& z, const LpOptions& options) {
  const double norm = z.norm();
  if (norm == 0.0) return Membership::kMember;
  if (points.empty() || !DimensionsAgree(points, z)) {
    return Membership::kNonMember;
  }
  return Solve(BuildSystem(points, z, /*convex=*/false, 1.0 / norm), options);
}

Membership ConvexHullMembership(const std::vector<Eigen::VectorXd>& points,
                                const Eigen::VectorXd& z,
                                const LpOptions& options) {
  if (points.empty() || !DimensionsAgree(points, z)) {
    return Membership::kNonMember;
  }
  double largest = z.lpNorm<Eigen::Infinity>();
  for (const auto& p : points) {
    largest = std::max(largest, p.lpNorm<Eigen::Infinity>());
  }
  const double scale = largest > 0.0 ? 1.0 / largest : 1.0;
  return Solve(BuildSystem(points, z, /*convex=*/true, scale), options);
}

HullMembershipResult HullMembership(const std::vector<Eigen::VectorXd>& points,
                                    const Eigen::VectorXd& z,
                                    const LpOptions& options) {
  const Membership m = ConvexHullMembership(points, z, options);
  return {m == Membership::kMember, m == Membership::kIndeterminate};
}

}  // namespace private_prediction
