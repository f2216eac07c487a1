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

#include <vector>

#include "gtest/gtest.h"
#include "private_prediction/core/noise_source.h"

namespace private_prediction {
namespace {

Eigen::VectorXd V(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

// Twice the signed area of (a, b, c); exact for small integers.
double Orient(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
              const Eigen::VectorXd& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

bool OnSegment(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
               const Eigen::VectorXd& z) {
  return Orient(a, b, z) == 0.0 &&
         std::min(a[0], b[0]) <= z[0] && z[0] <= std::max(a[0], b[0]) &&
         std::min(a[1], b[1]) <= z[1] && z[1] <= std::max(a[1], b[1]);
}

// Planar hull membership by enumerating triangles, segments and points.
bool BruteHull2d(const std::vector<Eigen::VectorXd>& p,
                 const Eigen::VectorXd& z) {
  const size_t n = p.size();
  for (size_t i = 0; i < n; ++i) {
    if (p[i] == z) return true;
    for (size_t j = i + 1; j < n; ++j) {
      if (OnSegment(p[i], p[j], z)) return true;
      for (size_t k = j + 1; k < n; ++k) {
        const double o1 = Orient(p[i], p[j], z);
        const double o2 = Orient(p[j], p[k], z);
        const double o3 = Orient(p[k], p[i], z);
        if ((o1 >= 0 && o2 >= 0 && o3 >= 0) || (o1 <= 0 && o2 <= 0 && o3 <= 0)) {
          if (Orient(p[i], p[j], p[k]) != 0.0) return true;
        }
      }
    }
  }
  return false;
}

Eigen::VectorXd RandomIntegerVector(int dim, int range, NoiseSource& noise) {
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) {
    v[i] = static_cast<double>(noise.UniformIndex(2 * range + 1)) - range;
  }
  return v;
}

TEST(HullMembershipTest, SquareExamples) {
  const std::vector<Eigen::VectorXd> square = {V({0, 0}), V({1, 0}),
                                               V({0, 1}), V({1, 1})};
  const HullMembershipResult center = HullMembership(square, V({0.5, 0.5}));
  EXPECT_TRUE(center.member);
  EXPECT_FALSE(center.indeterminate);
  EXPECT_FALSE(HullMembership(square, V({2, 2})).member);
  EXPECT_TRUE(HullMembership(square, V({1, 0})).member);
  EXPECT_TRUE(HullMembership(square, V({0.5, 0})).member);
  EXPECT_FALSE(HullMembership(square, V({0.5, -1e-6})).member);
}

TEST(HullMembershipTest, SinglePointAndSegment) {
  EXPECT_TRUE(HullMembership({V({3, 4})}, V({3, 4})).member);
  EXPECT_FALSE(HullMembership({V({3, 4})}, V({3, 5})).member);
  const std::vector<Eigen::VectorXd> seg = {V({0, 0, 0}), V({2, 2, 2})};
  EXPECT_TRUE(HullMembership(seg, V({1, 1, 1})).member);
  EXPECT_FALSE(HullMembership(seg, V({1, 1, 1.01})).member);
}

TEST(ConeMembershipTest, Examples) {
  const std::vector<Eigen::VectorXd> quadrant = {V({1, 0}), V({0, 1})};
  EXPECT_EQ(ConeMembership(quadrant, V({3, 7})), Membership::kMember);
  EXPECT_EQ(ConeMembership(quadrant, V({0, 0})), Membership::kMember);
  EXPECT_EQ(ConeMembership(quadrant, V({-1, 2})), Membership::kNonMember);
  // Opposite rays span a line.
  const std::vector<Eigen::VectorXd> line = {V({1, 1}), V({-2, -2})};
  EXPECT_EQ(ConeMembership(line, V({-5, -5})), Membership::kMember);
  EXPECT_EQ(ConeMembership(line, V({-5, -4})), Membership::kNonMember);
  EXPECT_EQ(ConeMembership({}, V({1, 0})), Membership::kNonMember);
}

TEST(HullMembershipTest, PlanarAgreesWithTriangleEnumeration) {
  NoiseSource noise(101);
  int members = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Eigen::VectorXd> points;
    const int n = 1 + static_cast<int>(noise.UniformIndex(8));
    for (int i = 0; i < n; ++i) points.push_back(RandomIntegerVector(2, 4, noise));
    const Eigen::VectorXd z = RandomIntegerVector(2, 4, noise);
    const bool expected = BruteHull2d(points, z);
    const HullMembershipResult got = HullMembership(points, z);
    members += expected;
    ASSERT_FALSE(got.indeterminate) << "trial " << trial;
    ASSERT_EQ(got.member, expected) << "trial " << trial;
  }
  EXPECT_GT(members, 20);
}

TEST(HullMembershipTest, FloatingPointAgreesWithExactRationals) {
  NoiseSource noise(102);
  LpOptions exact;
  exact.exact_only = true;
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 1 + static_cast<int>(noise.UniformIndex(3));
    // Combinations need a full-dimensional hull: rounding pushes them off a
    // flat one, where exact arithmetic rightly says no.
    const int min_n = trial % 2 == 0 ? dim + 1 : 1;
    const int n = min_n + static_cast<int>(noise.UniformIndex(9 - min_n));
    std::vector<Eigen::VectorXd> points;
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd p(dim);
      for (int j = 0; j < dim; ++j) p[j] = noise.StandardNormal();
      points.push_back(p);
    }
    // Half the queries are convex combinations, half arbitrary.
    Eigen::VectorXd z = Eigen::VectorXd::Zero(dim);
    if (trial % 2 == 0) {
      double total = 0.0;
      for (const auto& p : points) {
        const double w = noise.Uniform();
        z += w * p;
        total += w;
      }
      z /= total;
    } else {
      for (int j = 0; j < dim; ++j) z[j] = 1.5 * noise.StandardNormal();
    }
    const Membership fp = ConvexHullMembership(points, z);
    const Membership q = ConvexHullMembership(points, z, exact);
    ASSERT_NE(q, Membership::kIndeterminate);
    EXPECT_EQ(fp, q) << "trial " << trial << " dim " << dim << " n " << n;
  }
}

}  // namespace
}  // namespace private_prediction
