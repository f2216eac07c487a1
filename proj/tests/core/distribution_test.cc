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

#include "private_prediction/core/distribution.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "tests/testing/status_matchers.h"

namespace private_prediction {
namespace {

using ::private_prediction::testing::StatusIs;
using ::testing::HasSubstr;

Labeler Threshold(double t) {
  return [t](const Point& x) {
    return x[0] >= t ? Label::kPositive : Label::kNegative;
  };
}

DataDistribution GridDistribution(int64_t size, double t) {
  return *DataDistribution::Create(GridSampler{size}, {}, Threshold(t));
}

LabeledSample MakeSample(const std::vector<double>& xs, double t) {
  std::vector<LabeledExample> records;
  for (double x : xs) records.push_back({Point{x}, Threshold(t)(Point{x})});
  return *LabeledSample::Create(std::move(records));
}

TEST(DrawSampleTest, PointMassRepeatsThePoint) {
  const Point x0{4.0};
  ASSERT_OK_AND_ASSIGN(
      const DataDistribution dist,
      DataDistribution::Create(std::nullopt, {{x0, 1.0}}, Threshold(2.0)));
  NoiseSource noise(1);
  ASSERT_OK_AND_ASSIGN(const LabeledSample s, DrawSample(dist, 3, noise));
  ASSERT_EQ(s.size(), 3u);
  for (const auto& r : s) {
    EXPECT_EQ(r.x, x0);
    EXPECT_EQ(r.y, Label::kPositive);
  }
}

TEST(DrawSampleTest, ZeroSizeIsAnError) {
  NoiseSource noise(1);
  EXPECT_THAT(DrawSample(GridDistribution(10, 5), 0, noise),
              StatusIs(absl::StatusCode::kInvalidArgument, ::testing::_));
}

TEST(DrawSampleTest, InvalidDescriptorsAreRejected) {
  EXPECT_THAT(DataDistribution::Create(GridSampler{0}, {}, Threshold(1)),
              StatusIs(absl::StatusCode::kInvalidArgument, ::testing::_));
  EXPECT_THAT(DataDistribution::Create(BoxSampler{{0.0}, {0.0}}, {},
                                       Threshold(1)),
              StatusIs(absl::StatusCode::kInvalidArgument, ::testing::_));
  EXPECT_THAT(DataDistribution::Create(std::nullopt, {}, Threshold(1)),
              StatusIs(absl::StatusCode::kInvalidArgument, ::testing::_));
}

TEST(DrawSampleTest, GridPositiveFractionMatchesBinomialInterval) {
  // On [1..100] with t = 50, Pr[x >= 50] = 51/100.
  NoiseSource noise(2024);
  ASSERT_OK_AND_ASSIGN(const LabeledSample s,
                       DrawSample(GridDistribution(100, 50), 10000, noise));
  int64_t positives = 0;
  for (const auto& r : s) {
    ASSERT_GE(r.x[0], 1.0);
    ASSERT_LE(r.x[0], 100.0);
    ASSERT_EQ(r.x[0], std::floor(r.x[0]));
    positives += r.y == Label::kPositive;
  }
  EXPECT_NEAR(positives / 10000.0, 0.51, 0.02);
}

TEST(DrawSampleTest, LabelsAlwaysMatchTarget) {
  ASSERT_OK_AND_ASSIGN(
      const DataDistribution dist,
      DataDistribution::Create(BoxSampler{{-1.0, -1.0}, {1.0, 1.0}},
                               {{Point{0.5, 0.5}, 0.3}},
                               [](const Point& x) {
                                 return LabelFromSign(x[0] + 2 * x[1]);
                               }));
  NoiseSource noise(5);
  ASSERT_OK_AND_ASSIGN(const LabeledSample s, DrawSample(dist, 2000, noise));
  int64_t at_mass = 0;
  for (const auto& r : s) {
    EXPECT_EQ(r.y, dist.Target(r.x));
    at_mass += r.x == Point({0.5, 0.5});
  }
  EXPECT_NEAR(at_mass / 2000.0, 0.3, 0.04);
}

TEST(DrawSampleTest, SameSeedSameSample) {
  const DataDistribution dist = GridDistribution(1000, 300);
  NoiseSource a(77);
  NoiseSource b(77);
  EXPECT_EQ(*DrawSample(dist, 50, a), *DrawSample(dist, 50, b));
}

TEST(PartitionTest, TwoBlocksOfTwo) {
  const LabeledSample s = MakeSample({1, 2, 3, 4}, 3);
  NoiseSource noise(3);
  ASSERT_OK_AND_ASSIGN(const auto blocks, Partition(s, 2, noise));
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_EQ(blocks[0].size(), 2u);
  EXPECT_EQ(blocks[1].size(), 2u);
}

TEST(PartitionTest, SingleBlockIsTheSample) {
  const LabeledSample s = MakeSample({5, 1, 9}, 3);
  NoiseSource noise(3);
  ASSERT_OK_AND_ASSIGN(const auto blocks, Partition(s, 1, noise));
  ASSERT_EQ(blocks.size(), 1u);
  std::vector<double> got;
  for (const auto& r : blocks[0]) got.push_back(r.x[0]);
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, (std::vector<double>{1, 5, 9}));
}

TEST(PartitionTest, IndivisibleSizeIsAnError) {
  NoiseSource noise(3);
  EXPECT_THAT(Partition(MakeSample({1, 2, 3, 4, 5}, 3), 2, noise),
              StatusIs(absl::StatusCode::kInvalidArgument,
                       HasSubstr("multiple")));
}

TEST(PartitionTest, UnionIsTheSampleForManySeeds) {
  std::vector<double> xs;
  for (int i = 0; i < 24; ++i) xs.push_back(i % 7);  // with repeats
  const LabeledSample s = MakeSample(xs, 3);
  for (uint64_t seed = 0; seed < 50; ++seed) {
    NoiseSource noise(seed);
    ASSERT_OK_AND_ASSIGN(const auto blocks, Partition(s, 4, noise));
    std::vector<double> merged;
    for (const auto& b : blocks) {
      ASSERT_EQ(b.size(), 6u);
      for (const auto& r : b) merged.push_back(r.x[0]);
    }
    std::vector<double> expected = xs;
    std::sort(merged.begin(), merged.end());
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(merged, expected);
  }
}

TEST(PartitionTest, AssignmentLooksUniform) {
  // Record 0 should land in each of 4 blocks about equally often.
  const LabeledSample s = MakeSample({0, 1, 2, 3, 4, 5, 6, 7}, 3);
  std::vector<int> hits(4, 0);
  constexpr int kTrials = 8000;
  for (int t = 0; t < kTrials; ++t) {
    NoiseSource noise(1000 + t);
    const auto blocks = *Partition(s, 4, noise);
    for (int b = 0; b < 4; ++b) {
      for (const auto& r : blocks[b]) hits[b] += r.x[0] == 0.0;
    }
  }
  for (int h : hits) EXPECT_NEAR(h / static_cast<double>(kTrials), 0.25, 0.02);
}

TEST(EmpiricalErrorTest, TargetAndComplement) {
  const LabeledSample s = MakeSample({1, 2, 3, 4, 5, 6}, 4);
  const Labeler target = Threshold(4);
  const auto negated = [&](const Point& x) { return Negate(target(x)); };
  EXPECT_EQ(*EmpiricalError(target, s), 0.0);
  EXPECT_EQ(*EmpiricalError(negated, s), 1.0);
}

TEST(EmpiricalErrorTest, ThresholdStraddlingSampleMatchesEnumeration) {
  // Ten grid points labeled by t* = 6, evaluated with h = threshold 3.
  std::vector<double> xs = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const LabeledSample s = MakeSample(xs, 6);
  int mistakes = 0;
  for (double x : xs) mistakes += (x >= 3) != (x >= 6);
  EXPECT_DOUBLE_EQ(*EmpiricalError(Threshold(3), s), mistakes / 10.0);
}

TEST(EmpiricalErrorTest, ComplementSumsToOne) {
  NoiseSource noise(8);
  const DataDistribution dist = GridDistribution(50, 20);
  for (int trial = 0; trial < 20; ++trial) {
    const LabeledSample s = *DrawSample(dist, 37, noise);
    const double t = 1 + static_cast<double>(noise.UniformIndex(50));
    const Labeler h = Threshold(t);
    const auto not_h = [&](const Point& x) { return Negate(h(x)); };
    EXPECT_DOUBLE_EQ(*EmpiricalError(h, s) + *EmpiricalError(not_h, s), 1.0);
  }
}

TEST(EmpiricalErrorTest, EmptySampleIsAnError) {
  EXPECT_THAT(EmpiricalError(Threshold(1), LabeledSample()),
              StatusIs(absl::StatusCode::kInvalidArgument, ::testing::_));
}

}  // namespace
}  // namespace private_prediction
