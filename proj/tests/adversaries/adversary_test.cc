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

#include "private_prediction/adversaries/adversary.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "private_prediction/concepts/concept_class.h"
#include "private_prediction/core/distribution.h"
#include "private_prediction/predictor/predictor.h"
#include "tests/testing/status_matchers.h"

namespace private_prediction {
namespace {

using ::private_prediction::testing::IsOkAndHolds;
using ::private_prediction::testing::StatusIs;
using ::testing::HasSubstr;

std::vector<Point> Drain(Adversary& adversary,
                         const std::vector<PublicRecord>& transcript,
                         int max_queries) {
  std::vector<Point> out;
  for (int i = 0; i < max_queries; ++i) {
    auto next = adversary.NextQuery(transcript);
    if (!next.ok() || !next->has_value()) break;
    out.push_back(**next);
  }
  return out;
}

TEST(FixedListAdversaryTest, ReplaysInOrderRegardlessOfLabels) {
  const std::vector<Point> list = {Point{3.0}, Point{1.0}, Point{2.0}};
  FixedListAdversary a = FixedListAdversary::Oblivious(list);
  std::vector<PublicRecord> transcript;
  for (int i = 0; i < 3; ++i) {
    ASSERT_OK_AND_ASSIGN(const auto x, a.NextQuery(transcript));
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(*x, list[i]);
    transcript.push_back({*x, i % 2 == 0 ? Label::kPositive : Label::kNegative});
  }
  EXPECT_THAT(a.NextQuery(transcript), IsOkAndHolds(std::optional<Point>()));
  EXPECT_EQ(a.model(), AdversaryModel::kOblivious);
  EXPECT_FALSE(a.Disclose().has_value());
}

TEST(FixedListAdversaryTest, OfflineDisclosesTheList) {
  const std::vector<Point> list = {Point{5.0}, Point{6.0}};
  FixedListAdversary a = FixedListAdversary::Offline(list);
  ASSERT_TRUE(a.Disclose().has_value());
  EXPECT_EQ(*a.Disclose(), list);
  EXPECT_EQ(Drain(a, {}, 10), list);
  EXPECT_EQ(a.name(), "offline");
}

TEST(StochasticAdversaryTest, PointMassGivesConstantQuery) {
  const Point x0{7.0, -1.0};
  ASSERT_OK_AND_ASSIGN(
      DataDistribution dist,
      DataDistribution::Create(std::nullopt, {{x0, 1.0}},
                               [](const Point&) { return Label::kPositive; }));
  StochasticAdversary a(std::move(dist), 3);
  const std::vector<Point> got = Drain(a, {}, 20);
  ASSERT_EQ(got.size(), 20u);
  for (const Point& x : got) EXPECT_EQ(x, x0);
}

TEST(BisectionAdversaryTest, ForcedPositiveLabelsHalveTheRange) {
  ASSERT_OK_AND_ASSIGN(BisectionAdversary a, BisectionAdversary::Create(1, 16));
  std::vector<PublicRecord> transcript;
  std::vector<double> got;
  for (int i = 0; i < 5; ++i) {
    ASSERT_OK_AND_ASSIGN(const auto x, a.NextQuery(transcript));
    got.push_back((*x)[0]);
    transcript.push_back({*x, Label::kPositive});
  }
  EXPECT_EQ(got, (std::vector<double>{8, 4, 2, 1, 1}));
}

TEST(BisectionAdversaryTest, FindsAnyThresholdInLogSteps) {
  // Answering with c_t locates t exactly; hand-simulated binary search.
  for (int64_t t = 1; t <= 64; ++t) {
    ASSERT_OK_AND_ASSIGN(BisectionAdversary a, BisectionAdversary::Create(1, 64));
    std::vector<PublicRecord> transcript;
    int64_t lo = 1;
    int64_t hi = 64;
    for (int step = 0; step < 8; ++step) {
      ASSERT_OK_AND_ASSIGN(const auto x, a.NextQuery(transcript));
      const int64_t mid = lo + (hi - lo) / 2;
      ASSERT_EQ((*x)[0], static_cast<double>(mid));
      const bool positive = mid >= t;
      if (positive) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
      transcript.push_back({*x, positive ? Label::kPositive : Label::kNegative});
    }
    EXPECT_EQ(lo, t);
    EXPECT_EQ(hi, t);
  }
}

TEST(BisectionAdversaryTest, RejectsEmptyRange) {
  EXPECT_THAT(BisectionAdversary::Create(5, 4),
              StatusIs(absl::StatusCode::kInvalidArgument, HasSubstr("empty")));
}

BoundaryProbeOptions UnitBox(double distance) {
  return BoundaryProbeOptions{{-1.0, -1.0}, {1.0, 1.0}, distance};
}

TEST(BoundaryProbeAdversaryTest, DefaultDistanceIsTwiceAlphaTimesDiameter) {
  const std::vector<double> lo = {-1.0, -1.0};
  const std::vector<double> hi = {1.0, 1.0};
  EXPECT_DOUBLE_EQ(DefaultProbeDistance(0.1, lo, hi), 0.2 * std::sqrt(8.0));
}

TEST(BoundaryProbeAdversaryTest, ProbesAlternateSidesAtTheRequestedDistance) {
  ASSERT_OK_AND_ASSIGN(BoundaryProbeAdversary a,
                       BoundaryProbeAdversary::Create(UnitBox(0.3), 5));
  std::vector<PublicRecord> transcript;
  for (int i = 0; i < 40; ++i) {
    ASSERT_OK_AND_ASSIGN(const auto x, a.NextQuery(transcript));
    // NextQuery absorbs the transcript before placing the probe.
    const std::vector<double> used = a.estimate();
    const double norm = std::hypot(used[0], used[1]);
    const double signed_distance =
        (used[0] * (*x)[0] + used[1] * (*x)[1] - used[2]) / norm;
    EXPECT_NEAR(signed_distance, i % 2 == 0 ? 0.3 : -0.3, 1e-9) << i;
    // Answer with a fixed halfspace the perceptron has to learn.
    const Label y = LabelFromSign((*x)[0] - 0.5 * (*x)[1] - 0.2);
    transcript.push_back({*x, y});
  }
}

TEST(BoundaryProbeAdversaryTest, PerceptronMovesTowardTheAnswers) {
  ASSERT_OK_AND_ASSIGN(BoundaryProbeAdversary a,
                       BoundaryProbeAdversary::Create(UnitBox(0.2), 6));
  std::vector<PublicRecord> transcript;
  const auto truth = [](const Point& x) {
    return LabelFromSign(-x[0] + x[1] - 0.1);
  };
  for (int i = 0; i < 400; ++i) {
    ASSERT_OK_AND_ASSIGN(const auto x, a.NextQuery(transcript));
    transcript.push_back({*x, truth(*x)});
  }
  const std::vector<double> w = a.estimate();
  const double cosine = (-w[0] + w[1]) / (std::sqrt(2.0) * std::hypot(w[0], w[1]));
  EXPECT_GT(cosine, 0.9);
}

TEST(BoundaryProbeAdversaryTest, RejectsBadOptions) {
  EXPECT_THAT(BoundaryProbeAdversary::Create({{0.0}, {0.0}, 0.1}, 1),
              StatusIs(absl::StatusCode::kInvalidArgument, HasSubstr("axis")));
  EXPECT_THAT(BoundaryProbeAdversary::Create({{0.0}, {1.0}, -1.0}, 1),
              StatusIs(absl::StatusCode::kInvalidArgument, HasSubstr("distance")));
  EXPECT_THAT(BoundaryProbeAdversary::Create({{}, {}, 0.1}, 1),
              StatusIs(absl::StatusCode::kInvalidArgument, ::testing::_));
}

TEST(QueryListTest, GridListsStayInRange) {
  NoiseSource noise(9);
  for (const Point& x : UniformGridQueries(50, 500, noise)) {
    EXPECT_GE(x[0], 1.0);
    EXPECT_LE(x[0], 50.0);
    EXPECT_EQ(x[0], std::floor(x[0]));
  }
  std::set<double> seen;
  for (const Point& x : WindowGridQueries(100, 3, 5, 500, noise)) {
    EXPECT_GE(x[0], 1.0);
    EXPECT_LE(x[0], 8.0);
    seen.insert(x[0]);
  }
  EXPECT_EQ(seen.size(), 8u);
  const std::vector<double> lo = {0.0, 2.0};
  const std::vector<double> hi = {1.0, 3.0};
  for (const Point& x : BoxQueries(lo, hi, 100, noise)) {
    EXPECT_GE(x[0], 0.0);
    EXPECT_LE(x[1], 3.0);
  }
}

TEST(QueryCsvTest, ParsesRowsAndRejectsBadInput) {
  ASSERT_OK_AND_ASSIGN(const auto points, ParseQueryCsv("1,2\n 3.5 , -4\n\n"));
  EXPECT_EQ(points, (std::vector<Point>{Point{1.0, 2.0}, Point{3.5, -4.0}}));
  EXPECT_THAT(ParseQueryCsv("1,2\n3\n"),
              StatusIs(absl::StatusCode::kInvalidArgument, HasSubstr("line 2")));
  EXPECT_THAT(ParseQueryCsv("1,abc\n"),
              StatusIs(absl::StatusCode::kInvalidArgument, HasSubstr("number")));
  EXPECT_THAT(ParseQueryCsv("nan\n"),
              StatusIs(absl::StatusCode::kInvalidArgument, ::testing::_));
  EXPECT_THAT(LoadQueryCsv("/nonexistent/queries.csv"),
              StatusIs(absl::StatusCode::kNotFound, ::testing::_));
}

TEST(QueryCsvTest, LoadedListDrivesAnAdversaryToStreamEnd) {
  const std::string path = ::testing::TempDir() + "/queries.csv";
  {
    std::ofstream out(path);
    out << "4\n8\n15\n";
  }
  ASSERT_OK_AND_ASSIGN(auto points, LoadQueryCsv(path));
  FixedListAdversary a = FixedListAdversary::Oblivious(points);
  EXPECT_EQ(Drain(a, {}, 10).size(), 3u);
  EXPECT_THAT(a.NextQuery({}), IsOkAndHolds(std::optional<Point>()));
  std::remove(path.c_str());
}

// Thresholds on [1, 200] with target 120.
RunConfig SmallThresholdConfig() {
  RunConfig config;
  config.generator = ObliviousSpec{ThresholdClass{200}};
  config.rounds = 40;
  config.epsilon_bt = 8.0;
  config.delta_bt = 1e-3;
  config.beta_bt = 0.05;
  return config;
}

LabeledSample ThresholdSample(int64_t n, NoiseSource& noise) {
  const auto dist = *DataDistribution::Create(
      GridSampler{200}, {}, [](const Point& x) {
        return x[0] >= 120 ? Label::kPositive : Label::kNegative;
      });
  return *DrawSample(dist, n, noise);
}

TEST(ObliviousnessTest, SameStreamAgainstDifferentPredictors) {
  NoiseSource list_noise(1);
  const std::vector<Point> list = UniformGridQueries(200, 40, list_noise);
  const RunConfig config = SmallThresholdConfig();
  const int64_t k = BlockCount(8.0, 40, 0.05);
  std::vector<std::vector<Point>> streams;
  for (uint64_t seed : {11, 12}) {
    NoiseSource noise(seed);
    const LabeledSample sample = ThresholdSample(k * (seed == 11 ? 2 : 7), noise);
    FixedListAdversary a = FixedListAdversary::Oblivious(list);
    ASSERT_OK_AND_ASSIGN(const RunReport r, RunPredictor(config, sample, a, noise));
    std::vector<Point> stream;
    for (const TranscriptEntry& e : r.transcript) stream.push_back(e.x);
    streams.push_back(stream);
  }
  EXPECT_EQ(streams[0], streams[1]);
  EXPECT_EQ(streams[0], list);
}

// Replays an adaptive adversary against the public (x, Label) pairs of a
// finished run and checks it reissues the same stream.
void ExpectContained(Adversary& replay, const RunReport& r) {
  std::vector<PublicRecord> truncated;
  for (const TranscriptEntry& e : r.transcript) {
    ASSERT_OK_AND_ASSIGN(const auto x, replay.NextQuery(truncated));
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(*x, e.x) << "round " << e.round;
    truncated.push_back({e.x, e.label});
  }
}

TEST(AdaptivityContainmentTest, BisectionUsesOnlyPublicRecords) {
  const RunConfig config = SmallThresholdConfig();
  const int64_t k = BlockCount(8.0, 40, 0.05);
  for (uint64_t seed = 0; seed < 5; ++seed) {
    NoiseSource noise(seed);
    const LabeledSample sample = ThresholdSample(k * 4, noise);
    BisectionAdversary live = *BisectionAdversary::Create(1, 200);
    ASSERT_OK_AND_ASSIGN(const RunReport r,
                         RunPredictor(config, sample, live, noise));
    BisectionAdversary replay = *BisectionAdversary::Create(1, 200);
    ExpectContained(replay, r);
  }
}

TEST(AdaptivityContainmentTest, BoundaryProbeUsesOnlyPublicRecords) {
  RunConfig config;
  config.generator = HalfspaceSpec{2, {}};
  config.rounds = 32;
  config.epsilon_bt = 8.0;
  config.delta_bt = 1e-3;
  config.beta_bt = 0.05;
  const int64_t k = BlockCount(8.0, 32, 0.05);
  for (uint64_t seed = 0; seed < 3; ++seed) {
    NoiseSource noise(seed);
    const auto dist = *DataDistribution::Create(
        BoxSampler{{-1.0, -1.0}, {1.0, 1.0}}, {},
        [](const Point& x) { return LabelFromSign(x[0] + x[1] - 0.2); });
    const LabeledSample sample = *DrawSample(dist, k * 5, noise);
    auto live = *BoundaryProbeAdversary::Create(UnitBox(0.1), 100 + seed);
    ASSERT_OK_AND_ASSIGN(const RunReport r,
                         RunPredictor(config, sample, live, noise));
    auto replay = *BoundaryProbeAdversary::Create(UnitBox(0.1), 100 + seed);
    ExpectContained(replay, r);
  }
}

}  // namespace
}  // namespace private_prediction
