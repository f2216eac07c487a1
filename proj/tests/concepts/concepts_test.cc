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

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "private_prediction/concepts/concept_class.h"
#include "private_prediction/concepts/hypothesis.h"
#include "private_prediction/concepts/version_space.h"
#include "private_prediction/core/noise_source.h"
#include "tests/testing/status_matchers.h"

namespace private_prediction {
namespace {

using ::private_prediction::testing::IsOkAndHolds;
using ::private_prediction::testing::StatusIs;
using ::testing::HasSubstr;

constexpr Label kPos = Label::kPositive;
constexpr Label kNeg = Label::kNegative;

std::vector<Point> Scalars(const std::vector<double>& xs) {
  std::vector<Point> out;
  for (double x : xs) out.push_back(Point{x});
  return out;
}

// All 2^n labelings of n scalar points 0..n-1, rows in binary order.
EnumeratedClass FullClass(int n) {
  std::vector<Point> points;
  for (int i = 0; i < n; ++i) points.push_back(Point{static_cast<double>(i)});
  std::vector<std::vector<Label>> rows;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<Label> row;
    for (int i = 0; i < n; ++i) row.push_back((mask >> i) & 1 ? kPos : kNeg);
    rows.push_back(row);
  }
  return {*PatternTable::Create(points, rows)};
}

EnumeratedClass RandomClass(int points, int hypotheses, NoiseSource& noise) {
  std::vector<std::vector<Label>> rows;
  for (int h = 0; h < hypotheses; ++h) {
    std::vector<Label> row;
    for (int i = 0; i < points; ++i) row.push_back(noise.UniformLabel());
    rows.push_back(row);
  }
  std::vector<Point> pts;
  for (int i = 0; i < points; ++i) pts.push_back(Point{static_cast<double>(i)});
  return {*PatternTable::Create(pts, rows)};
}

LabeledSample ThresholdSample(const std::vector<double>& xs, int64_t t) {
  std::vector<LabeledExample> records;
  for (double x : xs) records.push_back({Point{x}, x >= t ? kPos : kNeg});
  return *LabeledSample::Create(records);
}

int64_t BruteThresholdMistakes(const LabeledSample& s, int64_t t) {
  int64_t m = 0;
  for (const auto& r : s) m += (r.x[0] >= t ? kPos : kNeg) != r.y;
  return m;
}

// ---------------------------------------------------------------- evaluate

TEST(EvaluateTest, Examples) {
  EXPECT_THAT(Evaluate(ThresholdHypothesis{5}, Point{7.0}),
              IsOkAndHolds(kPos));
  EXPECT_THAT(Evaluate(ThresholdHypothesis{5}, Point{4.0}),
              IsOkAndHolds(kNeg));
  EXPECT_THAT(Evaluate(HalfspaceHypothesis{{1.0, 0.0, 0.0}}, Point{-3.0, 9.0}),
              IsOkAndHolds(kNeg));
  EXPECT_THAT(Evaluate(HalfspaceHypothesis{{0.0, 0.0, 0.0}}, Point{-3.0, 9.0}),
              IsOkAndHolds(kPos));
  EXPECT_TRUE(HalfspaceHypothesis({0.0, 0.0}).IsDegenerate());
}

TEST(EvaluateTest, HalfspaceUsesBiasAsThreshold) {
  // a = (2), w = 3: +1 iff 2x >= 3.
  const Hypothesis h = HalfspaceHypothesis{{2.0, 3.0}};
  EXPECT_THAT(Evaluate(h, Point{1.5}), IsOkAndHolds(kPos));
  EXPECT_THAT(Evaluate(h, Point{1.4}), IsOkAndHolds(kNeg));
}

TEST(EvaluateTest, DimensionMismatchIsAnError) {
  EXPECT_THAT(Evaluate(HalfspaceHypothesis{{1.0, 0.0, 0.0}}, Point{1.0}),
              StatusIs(absl::StatusCode::kInvalidArgument,
                       HasSubstr("dimension")));
  EXPECT_THAT(Evaluate(ThresholdHypothesis{1}, Point{1.0, 2.0}),
              StatusIs(absl::StatusCode::kInvalidArgument, ::testing::_));
  const EnumeratedClass c = FullClass(2);
  EXPECT_THAT(Evaluate(EnumeratedHypothesis{c.table, 0}, Point{9.0}),
              StatusIs(absl::StatusCode::kInvalidArgument,
                       HasSubstr("domain")));
}

// ---------------------------------------------------------------- restrict

TEST(RestrictTest, ThresholdInterval) {
  const VersionSpace v(ThresholdClass{10});
  ASSERT_OK_AND_ASSIGN(const VersionSpace r, v.Restrict(Point{5.0}, kPos));
  EXPECT_EQ(r.threshold_lower(), 1);
  EXPECT_EQ(r.threshold_upper(), 5);
  EXPECT_THAT(r.IsEmpty(), IsOkAndHolds(false));
  // The original is untouched.
  EXPECT_EQ(v.threshold_upper(), 10);
  EXPECT_TRUE(v.constraints().empty());
}

TEST(RestrictTest, ContradictionEmpties) {
  VersionSpace v(ThresholdClass{10});
  ASSERT_OK(v.RestrictInPlace(Point{4.0}, kPos));
  ASSERT_OK(v.RestrictInPlace(Point{4.0}, kNeg));
  EXPECT_THAT(v.IsEmpty(), IsOkAndHolds(true));

  VersionSpace e(FullClass(3));
  ASSERT_OK(e.RestrictInPlace(Point{1.0}, kPos));
  ASSERT_OK(e.RestrictInPlace(Point{1.0}, kNeg));
  EXPECT_THAT(e.IsEmpty(), IsOkAndHolds(true));
}

TEST(RestrictTest, ShatteredClassHalves) {
  VersionSpace v(FullClass(3));
  ASSERT_EQ(v.members().size(), 8u);
  ASSERT_OK(v.RestrictInPlace(Point{2.0}, kNeg));
  EXPECT_EQ(v.members().size(), 4u);
}

TEST(RestrictTest, DropLastUndoes) {
  VersionSpace v(ThresholdClass{10});
  ASSERT_OK(v.RestrictInPlace(Point{7.0}, kPos));
  ASSERT_OK(v.RestrictInPlace(Point{3.0}, kNeg));
  ASSERT_OK(v.DropLast());
  EXPECT_EQ(v.threshold_lower(), 1);
  EXPECT_EQ(v.threshold_upper(), 7);
  EXPECT_EQ(v.constraints().size(), 1u);
  ASSERT_OK(v.DropLast());
  EXPECT_THAT(v.DropLast(),
              StatusIs(absl::StatusCode::kFailedPrecondition, ::testing::_));
}

TEST(RestrictTest, HalfspaceEmptinessIsDeferred) {
  VersionSpace v(HalfspaceClass{2});
  ASSERT_OK(v.RestrictInPlace(Point{1.0, 1.0}, kPos));
  EXPECT_THAT(v.IsEmpty(),
              StatusIs(absl::StatusCode::kUnimplemented, ::testing::_));
  EXPECT_THAT(v.RestrictInPlace(Point{1.0}, kPos),
              StatusIs(absl::StatusCode::kInvalidArgument, ::testing::_));
}

TEST(RestrictTest, MembershipMatchesEvaluation) {
  NoiseSource noise(12);
  for (int trial = 0; trial < 100; ++trial) {
    const EnumeratedClass c = RandomClass(6, 20, noise);
    VersionSpace v(c);
    for (int j = 0; j < 3; ++j) {
      ASSERT_OK(v.RestrictInPlace(
          Point{static_cast<double>(noise.UniformIndex(6))},
          noise.UniformLabel()));
    }
    for (int64_t row = 0; row < c.table->num_hypotheses(); ++row) {
      const Hypothesis h = EnumeratedHypothesis{c.table, row};
      const bool listed = std::binary_search(v.members().begin(),
                                             v.members().end(), row);
      ASSERT_THAT(v.Contains(h), IsOkAndHolds(listed));
      if (!listed) continue;
      for (const auto& con : v.constraints()) {
        EXPECT_THAT(Evaluate(h, con.x), IsOkAndHolds(con.y));
      }
    }
  }
}

TEST(RestrictTest, ThresholdMembershipMatchesEvaluation) {
  NoiseSource noise(13);
  for (int trial = 0; trial < 100; ++trial) {
    VersionSpace v(ThresholdClass{30});
    for (int j = 0; j < 3; ++j) {
      ASSERT_OK(v.RestrictInPlace(
          Point{1.0 + static_cast<double>(noise.UniformIndex(30))},
          noise.UniformLabel()));
    }
    for (int64_t t = 1; t <= 30; ++t) {
      const bool inside = t >= v.threshold_lower() && t <= v.threshold_upper();
      ASSERT_THAT(v.Contains(ThresholdHypothesis{t}), IsOkAndHolds(inside));
    }
  }
}

// --------------------------------------------------------------------- erm

TEST(ErmTest, RealizableSampleGivesZeroError) {
  const LabeledSample s = ThresholdSample({1, 4, 9, 12, 12, 20, 31}, 12);
  ASSERT_OK_AND_ASSIGN(const Hypothesis h,
                       Erm(VersionSpace(ThresholdClass{40}), s));
  EXPECT_THAT(EmpiricalError(h, s), IsOkAndHolds(0.0));
}

TEST(ErmTest, RestrictedAboveTarget) {
  // V = {t >= 8}, S labeled by t* = 3. Enumerating every threshold shows the
  // best is t = 8, erring on the sample points in [3, 8).
  std::vector<double> xs = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 5, 3};
  const LabeledSample s = ThresholdSample(xs, 3);
  VersionSpace v(ThresholdClass{10});
  ASSERT_OK(v.RestrictInPlace(Point{7.0}, kNeg));
  ASSERT_EQ(v.threshold_lower(), 8);
  int64_t best_t = -1;
  int64_t best = 1 << 30;
  for (int64_t t = v.threshold_lower(); t <= v.threshold_upper(); ++t) {
    const int64_t m = BruteThresholdMistakes(s, t);
    if (m < best) {
      best = m;
      best_t = t;
    }
  }
  ASSERT_OK_AND_ASSIGN(const Hypothesis h, Erm(v, s));
  EXPECT_EQ(std::get<ThresholdHypothesis>(h).threshold, best_t);
  EXPECT_EQ(best_t, 8);
  const double in_gap = std::count_if(xs.begin(), xs.end(), [](double x) {
    return x >= 3 && x < 8;
  });
  EXPECT_THAT(EmpiricalError(h, s), IsOkAndHolds(in_gap / xs.size()));
}

TEST(ErmTest, SingletonVersionSpace) {
  const EnumeratedClass c = FullClass(3);
  VersionSpace v(c);
  for (int i = 0; i < 3; ++i) {
    ASSERT_OK(v.RestrictInPlace(Point{static_cast<double>(i)}, kPos));
  }
  ASSERT_EQ(v.members().size(), 1u);
  // A sample the lone survivor gets completely wrong.
  const LabeledSample s = *LabeledSample::Create(
      {{Point{0.0}, kNeg}, {Point{1.0}, kNeg}, {Point{2.0}, kNeg}});
  ASSERT_OK_AND_ASSIGN(const Hypothesis h, Erm(v, s));
  EXPECT_EQ(std::get<EnumeratedHypothesis>(h).index, v.members()[0]);
}

TEST(ErmTest, EmptyVersionSpaceIsAnError) {
  VersionSpace v(ThresholdClass{10});
  ASSERT_OK(v.RestrictInPlace(Point{10.0}, kNeg));
  EXPECT_THAT(Erm(v, ThresholdSample({1, 2}, 2)),
              StatusIs(absl::StatusCode::kFailedPrecondition,
                       HasSubstr("empty")));
}

TEST(ErmTest, ThresholdMatchesBruteForceWithTies) {
  NoiseSource noise(21);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<LabeledExample> records;
    const int m = 1 + static_cast<int>(noise.UniformIndex(15));
    for (int i = 0; i < m; ++i) {
      records.push_back({Point{1.0 + static_cast<double>(noise.UniformIndex(25))},
                         noise.UniformLabel()});
    }
    const LabeledSample s = *LabeledSample::Create(records);
    VersionSpace v(ThresholdClass{25});
    if (noise.Uniform() < 0.7) {
      ASSERT_OK(v.RestrictInPlace(
          Point{1.0 + static_cast<double>(noise.UniformIndex(25))},
          noise.UniformLabel()));
    }
    if (*v.IsEmpty()) continue;
    int64_t best_t = -1;
    int64_t best = 1 << 30;
    for (int64_t t = v.threshold_lower(); t <= v.threshold_upper(); ++t) {
      const int64_t mistakes = BruteThresholdMistakes(s, t);
      if (mistakes < best) {
        best = mistakes;
        best_t = t;
      }
    }
    ASSERT_OK_AND_ASSIGN(const Hypothesis h, Erm(v, s));
    ASSERT_EQ(std::get<ThresholdHypothesis>(h).threshold, best_t)
        << "trial " << trial;
  }
}

TEST(ErmTest, EnumeratedMatchesBruteForceAndPrefersLowestRow) {
  NoiseSource noise(22);
  for (int trial = 0; trial < 200; ++trial) {
    const EnumeratedClass c = RandomClass(5, 12, noise);
    std::vector<LabeledExample> records;
    for (int i = 0; i < 6; ++i) {
      records.push_back({Point{static_cast<double>(noise.UniformIndex(5))},
                         noise.UniformLabel()});
    }
    const LabeledSample s = *LabeledSample::Create(records);
    const VersionSpace v(c);
    int64_t best_row = -1;
    double best = 2.0;
    for (int64_t row = 0; row < 12; ++row) {
      const double err = *EmpiricalError(EnumeratedHypothesis{c.table, row}, s);
      if (err < best) {
        best = err;
        best_row = row;
      }
    }
    ASSERT_OK_AND_ASSIGN(const Hypothesis h, Erm(v, s));
    EXPECT_EQ(std::get<EnumeratedHypothesis>(h).index, best_row);
  }
}

TEST(ErmTest, ConsistentHypothesisIsFoundWhenPresent) {
  NoiseSource noise(23);
  for (int trial = 0; trial < 200; ++trial) {
    const int64_t target = 1 + static_cast<int64_t>(noise.UniformIndex(50));
    std::vector<double> xs;
    for (int i = 0; i < 10; ++i) {
      xs.push_back(1.0 + static_cast<double>(noise.UniformIndex(50)));
    }
    const LabeledSample s = ThresholdSample(xs, target);
    VersionSpace v(ThresholdClass{50});
    // Restrictions consistent with the target keep it inside V.
    const double probe = 1.0 + static_cast<double>(noise.UniformIndex(50));
    ASSERT_OK(v.RestrictInPlace(Point{probe}, probe >= target ? kPos : kNeg));
    ASSERT_OK_AND_ASSIGN(const Hypothesis h, Erm(v, s));
    EXPECT_THAT(EmpiricalError(h, s), IsOkAndHolds(0.0));
  }
}

TEST(ErmTest, HalfspacesAreNotErmBased) {
  EXPECT_THAT(Erm(VersionSpace(HalfspaceClass{2}),
                  *LabeledSample::Create({{Point{1.0, 1.0}, kPos}})),
              StatusIs(absl::StatusCode::kUnimplemented, ::testing::_));
}

// ----------------------------------------------------------- pattern_count

int64_t BrutePatterns(const VersionSpace& v, const std::vector<Point>& queries) {
  std::set<std::vector<Label>> seen;
  for (int64_t t = v.threshold_lower(); t <= v.threshold_upper(); ++t) {
    std::vector<Label> row;
    for (const Point& q : queries) row.push_back(q[0] >= t ? kPos : kNeg);
    seen.insert(row);
  }
  return static_cast<int64_t>(seen.size());
}

TEST(PatternCountTest, ThresholdsOnDistinctSortedQueries) {
  const std::vector<Point> queries = Scalars({2, 5, 9, 13, 40});
  EXPECT_THAT(PatternCount(VersionSpace(ThresholdClass{100}), queries),
              IsOkAndHolds(6));
}

TEST(PatternCountTest, FullShatter) {
  EXPECT_THAT(PatternCount(VersionSpace(FullClass(3)), Scalars({0, 1, 2})),
              IsOkAndHolds(8));
}

TEST(PatternCountTest, RandomEnumeratedMatchesDistinctRows) {
  NoiseSource noise(31);
  for (int trial = 0; trial < 100; ++trial) {
    const EnumeratedClass c = RandomClass(8, 15, noise);
    std::vector<Point> queries;
    for (int j = 0; j < 5; ++j) {
      queries.push_back(Point{static_cast<double>(noise.UniformIndex(8))});
    }
    std::set<std::vector<Label>> rows;
    for (const auto& pattern : c.table->patterns()) {
      std::vector<Label> row;
      for (const Point& q : queries) {
        row.push_back(pattern[static_cast<size_t>(q[0])]);
      }
      rows.insert(row);
    }
    EXPECT_THAT(PatternCount(VersionSpace(c), queries),
                IsOkAndHolds(static_cast<int64_t>(rows.size())));
  }
}

TEST(PatternCountTest, ThresholdClosedFormMatchesEnumeration) {
  NoiseSource noise(32);
  for (int trial = 0; trial < 300; ++trial) {
    VersionSpace v(ThresholdClass{40});
    for (int j = 0; j < 2; ++j) {
      ASSERT_OK(v.RestrictInPlace(
          Point{1.0 + static_cast<double>(noise.UniformIndex(40))},
          noise.UniformLabel()));
    }
    std::vector<Point> queries;
    const int t = static_cast<int>(noise.UniformIndex(12));
    for (int j = 0; j < t; ++j) {
      queries.push_back(
          Point{static_cast<double>(noise.UniformIndex(45)) - 2.0});
    }
    ASSERT_THAT(PatternCount(v, queries), IsOkAndHolds(BrutePatterns(v, queries)));
    ASSERT_OK_AND_ASSIGN(const auto explicit_set, Patterns(v, queries));
    EXPECT_EQ(static_cast<int64_t>(explicit_set.size()),
              BrutePatterns(v, queries));
  }
}

double SauerBound(int64_t t, int vc) {
  double sum = 0.0;
  double binom = 1.0;
  for (int i = 0; i <= vc; ++i) {
    sum += binom;
    binom = binom * static_cast<double>(t - i) / static_cast<double>(i + 1);
  }
  return sum;
}

TEST(PatternCountTest, MonotoneUnderRestrictAndWithinSauer) {
  NoiseSource noise(33);
  for (int trial = 0; trial < 100; ++trial) {
    const EnumeratedClass c = RandomClass(7, 40, noise);
    const int vc = *VcDimension(c);
    std::vector<Point> queries;
    for (int j = 0; j < 6; ++j) {
      queries.push_back(Point{static_cast<double>(noise.UniformIndex(7))});
    }
    VersionSpace v(c);
    int64_t previous = *PatternCount(v, queries);
    EXPECT_LE(previous, SauerBound(6, vc));
    for (int j = 0; j < 4; ++j) {
      ASSERT_OK(v.RestrictInPlace(
          Point{static_cast<double>(noise.UniformIndex(7))},
          noise.UniformLabel()));
      const int64_t now = *PatternCount(v, queries);
      EXPECT_LE(now, previous);
      EXPECT_EQ(now >= 1, !*v.IsEmpty() || queries.empty());
      previous = now;
    }
  }
  for (int trial = 0; trial < 100; ++trial) {
    VersionSpace v(ThresholdClass{64});
    std::vector<Point> queries;
    for (int j = 0; j < 10; ++j) {
      queries.push_back(Point{1.0 + static_cast<double>(noise.UniformIndex(64))});
    }
    int64_t previous = *PatternCount(v, queries);
    EXPECT_LE(previous, SauerBound(10, 1));
    for (int j = 0; j < 4; ++j) {
      ASSERT_OK(v.RestrictInPlace(queries[noise.UniformIndex(10)],
                                  noise.UniformLabel()));
      const int64_t now = *PatternCount(v, queries);
      EXPECT_LE(now, previous);
      previous = now;
    }
  }
}

TEST(PatternCountTest, HalfspacesAreUnsupported) {
  const std::vector<Point> queries = {Point{1.0, 2.0}};
  EXPECT_THAT(PatternCount(VersionSpace(HalfspaceClass{2}), queries),
              StatusIs(absl::StatusCode::kUnimplemented, ::testing::_));
}

// ------------------------------------------------------------ vc_dimension

// Independent oracle: every subset as a bitmask.
int BruteVc(const PatternTable& table) {
  const int n = static_cast<int>(table.points().size());
  int best = 0;
  for (int mask = 1; mask < (1 << n); ++mask) {
    const int size = __builtin_popcount(static_cast<unsigned>(mask));
    if (size <= best) continue;
    std::set<int> labelings;
    for (const auto& row : table.patterns()) {
      int code = 0;
      for (int i = 0, bit = 0; i < n; ++i) {
        if (!((mask >> i) & 1)) continue;
        code |= (row[i] == kPos ? 1 : 0) << bit++;
      }
      labelings.insert(code);
    }
    if (static_cast<int>(labelings.size()) == (1 << size)) best = size;
  }
  return best;
}

TEST(VcDimensionTest, KnownClasses) {
  EXPECT_THAT(VcDimension(ThresholdClass{}), IsOkAndHolds(1));
  EXPECT_THAT(VcDimension(FullClass(3)), IsOkAndHolds(3));
  EXPECT_THAT(VcDimension(HalfspaceClass{3}), IsOkAndHolds(4));
}

TEST(VcDimensionTest, RandomClassesMatchExhaustiveSearch) {
  NoiseSource noise(41);
  for (int trial = 0; trial < 200; ++trial) {
    const EnumeratedClass c = RandomClass(6, 10, noise);
    EXPECT_THAT(VcDimension(c), IsOkAndHolds(BruteVc(*c.table)));
  }
}

// -------------------------------------------------------------------- json

TEST(EnumeratedJsonTest, ParsesScalarAndVectorPoints) {
  ASSERT_OK_AND_ASSIGN(
      const EnumeratedClass scalar,
      ParseEnumeratedClass(R"({"points": [4, 7], "patterns": [[1, 1]]})"));
  EXPECT_EQ(scalar.table->points()[1], Point({7.0}));
  ASSERT_OK_AND_ASSIGN(
      const EnumeratedClass c,
      ParseEnumeratedClass(R"({"points": [[1, 0], [2, 3]],
                               "patterns": [[1, -1], [-1, -1]]})"));
  EXPECT_EQ(c.table->num_hypotheses(), 2);
  EXPECT_EQ(c.table->points()[1], Point({2.0, 3.0}));
}

TEST(EnumeratedJsonTest, SameDimensionRequiredAndRowsChecked) {
  EXPECT_THAT(ParseEnumeratedClass(
                  R"({"points": [1, [2, 3]], "patterns": [[1, 1]]})"),
              StatusIs(absl::StatusCode::kInvalidArgument,
                       HasSubstr("dimension")));
  EXPECT_THAT(ParseEnumeratedClass(
                  R"({"points": [1, 2], "patterns": [[1]]})"),
              StatusIs(absl::StatusCode::kInvalidArgument,
                       HasSubstr("labels")));
  EXPECT_THAT(ParseEnumeratedClass(
                  R"({"points": [1, 2], "patterns": [[1, 0]]})"),
              StatusIs(absl::StatusCode::kInvalidArgument, ::testing::_));
  EXPECT_THAT(ParseEnumeratedClass("{"),
              StatusIs(absl::StatusCode::kInvalidArgument,
                       HasSubstr("malformed")));
  EXPECT_THAT(ParseEnumeratedClass(R"({"points": [1, 1], "patterns": [[1, 1]]})"),
              StatusIs(absl::StatusCode::kInvalidArgument,
                       HasSubstr("Duplicate")));
  EXPECT_THAT(LoadEnumeratedClass("/nonexistent/class.json"),
              StatusIs(absl::StatusCode::kNotFound, ::testing::_));
}

}  // namespace
}  // namespace private_prediction
