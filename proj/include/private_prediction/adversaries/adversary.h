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

#ifndef PRIVATE_PREDICTION_ADVERSARIES_ADVERSARY_H_
#define PRIVATE_PREDICTION_ADVERSARIES_ADVERSARY_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "private_prediction/core/distribution.h"
#include "private_prediction/core/noise_source.h"
#include "private_prediction/core/types.h"

namespace private_prediction {

// What any adversary may observe about a past round: the query and the
// released label. Predictor internals never reach an adversary.
struct PublicRecord {
  Point x;
  Label label = Label::kNegative;
  friend bool operator==(const PublicRecord&, const PublicRecord&) = default;
};

enum class AdversaryModel { kOffline, kOblivious, kStochastic, kAdaptive };

std::string_view ToString(AdversaryModel model);

// A query stream. Randomized adversaries own their NoiseSource, so the
// stream depends only on the seed and the public transcript.
class Adversary {
 public:
  virtual ~Adversary() = default;

  virtual AdversaryModel model() const = 0;
  virtual std::string name() const = 0;

  // The next query given the public transcript so far; nullopt marks the end
  // of the stream.
  virtual absl::StatusOr<std::optional<Point>> NextQuery(
      std::span<const PublicRecord> transcript) = 0;

  // The full query list, for models that fix and disclose it before the run.
  // Meant for analysis tooling, never for the predictor.
  virtual std::optional<std::vector<Point>> Disclose() const {
    return std::nullopt;
  }
};

// Replays a fixed list in order, ignoring the transcript.
class FixedListAdversary final : public Adversary {
 public:
  // Revealed one query at a time; Disclose() returns nothing.
  static FixedListAdversary Oblivious(std::vector<Point> queries);
  // Same stream, with the list disclosed up front.
  static FixedListAdversary Offline(std::vector<Point> queries);

  AdversaryModel model() const override { return model_; }
  std::string name() const override;
  absl::StatusOr<std::optional<Point>> NextQuery(
      std::span<const PublicRecord> transcript) override;
  std::optional<std::vector<Point>> Disclose() const override;

  const std::vector<Point>& queries() const { return queries_; }

 private:
  FixedListAdversary(AdversaryModel model, std::vector<Point> queries)
      : model_(model), queries_(std::move(queries)) {}

  AdversaryModel model_;
  std::vector<Point> queries_;
  size_t next_ = 0;
};

// I.i.d. draws from a distribution.
class StochasticAdversary final : public Adversary {
 public:
  StochasticAdversary(DataDistribution distribution, uint64_t seed)
      : distribution_(std::move(distribution)), noise_(seed) {}

  AdversaryModel model() const override { return AdversaryModel::kStochastic; }
  std::string name() const override { return "stochastic"; }
  absl::StatusOr<std::optional<Point>> NextQuery(
      std::span<const PublicRecord> transcript) override;

 private:
  DataDistribution distribution_;
  NoiseSource noise_;
};

// Binary search for a threshold on the grid [lower, upper]: queries the
// midpoint of the interval still consistent with the released labels.
class BisectionAdversary final : public Adversary {
 public:
  // Fails unless lower <= upper.
  static absl::StatusOr<BisectionAdversary> Create(int64_t lower,
                                                   int64_t upper);

  AdversaryModel model() const override { return AdversaryModel::kAdaptive; }
  std::string name() const override { return "bisection"; }
  // Recomputes the interval from the transcript on every call. A label that
  // would empty the interval is ignored.
  absl::StatusOr<std::optional<Point>> NextQuery(
      std::span<const PublicRecord> transcript) override;

 private:
  BisectionAdversary(int64_t lower, int64_t upper)
      : lower_(lower), upper_(upper) {}

  int64_t lower_;
  int64_t upper_;
};

struct BoundaryProbeOptions {
  // Box the probe anchors are drawn from.
  std::vector<double> lower;
  std::vector<double> upper;
  // Distance of each probe from the estimated boundary; see
  // DefaultProbeDistance().
  double distance = 0.0;
};

// 2 * alpha * diameter of the box.
double DefaultProbeDistance(double alpha, std::span<const double> lower,
                            std::span<const double> upper);

// Tracks a perceptron estimate (a, w) of the released labeling, x -> +1 iff
// <a, x> >= w, and queries points at the given distance from {<a, x> = w},
// alternating sides. Anchors are uniform in the box, projected onto the
// estimated boundary.
class BoundaryProbeAdversary final : public Adversary {
 public:
  static absl::StatusOr<BoundaryProbeAdversary> Create(
      BoundaryProbeOptions options, uint64_t seed);

  AdversaryModel model() const override { return AdversaryModel::kAdaptive; }
  std::string name() const override { return "boundary_probe"; }
  absl::StatusOr<std::optional<Point>> NextQuery(
      std::span<const PublicRecord> transcript) override;

  // Current estimate (a_1, ..., a_d, w).
  const std::vector<double>& estimate() const { return weights_; }

 private:
  BoundaryProbeAdversary(BoundaryProbeOptions options, uint64_t seed);

  BoundaryProbeOptions options_;
  NoiseSource noise_;
  std::vector<double> weights_;
  size_t observed_ = 0;
  int64_t issued_ = 0;
};

// T grid points uniform on {1, ..., domain_size}.
std::vector<Point> UniformGridQueries(int64_t domain_size, int64_t count,
                                      NoiseSource& noise);

// T grid points uniform on [center - half_width, center + half_width],
// clipped to {1, ..., domain_size}.
std::vector<Point> WindowGridQueries(int64_t domain_size, int64_t center,
                                     int64_t half_width, int64_t count,
                                     NoiseSource& noise);

// T points uniform in the box.
std::vector<Point> BoxQueries(std::span<const double> lower,
                              std::span<const double> upper, int64_t count,
                              NoiseSource& noise);

// One point per nonempty line, coordinates separated by commas. All rows must
// share a dimension.
absl::StatusOr<std::vector<Point>> ParseQueryCsv(const std::string& text);
absl::StatusOr<std::vector<Point>> LoadQueryCsv(const std::string& path);

}  // namespace private_prediction

#endif  // PRIVATE_PREDICTION_ADVERSARIES_ADVERSARY_H_
