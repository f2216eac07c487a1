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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "private_prediction/base/status_macros.h"

namespace private_prediction {

std::string_view ToString(AdversaryModel model) {
  switch (model) {
    case AdversaryModel::kOffline:
      return "offline";
    case AdversaryModel::kOblivious:
      return "oblivious";
    case AdversaryModel::kStochastic:
      return "stochastic";
    case AdversaryModel::kAdaptive:
      return "adaptive";
  }
  return "unknown";
}

FixedListAdversary FixedListAdversary::Oblivious(std::vector<Point> queries) {
  return FixedListAdversary(AdversaryModel::kOblivious, std::move(queries));
}

FixedListAdversary FixedListAdversary::Offline(std::vector<Point> queries) {
  return FixedListAdversary(AdversaryModel::kOffline, std::move(queries));
}

std::string FixedListAdversary::name() const {
  return std::string(ToString(model_));
}

absl::StatusOr<std::optional<Point>> FixedListAdversary::NextQuery(
    std::span<const PublicRecord> /*transcript*/) {
  if (next_ >= queries_.size()) return std::optional<Point>();
  return std::optional<Point>(queries_[next_++]);
}

std::optional<std::vector<Point>> FixedListAdversary::Disclose() const {
  if (model_ != AdversaryModel::kOffline) return std::nullopt;
  return queries_;
}

absl::StatusOr<std::optional<Point>> StochasticAdversary::NextQuery(
    std::span<const PublicRecord> /*transcript*/) {
  return std::optional<Point>(distribution_.SamplePoint(noise_));
}

absl::StatusOr<BisectionAdversary> BisectionAdversary::Create(int64_t lower,
                                                              int64_t upper) {
  if (lower > upper) {
    return absl::InvalidArgumentError(
        absl::StrCat("Bisection range [", lower, ", ", upper, "] is empty"));
  }
  return BisectionAdversary(lower, upper);
}

absl::StatusOr<std::optional<Point>> BisectionAdversary::NextQuery(
    std::span<const PublicRecord> transcript) {
  int64_t lo = lower_;
  int64_t hi = upper_;
  for (const PublicRecord& r : transcript) {
    if (r.x.dimension() != 1) {
      return absl::InvalidArgumentError("Bisection expects scalar queries");
    }
    const auto x = static_cast<int64_t>(std::floor(r.x[0]));
    // +1 at x means the threshold is at most x.
    if (r.label == Label::kPositive) {
      if (x >= lo) hi = std::min(hi, x);
    } else {
      if (x < hi) lo = std::max(lo, x + 1);
    }
  }
  // Floor of the midpoint, safe for negative bounds.
  const int64_t mid = lo + (hi - lo) / 2;
  return std::optional<Point>(Point({static_cast<double>(mid)}));
}

double DefaultProbeDistance(double alpha, std::span<const double> lower,
                            std::span<const double> upper) {
  double sq = 0.0;
  for (size_t i = 0; i < lower.size() && i < upper.size(); ++i) {
    sq += (upper[i] - lower[i]) * (upper[i] - lower[i]);
  }
  return 2.0 * alpha * std::sqrt(sq);
}

BoundaryProbeAdversary::BoundaryProbeAdversary(BoundaryProbeOptions options,
                                               uint64_t seed)
    : options_(std::move(options)), noise_(seed) {
  weights_.assign(options_.lower.size() + 1, 0.0);
  weights_[0] = 1.0;
}

absl::StatusOr<BoundaryProbeAdversary> BoundaryProbeAdversary::Create(
    BoundaryProbeOptions options, uint64_t seed) {
  if (options.lower.empty() || options.lower.size() != options.upper.size()) {
    return absl::InvalidArgumentError(
        "Probe box bounds must be nonempty and of equal dimension");
  }
  for (size_t i = 0; i < options.lower.size(); ++i) {
    if (!std::isfinite(options.lower[i]) || !std::isfinite(options.upper[i]) ||
        !(options.lower[i] < options.upper[i])) {
      return absl::InvalidArgumentError(
          absl::StrCat("Invalid probe box bounds on axis ", i));
    }
  }
  if (!std::isfinite(options.distance) || options.distance < 0.0) {
    return absl::InvalidArgumentError("Probe distance must be finite and >= 0");
  }
  return BoundaryProbeAdversary(std::move(options), seed);
}

absl::StatusOr<std::optional<Point>> BoundaryProbeAdversary::NextQuery(
    std::span<const PublicRecord> transcript) {
  if (transcript.size() < observed_) {
    return absl::FailedPreconditionError("Transcript shrank between queries");
  }
  const size_t d = options_.lower.size();
  for (; observed_ < transcript.size(); ++observed_) {
    const PublicRecord& r = transcript[observed_];
    if (r.x.dimension() != static_cast<int>(d)) {
      return absl::InvalidArgumentError(
          absl::StrCat("Probe transcript point has dimension ",
                       r.x.dimension(), ", expected ", d));
    }
    double margin = -weights_[d];
    for (size_t i = 0; i < d; ++i) margin += weights_[i] * r.x[i];
    if (LabelFromSign(margin) != r.label) {
      const double y = ToInt(r.label);
      for (size_t i = 0; i < d; ++i) weights_[i] += y * r.x[i];
      weights_[d] -= y;
    }
  }

  std::vector<double> p(d);
  for (size_t i = 0; i < d; ++i) {
    p[i] = options_.lower[i] +
           noise_.Uniform() * (options_.upper[i] - options_.lower[i]);
  }
  double norm_sq = 0.0;
  double margin = -weights_[d];
  for (size_t i = 0; i < d; ++i) {
    norm_sq += weights_[i] * weights_[i];
    margin += weights_[i] * p[i];
  }
  const double side = issued_ % 2 == 0 ? 1.0 : -1.0;
  ++issued_;
  if (norm_sq > 1e-24) {
    const double norm = std::sqrt(norm_sq);
    for (size_t i = 0; i < d; ++i) {
      p[i] += (-margin / norm_sq + side * options_.distance / norm) *
              weights_[i];
    }
  }
  return std::optional<Point>(Point(std::move(p)));
}

std::vector<Point> UniformGridQueries(int64_t domain_size, int64_t count,
                                      NoiseSource& noise) {
  std::vector<Point> out;
  out.reserve(static_cast<size_t>(std::max<int64_t>(count, 0)));
  for (int64_t j = 0; j < count; ++j) {
    const auto index = noise.UniformIndex(static_cast<uint64_t>(domain_size));
    out.push_back(Point({static_cast<double>(index + 1)}));
  }
  return out;
}

std::vector<Point> WindowGridQueries(int64_t domain_size, int64_t center,
                                     int64_t half_width, int64_t count,
                                     NoiseSource& noise) {
  const int64_t lo = std::max<int64_t>(1, center - half_width);
  const int64_t hi = std::max(lo, std::min(domain_size, center + half_width));
  std::vector<Point> out;
  out.reserve(static_cast<size_t>(std::max<int64_t>(count, 0)));
  for (int64_t j = 0; j < count; ++j) {
    const auto offset = noise.UniformIndex(static_cast<uint64_t>(hi - lo + 1));
    out.push_back(Point({static_cast<double>(lo + static_cast<int64_t>(offset))}));
  }
  return out;
}

std::vector<Point> BoxQueries(std::span<const double> lower,
                              std::span<const double> upper, int64_t count,
                              NoiseSource& noise) {
  std::vector<Point> out;
  out.reserve(static_cast<size_t>(std::max<int64_t>(count, 0)));
  for (int64_t j = 0; j < count; ++j) {
    std::vector<double> p(lower.size());
    for (size_t i = 0; i < p.size(); ++i) {
      p[i] = lower[i] + noise.Uniform() * (upper[i] - lower[i]);
    }
    out.push_back(Point(std::move(p)));
  }
  return out;
}

absl::StatusOr<std::vector<Point>> ParseQueryCsv(const std::string& text) {
  std::vector<Point> out;
  int64_t line_number = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_number;
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    std::vector<double> coords;
    for (absl::string_view field : absl::StrSplit(line, ',')) {
      double v = 0.0;
      if (!absl::SimpleAtod(absl::StripAsciiWhitespace(field), &v)) {
        return absl::InvalidArgumentError(absl::StrCat(
            "Query CSV line ", line_number, ": not a number: '", field, "'"));
      }
      coords.push_back(v);
    }
    auto point = Point::Create(std::move(coords));
    if (!point.ok()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "Query CSV line ", line_number, ": ", point.status().message()));
    }
    if (!out.empty() && point->dimension() != out.front().dimension()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "Query CSV line ", line_number, ": dimension ", point->dimension(),
          " differs from ", out.front().dimension()));
    }
    out.push_back(*std::move(point));
  }
  return out;
}

absl::StatusOr<std::vector<Point>> LoadQueryCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("Cannot open ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseQueryCsv(buffer.str());
}

}  // namespace private_prediction
