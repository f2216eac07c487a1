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

#include "private_prediction/dp/auditor.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "boost/math/special_functions/beta.hpp"

namespace private_prediction {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int64_t kMinTrials = 1000;

absl::Status CheckNeighbors(const LabeledSample& a, const LabeledSample& b) {
  if (a.size() != b.size()) {
    return absl::InvalidArgumentError(
        "Neighboring samples must have equal size");
  }
  int64_t differing = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] == b[i])) ++differing;
  }
  if (differing != 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Samples must differ in exactly one record; they differ in ",
        differing));
  }
  return absl::OkStatus();
}

// Conservative log ratio for "event more likely under the first sample".
double DirectionalEstimate(int64_t count, int64_t other_count, int64_t trials,
                           const AuditOptions& options) {
  const ConfidenceInterval mine =
      ClopperPearson(count, trials, options.confidence);
  const ConfidenceInterval other =
      ClopperPearson(other_count, trials, options.confidence);
  const double numerator = mine.lower - options.delta;
  if (numerator <= 0.0) return -kInf;
  return std::log(numerator / other.upper);
}

double PointEstimate(int64_t count, int64_t other_count) {
  if (count == 0 && other_count == 0) return -kInf;
  if (other_count == 0) return kInf;
  if (count == 0) return -kInf;
  return std::log(static_cast<double>(count) /
                  static_cast<double>(other_count));
}

}  // namespace

ConfidenceInterval ClopperPearson(int64_t successes, int64_t trials,
                                  double confidence) {
  const double tail = (1.0 - confidence) / 2.0;
  const auto x = static_cast<double>(successes);
  const auto n = static_cast<double>(trials);
  ConfidenceInterval ci;
  ci.lower = successes == 0
                 ? 0.0
                 : boost::math::ibeta_inv(x, n - x + 1.0, tail);
  ci.upper = successes == trials
                 ? 1.0
                 : boost::math::ibeta_inv(x + 1.0, n - x, 1.0 - tail);
  return ci;
}

absl::StatusOr<AuditResult> AuditDp(const Mechanism& mechanism,
                                    const LabeledSample& sample,
                                    const LabeledSample& neighbor,
                                    const std::vector<AuditEvent>& events,
                                    const AuditOptions& options,
                                    NoiseSource& noise) {
  if (auto status = CheckNeighbors(sample, neighbor); !status.ok()) {
    return status;
  }
  if (options.trials < kMinTrials) {
    return absl::InvalidArgumentError(
        absl::StrCat("An audit needs at least ", kMinTrials, " trials"));
  }
  if (events.empty()) {
    return absl::InvalidArgumentError("An audit needs at least one event");
  }
  if (!(options.confidence > 0.0 && options.confidence < 1.0) ||
      !(options.delta >= 0.0 && options.delta < 1.0)) {
    return absl::InvalidArgumentError("Invalid confidence or delta");
  }

  // Trials on each side get independent streams derived from one master.
  const uint64_t master = static_cast<uint64_t>(noise.Uniform() * 0x1.0p62);
  const int workers = static_cast<int>(
      std::clamp<int64_t>(options.workers, 1, options.trials));
  std::vector<std::vector<int64_t>> counts_by_worker(
      workers, std::vector<int64_t>(events.size(), 0));
  std::vector<std::vector<int64_t>> neighbor_counts_by_worker = counts_by_worker;
  const auto run = [&](int w) {
    std::vector<int64_t>& c = counts_by_worker[w];
    std::vector<int64_t>& nc = neighbor_counts_by_worker[w];
    for (int64_t t = w; t < options.trials; t += workers) {
      NoiseSource side_a = NoiseSource::Derive(master, 2 * t);
      NoiseSource side_b = NoiseSource::Derive(master, 2 * t + 1);
      const DiscreteOutput out_a = mechanism(sample, side_a);
      const DiscreteOutput out_b = mechanism(neighbor, side_b);
      for (size_t e = 0; e < events.size(); ++e) {
        if (events[e].contains(out_a)) ++c[e];
        if (events[e].contains(out_b)) ++nc[e];
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(run, w);
  run(0);
  for (std::thread& t : pool) t.join();
  std::vector<int64_t> counts(events.size(), 0);
  std::vector<int64_t> neighbor_counts(events.size(), 0);
  for (int w = 0; w < workers; ++w) {
    for (size_t e = 0; e < events.size(); ++e) {
      counts[e] += counts_by_worker[w][e];
      neighbor_counts[e] += neighbor_counts_by_worker[w][e];
    }
  }

  AuditResult result;
  result.trials = options.trials;
  result.eps_hat = -kInf;
  result.eps_point = -kInf;
  for (size_t e = 0; e < events.size(); ++e) {
    EventEstimate estimate;
    estimate.name = events[e].name;
    estimate.count = counts[e];
    estimate.neighbor_count = neighbor_counts[e];
    const auto significant = [&](int64_t c) {
      return ClopperPearson(c, options.trials, options.confidence).lower >
             options.delta;
    };
    estimate.diverged =
        (neighbor_counts[e] == 0 && significant(counts[e])) ||
        (counts[e] == 0 && significant(neighbor_counts[e]));
    if (estimate.diverged) {
      estimate.eps_hat = kInf;
    } else {
      estimate.eps_hat = std::max(
          DirectionalEstimate(counts[e], neighbor_counts[e], options.trials,
                              options),
          DirectionalEstimate(neighbor_counts[e], counts[e], options.trials,
                              options));
    }
    estimate.eps_point = std::max(PointEstimate(counts[e], neighbor_counts[e]),
                                  PointEstimate(neighbor_counts[e], counts[e]));
    if (estimate.eps_hat > result.eps_hat) {
      result.eps_hat = estimate.eps_hat;
      result.worst_event = estimate.name;
    }
    if (counts[e] > 0 && neighbor_counts[e] > 0) {
      result.eps_point = std::max(result.eps_point, estimate.eps_point);
    }
    result.diverged = result.diverged || estimate.diverged;
    result.events.push_back(std::move(estimate));
  }
  return result;
}

}  // namespace private_prediction
