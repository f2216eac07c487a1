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

#include "private_prediction/geometry/subsample_check.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "private_prediction/base/status_macros.h"

namespace private_prediction {

int64_t CdepthSubsampleBound(int d, double alpha, double beta) {
  const double dd = static_cast<double>(d);
  return static_cast<int64_t>(
      std::ceil((dd * std::log(dd / alpha) + std::log(1.0 / beta)) /
                (alpha * alpha)));
}

absl::StatusOr<SubsampleCheckReport> CdepthSubsampleCheck(
    const std::vector<Constraint>& constraints, int64_t m, int64_t trials,
    double alpha, double beta, NoiseSource& noise,
    const SubsampleCheckOptions& options) {
  if (constraints.empty()) {
    return absl::InvalidArgumentError("The constraint set is empty");
  }
  if (!(alpha > 0.0 && alpha <= 1.0) || !(beta > 0.0 && beta < 1.0)) {
    return absl::InvalidArgumentError("alpha must be in (0, 1], beta in (0, 1)");
  }
  if (trials < 1) {
    return absl::InvalidArgumentError("At least one trial is required");
  }
  const auto n = static_cast<int64_t>(constraints.size());
  const int ambient = static_cast<int>(constraints.front().normal.size());
  const int d = ambient - 1;
  const int64_t bound = CdepthSubsampleBound(std::max(d, 1), alpha, beta);
  if (m < bound) {
    return absl::FailedPreconditionError(absl::StrCat(
        "Subsample size ", m, " is below the required ", bound,
        " for d=", d, ", alpha=", alpha, ", beta=", beta));
  }
  if (m > n) {
    return absl::InvalidArgumentError(
        absl::StrCat("Subsample size ", m, " exceeds the set size ", n));
  }
  PP_ASSIGN_OR_RETURN(DepthProfile full, DepthProfile::Create(constraints));

  const std::vector<Eigen::VectorXd> candidates =
      SphereSample(ambient, options.sphere_points);
  const size_t num_candidates = candidates.size();
  // satisfied[c * n + i]: constraint i holds at candidate c.
  std::vector<uint8_t> satisfied(num_candidates * static_cast<size_t>(n));
  std::vector<int64_t> full_depths(num_candidates, 0);
  for (size_t c = 0; c < num_candidates; ++c) {
    for (int64_t i = 0; i < n; ++i) {
      const bool ok =
          constraints[static_cast<size_t>(i)].normal.dot(candidates[c]) >=
          -kDepthTolerance;
      satisfied[c * static_cast<size_t>(n) + static_cast<size_t>(i)] = ok;
      full_depths[c] += ok;
    }
  }
  const auto argmax = [&](const std::vector<int64_t>& depths) {
    return static_cast<size_t>(
        std::max_element(depths.begin(), depths.end()) - depths.begin());
  };

  std::vector<size_t> fixed_probes;
  const int64_t stride =
      std::max<int64_t>(1, static_cast<int64_t>(num_candidates) /
                               std::max<int64_t>(options.probes, 1));
  for (size_t c = 0; c < num_candidates &&
                     static_cast<int64_t>(fixed_probes.size()) < options.probes;
       c += static_cast<size_t>(stride)) {
    fixed_probes.push_back(c);
  }
  fixed_probes.push_back(argmax(full_depths));

  SubsampleCheckReport report;
  report.trials = trials;
  report.slack = options.slack >= 0.0
                     ? options.slack
                     : 2.0 * std::sqrt(beta * (1.0 - beta) /
                                       static_cast<double>(trials));

  std::vector<int64_t> full_cdepth(num_candidates, -1);
  const auto cdepth_full = [&](size_t c) -> absl::StatusOr<int64_t> {
    if (full_cdepth[c] < 0) {
      PP_ASSIGN_OR_RETURN(const CdepthResult r,
                          CdepthWithDepths(full_depths[c], candidates[c],
                                           candidates, full_depths,
                                           options.cdepth));
      report.indeterminate += r.indeterminate;
      full_cdepth[c] = r.value;
    }
    return full_cdepth[c];
  };

  std::vector<size_t> order(static_cast<size_t>(n));
  std::vector<int64_t> sub_depths(num_candidates);
  for (int64_t t = 0; t < trials; ++t) {
    std::iota(order.begin(), order.end(), size_t{0});
    for (int64_t i = 0; i < m; ++i) {
      const auto j = static_cast<size_t>(i) +
                     noise.UniformIndex(static_cast<uint64_t>(n - i));
      std::swap(order[static_cast<size_t>(i)], order[j]);
    }
    for (size_t c = 0; c < num_candidates; ++c) {
      const uint8_t* row = &satisfied[c * static_cast<size_t>(n)];
      int64_t depth = 0;
      for (int64_t i = 0; i < m; ++i) depth += row[order[static_cast<size_t>(i)]];
      sub_depths[c] = depth;
    }
    std::vector<size_t> probes = fixed_probes;
    probes.push_back(argmax(sub_depths));
    std::sort(probes.begin(), probes.end());
    probes.erase(std::unique(probes.begin(), probes.end()), probes.end());

    bool violated = false;
    for (size_t c : probes) {
      PP_ASSIGN_OR_RETURN(const int64_t full_value, cdepth_full(c));
      PP_ASSIGN_OR_RETURN(const CdepthResult sub,
                          CdepthWithDepths(sub_depths[c], candidates[c],
                                           candidates, sub_depths,
                                           options.cdepth));
      report.indeterminate += sub.indeterminate;
      const double gap =
          std::abs(static_cast<double>(full_value) / static_cast<double>(n) -
                   static_cast<double>(sub.value) / static_cast<double>(m));
      report.max_gap = std::max(report.max_gap, gap);
      ++report.probe_checks;
      if (gap > alpha + 1e-12) {
        ++report.probe_violations;
        violated = true;
      }
    }
    if (violated) ++report.violating_trials;
  }
  report.trial_violation_fraction = static_cast<double>(report.violating_trials) /
                                    static_cast<double>(trials);
  report.probe_violation_fraction =
      report.probe_checks == 0
          ? 0.0
          : static_cast<double>(report.probe_violations) /
                static_cast<double>(report.probe_checks);
  report.pass = report.trial_violation_fraction <= beta + report.slack;
  return report;
}

}  // namespace private_prediction
