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

#ifndef PRIVATE_PREDICTION_HARNESS_CONFIG_H_
#define PRIVATE_PREDICTION_HARNESS_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"

namespace private_prediction {

enum class Mode { kOblivious, kHalfspace, kStochasticBaseline };

std::string_view ToString(Mode mode);

// Replacements for planner outputs, for runs far below the asymptotic
// regime. Unset fields keep the closed-form values.
struct PlanOverrides {
  std::optional<double> epsilon_bt;
  std::optional<double> delta_bt;
  std::optional<double> beta_bt;
  std::optional<double> alpha_bt;
  // Block size m.
  std::optional<int64_t> block_size;
  std::optional<int64_t> top_budget;
};

struct AdversaryConfig {
  // window, uniform, csv, stochastic, bisection or boundary_probe. Empty
  // selects window for oblivious runs, boundary_probe for halfspaces and
  // stochastic for the baseline.
  std::string kind;
  // window: grid points uniform on [center - half_width, center + half_width].
  std::optional<int64_t> center;
  std::optional<int64_t> half_width;
  // csv: query list, one point per row.
  std::string path;
  // boundary_probe: distance from the estimated boundary; defaults to
  // 2 * alpha * diameter of the data box.
  std::optional<double> probe_distance;
  // Offline: the list is disclosed to analysis tooling.
  bool disclose = false;
};

// Pass/fail gates evaluated over all trials. A trial passes the Top gate
// when it was not aborted and top_count <= max_top_count.
struct GateConfig {
  std::optional<int64_t> max_top_count;
  double min_top_fraction = 1.0;
  // Ensemble error on held-out points <= 4 * top_count * alpha + slack.
  std::optional<double> accuracy_slack;
  double min_accuracy_fraction = 1.0;
};

struct AuditConfig {
  int64_t trials = 200000;
  double confidence = 0.95;
  // Label prefixes up to this length are events, with "first Top at j".
  int64_t prefix_length = 4;
  // Noise multiplier of the miscalibrated variant.
  double broken_multiplier = 0.5;
  double ci_slack = 0.3;
};

struct ExperimentConfig {
  Mode mode = Mode::kOblivious;
  int64_t rounds = 1024;
  // Ambient dimension for halfspaces. Oblivious runs plan with the class's
  // VC dimension instead.
  int dimension = 1;
  // Enumerated class JSON; thresholds on {1..domain_size} when empty.
  std::string class_file;
  int64_t domain_size = 1000;
  // Threshold target; defaults to the middle of the domain.
  std::optional<int64_t> target_threshold;
  // Enumerated class target row.
  int64_t target_row = 0;
  // Halfspace target (a_1, ..., a_d, w); random per trial when empty.
  std::vector<double> target_weights;
  double alpha = 0.1;
  double beta = 0.05;
  double epsilon = 1.0;
  double delta = 1e-6;
  // delta' of advanced composition; defaults to delta.
  std::optional<double> delta_prime;
  int64_t trials = 10;
  uint64_t seed = 1;
  std::string output_dir = "runs";
  // Multiplies the hidden constant of the block size formula.
  double block_size_constant = 1.0;
  PlanOverrides overrides;
  AdversaryConfig adversary;
  GateConfig gates;
  AuditConfig audit;
  // Fresh points for held-out errors.
  int64_t holdout = 10000;
  // Sphere points added to the halfspace candidate sets.
  int64_t sphere_samples = 64;
  // wall_ms stays 0 unless set, so reruns give identical CSVs.
  bool record_wall_time = false;
};

// Parses and validates a JSON config. Unknown keys are errors.
absl::StatusOr<ExperimentConfig> ParseExperimentConfig(const std::string& json);
absl::StatusOr<ExperimentConfig> LoadExperimentConfig(const std::string& path);

absl::Status ValidateExperimentConfig(const ExperimentConfig& config);

// Canonical JSON: every field but output_dir, sorted keys, no whitespace.
std::string CanonicalJson(const ExperimentConfig& config);

// Hex SHA-256 of CanonicalJson().
std::string ConfigDigest(const ExperimentConfig& config);

// Hex SHA-256 of arbitrary bytes.
std::string Sha256Hex(const std::string& bytes);

}  // namespace private_prediction

#endif  // PRIVATE_PREDICTION_HARNESS_CONFIG_H_
