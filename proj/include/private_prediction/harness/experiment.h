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

#ifndef PRIVATE_PREDICTION_HARNESS_EXPERIMENT_H_
#define PRIVATE_PREDICTION_HARNESS_EXPERIMENT_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "private_prediction/adversaries/adversary.h"
#include "private_prediction/concepts/concept_class.h"
#include "private_prediction/core/distribution.h"
#include "private_prediction/harness/config.h"
#include "private_prediction/harness/planner.h"
#include "private_prediction/predictor/predictor.h"

namespace private_prediction {

inline constexpr char kAggregateHeader[] =
    "seed,top_count,max_block_error,final_eps,final_delta,"
    "wrong_prediction_count,fallback_count,wall_ms";

// One row of aggregate.csv.
struct TrialMetrics {
  uint64_t seed = 0;
  int64_t top_count = 0;
  // Largest held-out error among the final per-block hypotheses.
  double max_block_error = 0.0;
  double final_eps = 0.0;
  double final_delta = 0.0;
  // Rounds whose released label differs from the target's.
  int64_t wrong_prediction_count = 0;
  int64_t fallback_count = 0;
  int64_t wall_ms = 0;
  friend bool operator==(const TrialMetrics&, const TrialMetrics&) = default;
};

struct TrialResult {
  int64_t index = 0;
  TrialMetrics metrics;
  RunReport report;
  // Held-out error of the final ensemble's majority vote (ties to +1).
  double ensemble_error = 0.0;
  // The fixed query list, when the adversary has one.
  std::vector<Point> query_list;
};

// Everything shared by the trials of one experiment.
struct ExperimentContext {
  ExperimentConfig config;
  std::string digest;
  ConceptClass concept_class;
  int vc_dimension = 1;
  PlanResult plan;
  RunConfig run_config;
  std::vector<Point> csv_queries;
};

// Loads the class, plans the sample and resolves the run configuration.
absl::StatusOr<ExperimentContext> PrepareExperiment(
    const ExperimentConfig& config);

// Seed of trial `index`.
uint64_t TrialSeed(const ExperimentConfig& config, int64_t index);

// Data distribution of a trial; the target may depend on the trial seed.
absl::StatusOr<DataDistribution> TrialDistribution(
    const ExperimentContext& context, uint64_t trial_seed);

// Runs one trial. Deterministic in (config, index).
absl::StatusOr<TrialResult> RunTrial(const ExperimentContext& context,
                                     int64_t index);

struct GateOutcome {
  bool configured = false;
  double top_fraction = 1.0;
  double accuracy_fraction = 1.0;
  bool pass = true;
};

struct GateInput {
  int64_t top_count = 0;
  bool aborted = false;
  double ensemble_error = 0.0;
};

GateInput ToGateInput(const TrialResult& trial);

// A trial passes the Top gate when it was not aborted and stayed within
// max_top_count, and the accuracy gate when its ensemble error is at most
// 4 * top_count * alpha + accuracy_slack.
GateOutcome EvaluateGates(const ExperimentConfig& config,
                          const std::vector<GateInput>& trials);

struct RunOptions {
  int workers = 1;
  // Write <out>/<digest>/<seed>.json and aggregate.csv.
  bool write_files = true;
  // Called from worker threads, once per trial; must be thread safe.
  std::function<void(const TrialResult&)> observer;
};

struct ExperimentSummary {
  std::string digest;
  std::string directory;
  PlanResult plan;
  std::vector<TrialMetrics> rows;
  GateOutcome gates;
};

absl::StatusOr<ExperimentSummary> RunExperiment(const ExperimentConfig& config,
                                                const RunOptions& options);

// Rows in trial order under kAggregateHeader; doubles in round-trip form.
std::string AggregateCsv(const std::vector<TrialMetrics>& rows);
absl::StatusOr<std::vector<TrialMetrics>> ParseAggregateCsv(
    const std::string& text);

}  // namespace private_prediction

#endif  // PRIVATE_PREDICTION_HARNESS_EXPERIMENT_H_
