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

#ifndef PRIVATE_PREDICTION_PREDICTOR_PREDICTOR_H_
#define PRIVATE_PREDICTION_PREDICTOR_PREDICTOR_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "private_prediction/adversaries/adversary.h"
#include "private_prediction/concepts/concept_class.h"
#include "private_prediction/core/noise_source.h"
#include "private_prediction/core/types.h"
#include "private_prediction/dp/accountant.h"
#include "private_prediction/dp/between_thresholds.h"
#include "private_prediction/geometry/depth.h"
#include "private_prediction/predictor/generator.h"
#include "private_prediction/predictor/transcript.h"

namespace private_prediction {

inline constexpr double kVoteLowerThreshold = 3.0 / 8.0;
inline constexpr double kVoteUpperThreshold = 5.0 / 8.0;

// k = ceil((64 / eps_bt) (ln(T + 1) + ln(1 / beta_bt))).
int64_t BlockCount(double epsilon_bt, int64_t rounds, double beta_bt);

// Smallest k for which an instance with these parameters meets the gap
// precondition at thresholds 3/8 and 5/8.
int64_t MinBlocksForGap(double epsilon_bt, double delta_bt);

// ceil(4 (vc log2 T + log2(1 / beta))), at least 1.
int64_t DefaultObliviousTopBudget(int vc, int64_t rounds, double beta);
// d + 2.
int64_t DefaultHalfspaceTopBudget(int dimension);

struct PredictorParams {
  double epsilon_bt = 0.0;
  double delta_bt = 0.0;
  // T; also the query cap of every BetweenThresholds instance.
  int64_t rounds = 0;
  // Largest number of Top rounds before the run stops.
  int64_t top_budget = 0;
  // Passed to every BetweenThresholds instance; 1 unless auditing.
  double noise_multiplier = 1.0;
  // Reuse hypotheses until the hard query set changes. Off recomputes them
  // from a fresh generator and the hard queries every round.
  bool memoize = true;
};

// Private prediction by subsample and aggregate: k hypotheses from a
// generator vote, BetweenThresholds turns the vote into L, R or Top, and each
// Top feeds the generator a hard query and restarts BetweenThresholds.
class GenericPredictor {
 public:
  // Opens the first BetweenThresholds instance when rounds >= 1.
  static absl::StatusOr<GenericPredictor> Create(
      std::unique_ptr<HypothesisGenerator> generator,
      const PredictorParams& params, NoiseSource& noise);

  GenericPredictor(GenericPredictor&&) = default;
  GenericPredictor& operator=(GenericPredictor&&) = default;

  // Answers one query. Fails with kFailedPrecondition after T rounds and
  // with kResourceExhausted once the Top budget is spent.
  absl::StatusOr<TranscriptEntry> PredictRound(const Point& x,
                                               NoiseSource& noise);

  // Hypotheses the next round would use.
  absl::StatusOr<std::vector<Hypothesis>> CurrentHypotheses();

  bool budget_exhausted() const { return hard_queries_.full(); }
  int64_t rounds_played() const {
    return static_cast<int64_t>(transcript_.size());
  }
  int64_t top_count() const { return hard_queries_.size(); }
  const std::vector<TranscriptEntry>& transcript() const { return transcript_; }
  const HardQuerySet& hard_queries() const { return hard_queries_; }
  const std::vector<HardQueryUpdate>& hard_query_updates() const {
    return updates_;
  }
  const PrivacyLedger& ledger() const { return ledger_; }
  int64_t instances_opened() const { return instances_opened_; }
  int64_t instances_halted() const { return instances_halted_; }
  // Rounds whose ensemble contained a degenerate hypothesis.
  int64_t degenerate_rounds() const { return degenerate_rounds_; }
  const HypothesisGenerator& generator() const { return *generator_; }
  const PredictorParams& params() const { return params_; }

 private:
  GenericPredictor(std::unique_ptr<HypothesisGenerator> generator,
                   const PredictorParams& params, BTParams bt_params)
      : generator_(std::move(generator)),
        params_(params),
        bt_params_(bt_params),
        hard_queries_(params.top_budget) {}

  absl::Status OpenInstance(NoiseSource& noise);

  std::unique_ptr<HypothesisGenerator> generator_;
  PredictorParams params_;
  BTParams bt_params_;
  std::optional<BetweenThresholds> bt_;
  HardQuerySet hard_queries_;
  std::vector<TranscriptEntry> transcript_;
  std::vector<HardQueryUpdate> updates_;
  PrivacyLedger ledger_;
  int64_t instances_opened_ = 0;
  int64_t instances_halted_ = 0;
  int64_t degenerate_rounds_ = 0;
  std::vector<Hypothesis> cached_;
  int64_t cached_for_ = -1;
  int64_t cached_degenerate_ = 0;
};

struct ObliviousSpec {
  ConceptClass concept_class;
};

struct HalfspaceSpec {
  int dimension = 2;
  CandidateOptions candidates;
};

struct RunConfig {
  std::variant<ObliviousSpec, HalfspaceSpec> generator;
  int64_t rounds = 0;
  double epsilon_bt = 0.0;
  double delta_bt = 0.0;
  double beta_bt = 0.0;
  // Defaults by generator kind when unset.
  std::optional<int64_t> top_budget;
  // delta' of advanced composition.
  double delta_prime = 1e-6;
  double noise_multiplier = 1.0;
  bool memoize = true;
};

// Top budget RunPredictor would use for `config`.
absl::StatusOr<int64_t> ResolveTopBudget(const RunConfig& config);

struct RunReport {
  std::vector<TranscriptEntry> transcript;
  int64_t top_count = 0;
  std::vector<int64_t> top_rounds;
  // One per Top round, in order.
  std::vector<HardQueryUpdate> hard_query_updates;
  int64_t fallback_count = 0;
  int64_t degenerate_rounds = 0;
  PrivacyLedger ledger;
  double delta_prime = 0.0;
  PrivacyCost total;
  int64_t instances_opened = 0;
  int64_t instances_halted = 0;
  int64_t top_budget = 0;
  // The Top budget ran out with rounds left.
  bool aborted = false;
  // The adversary ran out of queries before T rounds.
  bool stream_ended = false;
  int64_t num_blocks = 0;
  int64_t block_size = 0;
  std::vector<Hypothesis> final_hypotheses;
};

// max(BlockCount(...), MinBlocksForGap(...)) for the run.
int64_t ResolveBlockCount(const RunConfig& config);

// Partitions `sample` into k = ResolveBlockCount() blocks, builds the generator
// and answers up to T adversary queries. Fails before the first round when
// |sample| is not a positive multiple of k or the BetweenThresholds
// parameters are invalid.
absl::StatusOr<RunReport> RunPredictor(const RunConfig& config,
                                       const LabeledSample& sample,
                                       Adversary& adversary,
                                       NoiseSource& noise);

// Same, with the blocks given.
absl::StatusOr<RunReport> RunPredictorOnBlocks(
    const RunConfig& config, std::vector<LabeledSample> blocks,
    Adversary& adversary, NoiseSource& noise);

// JSON document with the seed, config digest, rounds, Top rounds, privacy
// totals, fallback flags and final hypotheses.
std::string RunReportJson(const RunReport& report, uint64_t seed,
                          const std::string& config_digest);

}  // namespace private_prediction

#endif  // PRIVATE_PREDICTION_PREDICTOR_PREDICTOR_H_
