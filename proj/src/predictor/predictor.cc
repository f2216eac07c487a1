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

#include "private_prediction/predictor/predictor.h"

#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "nlohmann/json.hpp"
#include "private_prediction/base/status_macros.h"
#include "private_prediction/core/distribution.h"

namespace private_prediction {

int64_t BlockCount(double epsilon_bt, int64_t rounds, double beta_bt) {
  const double k = (64.0 / epsilon_bt) *
                   (std::log(static_cast<double>(rounds) + 1.0) +
                    std::log(1.0 / beta_bt));
  return static_cast<int64_t>(std::ceil(k));
}

int64_t MinBlocksForGap(double epsilon_bt, double delta_bt) {
  if (!(epsilon_bt > 0.0) || !std::isfinite(epsilon_bt) ||
      !(delta_bt > 0.0 && delta_bt < 1.0)) {
    return 1;  // Rejected later by parameter validation.
  }
  const double gap = kVoteUpperThreshold - kVoteLowerThreshold;
  const double k = 12.0 *
                   (std::log(10.0 / epsilon_bt) + std::log(1.0 / delta_bt) + 1.0) /
                   (epsilon_bt * gap);
  auto blocks = std::max<int64_t>(1, static_cast<int64_t>(std::ceil(k)));
  // Guards the rounding of the division above.
  while (RequiredThresholdGap(epsilon_bt, delta_bt, blocks) > gap) ++blocks;
  while (blocks > 1 &&
         RequiredThresholdGap(epsilon_bt, delta_bt, blocks - 1) <= gap) {
    --blocks;
  }
  return blocks;
}

int64_t ResolveBlockCount(const RunConfig& config) {
  return std::max(BlockCount(config.epsilon_bt, config.rounds, config.beta_bt),
                  MinBlocksForGap(config.epsilon_bt, config.delta_bt));
}

int64_t DefaultObliviousTopBudget(int vc, int64_t rounds, double beta) {
  const double log_t = rounds > 1 ? std::log2(static_cast<double>(rounds)) : 0;
  const double v = 4.0 * (vc * log_t + std::log2(1.0 / beta));
  return std::max<int64_t>(1, static_cast<int64_t>(std::ceil(v)));
}

int64_t DefaultHalfspaceTopBudget(int dimension) { return dimension + 2; }

absl::StatusOr<GenericPredictor> GenericPredictor::Create(
    std::unique_ptr<HypothesisGenerator> generator,
    const PredictorParams& params, NoiseSource& noise) {
  if (generator == nullptr) {
    return absl::InvalidArgumentError("Predictor needs a generator");
  }
  if (params.rounds < 0) {
    return absl::InvalidArgumentError("Number of rounds must be >= 0");
  }
  if (params.top_budget < 1) {
    return absl::InvalidArgumentError("Top budget must be >= 1");
  }
  BTParams bt;
  bt.epsilon = params.epsilon_bt;
  bt.delta = params.delta_bt;
  bt.n = generator->num_blocks();
  bt.t_lower = kVoteLowerThreshold;
  bt.t_upper = kVoteUpperThreshold;
  bt.max_queries = std::max<int64_t>(params.rounds, 1);
  bt.noise_multiplier = params.noise_multiplier;
  PP_RETURN_IF_ERROR(ValidateBTParams(bt));
  GenericPredictor predictor(std::move(generator), params, bt);
  if (params.rounds >= 1) PP_RETURN_IF_ERROR(predictor.OpenInstance(noise));
  return predictor;
}

absl::Status GenericPredictor::OpenInstance(NoiseSource& noise) {
  PP_ASSIGN_OR_RETURN(BetweenThresholds bt,
                      BetweenThresholds::Create(bt_params_, noise));
  bt_.emplace(std::move(bt));
  ledger_.Append(PrivacyCost{params_.epsilon_bt, params_.delta_bt});
  ++instances_opened_;
  return absl::OkStatus();
}

absl::StatusOr<std::vector<Hypothesis>> GenericPredictor::CurrentHypotheses() {
  if (params_.memoize) {
    if (cached_for_ != hard_queries_.size()) {
      PP_ASSIGN_OR_RETURN(cached_, generator_->Generate());
      cached_for_ = hard_queries_.size();
      cached_degenerate_ = generator_->degenerate_blocks();
    }
    return cached_;
  }
  std::unique_ptr<HypothesisGenerator> replay = generator_->Fresh();
  for (const TranscriptEntry& entry : hard_queries_.entries()) {
    PP_RETURN_IF_ERROR(replay->AddHardQuery(entry).status());
  }
  PP_ASSIGN_OR_RETURN(std::vector<Hypothesis> hypotheses, replay->Generate());
  cached_degenerate_ = replay->degenerate_blocks();
  return hypotheses;
}

absl::StatusOr<TranscriptEntry> GenericPredictor::PredictRound(
    const Point& x, NoiseSource& noise) {
  if (rounds_played() >= params_.rounds) {
    return absl::FailedPreconditionError(
        absl::StrCat("All ", params_.rounds, " rounds have been played"));
  }
  if (budget_exhausted()) {
    return absl::ResourceExhaustedError(
        absl::StrCat("Top budget of ", params_.top_budget, " is spent"));
  }
  PP_ASSIGN_OR_RETURN(const std::vector<Hypothesis> hypotheses,
                      CurrentHypotheses());
  degenerate_rounds_ += cached_degenerate_ > 0;

  TranscriptEntry entry;
  entry.round = rounds_played() + 1;
  entry.x = x;
  PP_ASSIGN_OR_RETURN(entry.vote, VoteFraction(hypotheses, x));
  PP_ASSIGN_OR_RETURN(entry.outcome, bt_->Query(entry.vote, noise));
  switch (entry.outcome) {
    case BTOutcome::kLeft:
      entry.label = Label::kNegative;
      break;
    case BTOutcome::kRight:
      entry.label = Label::kPositive;
      break;
    case BTOutcome::kTop:
      entry.label = noise.UniformLabel();
      break;
  }
  transcript_.push_back(entry);
  if (entry.outcome == BTOutcome::kTop) {
    ++instances_halted_;
    PP_RETURN_IF_ERROR(hard_queries_.Append(entry));
    PP_ASSIGN_OR_RETURN(const HardQueryUpdate update,
                        generator_->AddHardQuery(entry));
    updates_.push_back(update);
    if (!budget_exhausted()) PP_RETURN_IF_ERROR(OpenInstance(noise));
  }
  return entry;
}

absl::StatusOr<int64_t> ResolveTopBudget(const RunConfig& config) {
  if (config.top_budget.has_value()) {
    if (*config.top_budget < 1) {
      return absl::InvalidArgumentError("Top budget must be >= 1");
    }
    return *config.top_budget;
  }
  if (const auto* h = std::get_if<HalfspaceSpec>(&config.generator)) {
    return DefaultHalfspaceTopBudget(h->dimension);
  }
  PP_ASSIGN_OR_RETURN(
      const int vc,
      VcDimension(std::get<ObliviousSpec>(config.generator).concept_class));
  return DefaultObliviousTopBudget(vc, config.rounds, config.beta_bt);
}

absl::StatusOr<RunReport> RunPredictorOnBlocks(
    const RunConfig& config, std::vector<LabeledSample> blocks,
    Adversary& adversary, NoiseSource& noise) {
  if (config.rounds < 0) {
    return absl::InvalidArgumentError("Number of rounds must be >= 0");
  }
  if (!(config.beta_bt > 0.0 && config.beta_bt < 1.0)) {
    return absl::InvalidArgumentError("beta_bt must lie in (0, 1)");
  }
  if (!(config.epsilon_bt > 0.0) || !std::isfinite(config.epsilon_bt)) {
    return absl::InvalidArgumentError("epsilon_bt must be positive");
  }
  const int64_t k = ResolveBlockCount(config);
  if (static_cast<int64_t>(blocks.size()) != k) {
    return absl::InvalidArgumentError(
        absl::StrCat("Got ", blocks.size(), " blocks; the parameters require k = ",
                     k));
  }
  for (const LabeledSample& b : blocks) {
    if (b.size() != blocks.front().size()) {
      return absl::InvalidArgumentError("Blocks must have equal sizes");
    }
  }
  PP_ASSIGN_OR_RETURN(const int64_t top_budget, ResolveTopBudget(config));

  RunReport report;
  report.num_blocks = k;
  report.block_size = static_cast<int64_t>(blocks.front().size());
  report.top_budget = top_budget;
  report.delta_prime = config.delta_prime;

  std::unique_ptr<HypothesisGenerator> generator;
  if (const auto* spec = std::get_if<ObliviousSpec>(&config.generator)) {
    PP_ASSIGN_OR_RETURN(generator, ObliviousGenerator::Create(
                                       spec->concept_class, std::move(blocks)));
  } else {
    const auto& halfspace = std::get<HalfspaceSpec>(config.generator);
    PP_ASSIGN_OR_RETURN(generator,
                        HalfspaceGenerator::Create(halfspace.dimension,
                                                   std::move(blocks),
                                                   halfspace.candidates));
  }

  PredictorParams params;
  params.epsilon_bt = config.epsilon_bt;
  params.delta_bt = config.delta_bt;
  params.rounds = config.rounds;
  params.top_budget = top_budget;
  params.noise_multiplier = config.noise_multiplier;
  params.memoize = config.memoize;
  PP_ASSIGN_OR_RETURN(GenericPredictor predictor,
                      GenericPredictor::Create(std::move(generator), params,
                                               noise));

  std::vector<PublicRecord> public_transcript;
  public_transcript.reserve(static_cast<size_t>(config.rounds));
  for (int64_t j = 0; j < config.rounds; ++j) {
    if (predictor.budget_exhausted()) {
      report.aborted = true;
      break;
    }
    PP_ASSIGN_OR_RETURN(const std::optional<Point> x,
                        adversary.NextQuery(public_transcript));
    if (!x.has_value()) {
      report.stream_ended = true;
      break;
    }
    PP_ASSIGN_OR_RETURN(const TranscriptEntry entry,
                        predictor.PredictRound(*x, noise));
    public_transcript.push_back(PublicRecord{entry.x, entry.label});
  }

  report.transcript = predictor.transcript();
  report.top_count = predictor.top_count();
  for (const TranscriptEntry& e : predictor.hard_queries().entries()) {
    report.top_rounds.push_back(e.round);
  }
  report.hard_query_updates = predictor.hard_query_updates();
  for (const HardQueryUpdate& u : report.hard_query_updates) {
    report.fallback_count += u.fallback;
  }
  report.degenerate_rounds = predictor.degenerate_rounds();
  report.ledger = predictor.ledger();
  PP_ASSIGN_OR_RETURN(report.total,
                      ComposeAdvanced(report.ledger, config.delta_prime));
  report.instances_opened = predictor.instances_opened();
  report.instances_halted = predictor.instances_halted();
  PP_ASSIGN_OR_RETURN(report.final_hypotheses, predictor.CurrentHypotheses());
  return report;
}

absl::StatusOr<RunReport> RunPredictor(const RunConfig& config,
                                       const LabeledSample& sample,
                                       Adversary& adversary,
                                       NoiseSource& noise) {
  if (!(config.epsilon_bt > 0.0) || !(config.beta_bt > 0.0 && config.beta_bt < 1.0)) {
    return absl::InvalidArgumentError(
        "epsilon_bt must be positive and beta_bt in (0, 1)");
  }
  const int64_t k = ResolveBlockCount(config);
  if (sample.empty() || sample.size() % static_cast<size_t>(k) != 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("Sample size ", sample.size(),
                     " is not a positive multiple of k = ", k));
  }
  PP_ASSIGN_OR_RETURN(std::vector<LabeledSample> blocks,
                      Partition(sample, k, noise));
  return RunPredictorOnBlocks(config, std::move(blocks), adversary, noise);
}

namespace {

nlohmann::ordered_json PointJson(const Point& x) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (double c : x.coordinates()) out.push_back(c);
  return out;
}

nlohmann::ordered_json HypothesisJson(const Hypothesis& h) {
  nlohmann::ordered_json out;
  if (const auto* t = std::get_if<ThresholdHypothesis>(&h)) {
    out["threshold"] = t->threshold;
  } else if (const auto* e = std::get_if<EnumeratedHypothesis>(&h)) {
    out["row"] = e->index;
  } else {
    out["weights"] = std::get<HalfspaceHypothesis>(h).weights;
  }
  return out;
}

}  // namespace

std::string RunReportJson(const RunReport& report, uint64_t seed,
                          const std::string& config_digest) {
  nlohmann::ordered_json doc;
  doc["seed"] = seed;
  doc["config_digest"] = config_digest;
  nlohmann::ordered_json rounds = nlohmann::ordered_json::array();
  for (const TranscriptEntry& e : report.transcript) {
    nlohmann::ordered_json r;
    r["round"] = e.round;
    r["x"] = PointJson(e.x);
    r["outcome"] = std::string(ToString(e.outcome));
    r["label"] = ToInt(e.label);
    r["vote"] = e.vote;
    rounds.push_back(std::move(r));
  }
  doc["rounds"] = std::move(rounds);
  doc["top_rounds"] = report.top_rounds;
  doc["top_count"] = report.top_count;
  doc["top_budget"] = report.top_budget;
  doc["aborted"] = report.aborted;
  doc["stream_ended"] = report.stream_ended;
  doc["eps_total"] = report.total.epsilon;
  doc["delta_total"] = report.total.delta;
  doc["delta_prime"] = report.delta_prime;
  doc["instances_opened"] = report.instances_opened;
  doc["instances_halted"] = report.instances_halted;
  nlohmann::ordered_json flags = nlohmann::ordered_json::array();
  nlohmann::ordered_json hard = nlohmann::ordered_json::array();
  for (size_t i = 0; i < report.hard_query_updates.size(); ++i) {
    const HardQueryUpdate& u = report.hard_query_updates[i];
    flags.push_back(u.fallback);
    nlohmann::ordered_json h;
    h["round"] = i < report.top_rounds.size() ? report.top_rounds[i] : 0;
    h["fallback"] = u.fallback;
    h["redundant"] = u.redundant;
    h["dimension"] = u.dimension;
    hard.push_back(std::move(h));
  }
  doc["fallback_flags"] = std::move(flags);
  doc["hard_queries"] = std::move(hard);
  doc["degenerate_rounds"] = report.degenerate_rounds;
  doc["num_blocks"] = report.num_blocks;
  doc["block_size"] = report.block_size;
  nlohmann::ordered_json hyps = nlohmann::ordered_json::array();
  for (const Hypothesis& h : report.final_hypotheses) {
    hyps.push_back(HypothesisJson(h));
  }
  doc["final_hypotheses"] = std::move(hyps);
  return doc.dump(2);
}

}  // namespace private_prediction
