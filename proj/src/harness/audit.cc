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

#include "private_prediction/harness/audit.h"

#include <atomic>
#include <cmath>
#include <memory>
#include <string>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "private_prediction/adversaries/adversary.h"
#include "private_prediction/base/status_macros.h"
#include "private_prediction/core/distribution.h"
#include "private_prediction/core/noise_source.h"
#include "private_prediction/harness/experiment.h"
#include "private_prediction/predictor/predictor.h"

namespace private_prediction {
namespace {

constexpr uint64_t kSampleStream = 0;
constexpr uint64_t kQueryStream = 1;
constexpr uint64_t kAuditStream = 2;

absl::StatusOr<AuditResult> AuditVariant(const RunConfig& base,
                                         double noise_multiplier,
                                         const LabeledSample& sample,
                                         const LabeledSample& neighbor,
                                         const std::vector<Point>& queries,
                                         const ExperimentConfig& config,
                                         PrivacyCost budget, int workers,
                                         uint64_t seed) {
  RunConfig run = base;
  run.noise_multiplier = noise_multiplier;
  const int64_t prefix_length = config.audit.prefix_length;
  std::atomic<bool> failed{false};
  const Mechanism mechanism = [&](const LabeledSample& s,
                                  NoiseSource& noise) -> DiscreteOutput {
    FixedListAdversary adversary = FixedListAdversary::Oblivious(queries);
    absl::StatusOr<RunReport> report = RunPredictor(run, s, adversary, noise);
    if (!report.ok()) {
      failed = true;
      return {};
    }
    std::vector<Label> labels;
    for (const TranscriptEntry& e : report->transcript) labels.push_back(e.label);
    absl::StatusOr<DiscreteOutput> out =
        AuditOutput(report->top_rounds, labels, prefix_length);
    if (!out.ok()) {
      failed = true;
      return {};
    }
    return *std::move(out);
  };
  AuditOptions options;
  options.trials = config.audit.trials;
  options.confidence = config.audit.confidence;
  options.delta = budget.delta;
  options.workers = workers;
  NoiseSource noise(seed);
  PP_ASSIGN_OR_RETURN(
      AuditResult result,
      AuditDp(mechanism, sample, neighbor,
              AuditEvents(config.rounds, prefix_length), options, noise));
  if (failed) {
    // Rerun once to surface the underlying error.
    FixedListAdversary adversary = FixedListAdversary::Oblivious(queries);
    NoiseSource probe(seed);
    PP_RETURN_IF_ERROR(RunPredictor(run, sample, adversary, probe).status());
    return absl::InternalError("A predictor run failed during the audit");
  }
  return result;
}

}  // namespace

absl::StatusOr<DiscreteOutput> AuditOutput(const std::vector<int64_t>& top_rounds,
                                           const std::vector<Label>& labels,
                                           int64_t prefix_length) {
  if (prefix_length < 0) {
    return absl::InvalidArgumentError("prefix_length must be >= 0");
  }
  DiscreteOutput out;
  out.push_back(top_rounds.empty() ? 0 : top_rounds.front());
  for (int64_t i = 0; i < prefix_length; ++i) {
    out.push_back(i < static_cast<int64_t>(labels.size()) ? ToInt(labels[i]) : 0);
  }
  return out;
}

std::vector<AuditEvent> AuditEvents(int64_t rounds, int64_t prefix_length) {
  std::vector<AuditEvent> events;
  events.push_back({"no Top", [](const DiscreteOutput& o) {
                      return !o.empty() && o[0] == 0;
                    }});
  for (int64_t j = 1; j <= rounds; ++j) {
    events.push_back({absl::StrCat("first Top at ", j),
                      [j](const DiscreteOutput& o) {
                        return !o.empty() && o[0] == j;
                      }});
  }
  for (int64_t len = 1; len <= prefix_length; ++len) {
    for (int64_t bits = 0; bits < (int64_t{1} << len); ++bits) {
      std::vector<int64_t> prefix;
      for (int64_t i = 0; i < len; ++i) {
        prefix.push_back((bits >> (len - 1 - i)) & 1 ? 1 : -1);
      }
      events.push_back(
          {absl::StrCat("labels ", absl::StrJoin(prefix, " ")),
           [prefix](const DiscreteOutput& o) {
             if (o.size() < prefix.size() + 1) return false;
             for (size_t i = 0; i < prefix.size(); ++i) {
               if (o[i + 1] != prefix[i]) return false;
             }
             return true;
           }});
    }
  }
  return events;
}

absl::StatusOr<AuditReport> RunPrivacyAudit(const ExperimentConfig& config,
                                            int workers) {
  if (config.mode != Mode::kOblivious || !config.class_file.empty()) {
    return absl::InvalidArgumentError(
        "The audit runs the oblivious predictor on thresholds");
  }
  if (config.rounds < 1) {
    return absl::InvalidArgumentError("The audit needs T >= 1");
  }
  PP_ASSIGN_OR_RETURN(const ExperimentContext context, PrepareExperiment(config));
  if (!std::holds_alternative<ObliviousSpec>(context.run_config.generator)) {
    return absl::InvalidArgumentError("The audit needs an oblivious run");
  }
  const std::string& kind = context.config.adversary.kind;
  if (kind != "window" && kind != "uniform" && kind != "csv") {
    return absl::InvalidArgumentError(absl::StrCat(
        "The audit needs a fixed query list; adversary '", kind,
        "' is adaptive"));
  }

  AuditReport report;
  report.plan = context.plan;
  report.budget = AdvancedComposition(
      context.plan.top_budget,
      PrivacyCost{context.plan.epsilon_bt, context.plan.delta_bt},
      context.run_config.delta_prime);

  // Sample, queries and neighbor are fixed across trials.
  PP_ASSIGN_OR_RETURN(const DataDistribution dist,
                      TrialDistribution(context, config.seed));
  NoiseSource sample_noise = NoiseSource::Derive(config.seed, kSampleStream);
  PP_ASSIGN_OR_RETURN(const LabeledSample sample,
                      DrawSample(dist, context.plan.n, sample_noise));
  const double target = static_cast<double>(
      config.target_threshold.value_or((config.domain_size + 1) / 2));
  std::vector<LabeledExample> records(sample.begin(), sample.end());
  size_t nearest = 0;
  for (size_t i = 1; i < records.size(); ++i) {
    if (std::abs(records[i].x[0] - target) <
        std::abs(records[nearest].x[0] - target)) {
      nearest = i;
    }
  }
  report.changed_index = static_cast<int64_t>(nearest);
  records[nearest].y = Negate(records[nearest].y);
  PP_ASSIGN_OR_RETURN(const LabeledSample neighbor,
                      LabeledSample::Create(std::move(records)));

  NoiseSource query_noise = NoiseSource::Derive(config.seed, kQueryStream);
  if (kind == "csv") {
    report.queries = context.csv_queries;
  } else if (kind == "uniform") {
    report.queries =
        UniformGridQueries(config.domain_size, config.rounds, query_noise);
  } else {
    const int64_t center =
        config.adversary.center.value_or(static_cast<int64_t>(target));
    const int64_t half_width = config.adversary.half_width.value_or(
        std::max<int64_t>(1, config.domain_size / 20));
    report.queries = WindowGridQueries(config.domain_size, center, half_width,
                                       config.rounds, query_noise);
  }

  const uint64_t audit_seed = NoiseSource::DeriveSeed(config.seed, kAuditStream);
  PP_ASSIGN_OR_RETURN(
      report.correct,
      AuditVariant(context.run_config, 1.0, sample, neighbor, report.queries,
                   config, report.budget, workers, audit_seed));
  PP_ASSIGN_OR_RETURN(
      report.broken,
      AuditVariant(context.run_config, config.audit.broken_multiplier, sample,
                   neighbor, report.queries, config, report.budget, workers,
                   audit_seed));
  report.correct_pass =
      report.correct.eps_hat <= report.budget.epsilon + config.audit.ci_slack;
  report.broken_flagged = report.broken.eps_hat > report.budget.epsilon;
  return report;
}

}  // namespace private_prediction
