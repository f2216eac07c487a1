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

#include "private_prediction/harness/experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <thread>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "private_prediction/base/status_macros.h"
#include "private_prediction/concepts/hypothesis.h"

namespace private_prediction {
namespace {

// Stream indices under a trial seed.
constexpr uint64_t kDataStream = 0;
constexpr uint64_t kAdversaryStream = 1;
constexpr uint64_t kPredictorStream = 2;
constexpr uint64_t kHoldoutStream = 3;
constexpr uint64_t kTargetStream = 4;

bool IsThresholds(const ExperimentContext& c) {
  return std::holds_alternative<ThresholdClass>(c.concept_class);
}

bool IsEnumerated(const ExperimentContext& c) {
  return std::holds_alternative<EnumeratedClass>(c.concept_class);
}

std::string DefaultAdversaryKind(Mode mode) {
  switch (mode) {
    case Mode::kOblivious:
      return "window";
    case Mode::kHalfspace:
      return "boundary_probe";
    case Mode::kStochasticBaseline:
      return "stochastic";
  }
  return "uniform";
}

int64_t ThresholdTarget(const ExperimentConfig& c) {
  return c.target_threshold.value_or((c.domain_size + 1) / 2);
}

absl::StatusOr<std::unique_ptr<Adversary>> MakeAdversary(
    const ExperimentContext& context, const DataDistribution& dist,
    uint64_t seed, std::vector<Point>& list) {
  const ExperimentConfig& c = context.config;
  const std::string& kind = c.adversary.kind;
  NoiseSource noise(seed);
  const auto fixed = [&](std::vector<Point> queries)
      -> std::unique_ptr<Adversary> {
    list = queries;
    if (c.adversary.disclose) {
      return std::make_unique<FixedListAdversary>(
          FixedListAdversary::Offline(std::move(queries)));
    }
    return std::make_unique<FixedListAdversary>(
        FixedListAdversary::Oblivious(std::move(queries)));
  };
  if (kind == "window") {
    const int64_t center = c.adversary.center.value_or(ThresholdTarget(c));
    const int64_t half_width = c.adversary.half_width.value_or(
        std::max<int64_t>(1, c.domain_size / 20));
    return fixed(WindowGridQueries(c.domain_size, center, half_width,
                                   c.rounds, noise));
  }
  if (kind == "uniform") {
    if (IsThresholds(context)) {
      return fixed(UniformGridQueries(c.domain_size, c.rounds, noise));
    }
    if (IsEnumerated(context)) {
      const auto& points =
          std::get<EnumeratedClass>(context.concept_class).table->points();
      std::vector<Point> queries;
      for (int64_t j = 0; j < c.rounds; ++j) {
        queries.push_back(points[noise.UniformIndex(points.size())]);
      }
      return fixed(std::move(queries));
    }
    const std::vector<double> lower(c.dimension, -1.0);
    const std::vector<double> upper(c.dimension, 1.0);
    return fixed(BoxQueries(lower, upper, c.rounds, noise));
  }
  if (kind == "csv") return fixed(context.csv_queries);
  if (kind == "stochastic") {
    return std::make_unique<StochasticAdversary>(dist, seed);
  }
  if (kind == "bisection") {
    PP_ASSIGN_OR_RETURN(BisectionAdversary a,
                        BisectionAdversary::Create(1, c.domain_size));
    return std::make_unique<BisectionAdversary>(std::move(a));
  }
  // boundary_probe
  BoundaryProbeOptions options;
  options.lower.assign(c.dimension, -1.0);
  options.upper.assign(c.dimension, 1.0);
  options.distance = c.adversary.probe_distance.value_or(
      DefaultProbeDistance(c.alpha, options.lower, options.upper));
  PP_ASSIGN_OR_RETURN(BoundaryProbeAdversary a,
                      BoundaryProbeAdversary::Create(options, seed));
  return std::make_unique<BoundaryProbeAdversary>(std::move(a));
}

struct HoldoutErrors {
  double max_block = 0.0;
  double ensemble = 0.0;
};

absl::StatusOr<HoldoutErrors> ComputeHoldoutErrors(
    const std::vector<Hypothesis>& hypotheses, const LabeledSample& holdout) {
  HoldoutErrors out;
  const auto n = static_cast<double>(holdout.size());
  const bool thresholds =
      std::all_of(hypotheses.begin(), hypotheses.end(), [](const Hypothesis& h) {
        return std::holds_alternative<ThresholdHypothesis>(h);
      });
  if (thresholds && holdout.dimension() == 1) {
    // Sorted holdout with prefix label counts gives each threshold's
    // mistakes by one binary search.
    std::vector<std::pair<double, Label>> points;
    for (const LabeledExample& r : holdout) points.push_back({r.x[0], r.y});
    std::sort(points.begin(), points.end());
    std::vector<double> xs;
    std::vector<int64_t> pos_before = {0};
    std::vector<int64_t> neg_before = {0};
    for (const auto& [x, y] : points) {
      xs.push_back(x);
      pos_before.push_back(pos_before.back() + (y == Label::kPositive));
      neg_before.push_back(neg_before.back() + (y == Label::kNegative));
    }
    std::vector<double> ts;
    for (const Hypothesis& h : hypotheses) {
      const auto t = static_cast<double>(std::get<ThresholdHypothesis>(h).threshold);
      ts.push_back(t);
      const size_t i = std::lower_bound(xs.begin(), xs.end(), t) - xs.begin();
      const int64_t mistakes = pos_before[i] + (neg_before.back() - neg_before[i]);
      out.max_block = std::max(out.max_block, mistakes / n);
    }
    std::sort(ts.begin(), ts.end());
    int64_t wrong = 0;
    for (const auto& [x, y] : points) {
      const size_t votes = std::upper_bound(ts.begin(), ts.end(), x) - ts.begin();
      const Label majority =
          2 * votes >= ts.size() ? Label::kPositive : Label::kNegative;
      wrong += majority != y;
    }
    out.ensemble = wrong / n;
    return out;
  }
  std::vector<int64_t> positives(holdout.size(), 0);
  for (const Hypothesis& h : hypotheses) {
    int64_t mistakes = 0;
    for (size_t i = 0; i < holdout.size(); ++i) {
      PP_ASSIGN_OR_RETURN(const Label label, Evaluate(h, holdout[i].x));
      mistakes += label != holdout[i].y;
      positives[i] += label == Label::kPositive;
    }
    out.max_block = std::max(out.max_block, mistakes / n);
  }
  int64_t wrong = 0;
  for (size_t i = 0; i < holdout.size(); ++i) {
    const Label majority = 2 * positives[i] >= static_cast<int64_t>(hypotheses.size())
                               ? Label::kPositive
                               : Label::kNegative;
    wrong += majority != holdout[i].y;
  }
  out.ensemble = wrong / n;
  return out;
}

std::string FormatDouble(double v) { return absl::StrFormat("%.17g", v); }

}  // namespace

absl::StatusOr<ExperimentContext> PrepareExperiment(
    const ExperimentConfig& config) {
  PP_RETURN_IF_ERROR(ValidateExperimentConfig(config));
  ExperimentContext context;
  context.config = config;
  if (context.config.adversary.kind.empty()) {
    context.config.adversary.kind = DefaultAdversaryKind(config.mode);
  }
  const ExperimentConfig& c = context.config;
  context.digest = ConfigDigest(c);

  if (c.mode == Mode::kHalfspace) {
    context.concept_class = HalfspaceClass{c.dimension};
    context.vc_dimension = c.dimension + 1;
  } else if (!c.class_file.empty()) {
    PP_ASSIGN_OR_RETURN(EnumeratedClass enumerated,
                        LoadEnumeratedClass(c.class_file));
    if (c.target_row < 0 ||
        c.target_row >= enumerated.table->num_hypotheses()) {
      return absl::InvalidArgumentError(
          absl::StrCat("target_row ", c.target_row, " is not a class row"));
    }
    context.concept_class = std::move(enumerated);
    PP_ASSIGN_OR_RETURN(context.vc_dimension,
                        VcDimension(context.concept_class));
    context.vc_dimension = std::max(context.vc_dimension, 1);
  } else {
    context.concept_class = ThresholdClass{c.domain_size};
    context.vc_dimension = 1;
  }

  const std::string& kind = c.adversary.kind;
  const bool halfspace = c.mode == Mode::kHalfspace;
  if ((kind == "window" || kind == "bisection") && !IsThresholds(context)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Adversary '", kind, "' needs the threshold class"));
  }
  if (kind == "boundary_probe" && !halfspace) {
    return absl::InvalidArgumentError(
        "Adversary 'boundary_probe' needs halfspace mode");
  }
  if (kind == "csv") {
    PP_ASSIGN_OR_RETURN(context.csv_queries, LoadQueryCsv(c.adversary.path));
  }

  PP_ASSIGN_OR_RETURN(context.plan, PlanExperiment(c, context.vc_dimension));
  RunConfig& run = context.run_config;
  if (halfspace) {
    HalfspaceSpec spec;
    spec.dimension = c.dimension;
    spec.candidates.sphere_samples = c.sphere_samples;
    run.generator = spec;
  } else {
    run.generator = ObliviousSpec{context.concept_class};
  }
  run.rounds = c.rounds;
  run.epsilon_bt = context.plan.epsilon_bt;
  run.delta_bt = context.plan.delta_bt;
  run.beta_bt = context.plan.beta_bt;
  run.top_budget = context.plan.top_budget;
  run.delta_prime = c.delta_prime.value_or(c.delta);
  return context;
}

uint64_t TrialSeed(const ExperimentConfig& config, int64_t index) {
  return NoiseSource::DeriveSeed(config.seed, static_cast<uint64_t>(index));
}

absl::StatusOr<DataDistribution> TrialDistribution(
    const ExperimentContext& context, uint64_t trial_seed) {
  const ExperimentConfig& c = context.config;
  if (IsThresholds(context)) {
    const auto t = static_cast<double>(ThresholdTarget(c));
    return DataDistribution::Create(
        GridSampler{c.domain_size}, {}, [t](const Point& x) {
          return x[0] >= t ? Label::kPositive : Label::kNegative;
        });
  }
  if (IsEnumerated(context)) {
    const auto table = std::get<EnumeratedClass>(context.concept_class).table;
    std::vector<PointMass> masses;
    for (const Point& p : table->points()) masses.push_back({p, 1.0});
    const int64_t row = c.target_row;
    return DataDistribution::Create(
        std::nullopt, std::move(masses), [table, row](const Point& x) {
          const auto column = table->ColumnOf(x);
          return column.has_value() ? table->patterns()[row][*column]
                                    : Label::kNegative;
        });
  }
  std::vector<double> weights = c.target_weights;
  if (weights.empty()) {
    NoiseSource noise = NoiseSource::Derive(trial_seed, kTargetStream);
    double norm = 0.0;
    for (int i = 0; i < c.dimension; ++i) {
      weights.push_back(noise.StandardNormal());
      norm += weights.back() * weights.back();
    }
    norm = std::sqrt(norm);
    for (double& w : weights) w /= norm;
    weights.push_back(noise.Uniform() - 0.5);
  }
  const int d = c.dimension;
  return DataDistribution::Create(
      BoxSampler{std::vector<double>(d, -1.0), std::vector<double>(d, 1.0)},
      {}, [weights, d](const Point& x) {
        double s = -weights[d];
        for (int i = 0; i < d; ++i) s += weights[i] * x[i];
        return LabelFromSign(s);
      });
}

absl::StatusOr<TrialResult> RunTrial(const ExperimentContext& context,
                                     int64_t index) {
  const auto start = std::chrono::steady_clock::now();
  const ExperimentConfig& c = context.config;
  TrialResult result;
  result.index = index;
  const uint64_t seed = TrialSeed(c, index);
  PP_ASSIGN_OR_RETURN(const DataDistribution dist,
                      TrialDistribution(context, seed));
  NoiseSource data_noise = NoiseSource::Derive(seed, kDataStream);
  PP_ASSIGN_OR_RETURN(const LabeledSample sample,
                      DrawSample(dist, context.plan.n, data_noise));
  PP_ASSIGN_OR_RETURN(
      std::unique_ptr<Adversary> adversary,
      MakeAdversary(context, dist,
                    NoiseSource::DeriveSeed(seed, kAdversaryStream),
                    result.query_list));
  NoiseSource noise = NoiseSource::Derive(seed, kPredictorStream);
  PP_ASSIGN_OR_RETURN(result.report, RunPredictor(context.run_config, sample,
                                                  *adversary, noise));
  NoiseSource holdout_noise = NoiseSource::Derive(seed, kHoldoutStream);
  PP_ASSIGN_OR_RETURN(const LabeledSample holdout,
                      DrawSample(dist, c.holdout, holdout_noise));
  PP_ASSIGN_OR_RETURN(
      const HoldoutErrors errors,
      ComputeHoldoutErrors(result.report.final_hypotheses, holdout));
  result.ensemble_error = errors.ensemble;

  TrialMetrics& m = result.metrics;
  m.seed = seed;
  m.top_count = result.report.top_count;
  m.max_block_error = errors.max_block;
  m.final_eps = result.report.total.epsilon;
  m.final_delta = result.report.total.delta;
  for (const TranscriptEntry& e : result.report.transcript) {
    m.wrong_prediction_count += e.label != dist.Target(e.x);
  }
  m.fallback_count = result.report.fallback_count;
  if (c.record_wall_time) {
    m.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  }
  return result;
}

GateInput ToGateInput(const TrialResult& trial) {
  return GateInput{trial.report.top_count, trial.report.aborted,
                   trial.ensemble_error};
}

GateOutcome EvaluateGates(const ExperimentConfig& config,
                          const std::vector<GateInput>& trials) {
  GateOutcome out;
  const GateConfig& g = config.gates;
  out.configured = g.max_top_count.has_value() || g.accuracy_slack.has_value();
  if (trials.empty()) return out;
  const auto n = static_cast<double>(trials.size());
  if (g.max_top_count.has_value()) {
    int64_t ok = 0;
    for (const GateInput& t : trials) {
      ok += !t.aborted && t.top_count <= *g.max_top_count;
    }
    out.top_fraction = ok / n;
    out.pass = out.pass && out.top_fraction >= g.min_top_fraction;
  }
  if (g.accuracy_slack.has_value()) {
    int64_t ok = 0;
    for (const GateInput& t : trials) {
      ok += t.ensemble_error <=
            4.0 * static_cast<double>(t.top_count) * config.alpha +
                *g.accuracy_slack;
    }
    out.accuracy_fraction = ok / n;
    out.pass = out.pass && out.accuracy_fraction >= g.min_accuracy_fraction;
  }
  return out;
}

absl::StatusOr<ExperimentSummary> RunExperiment(const ExperimentConfig& config,
                                                const RunOptions& options) {
  PP_ASSIGN_OR_RETURN(const ExperimentContext context,
                      PrepareExperiment(config));
  ExperimentSummary summary;
  summary.digest = context.digest;
  summary.plan = context.plan;
  const std::filesystem::path dir =
      std::filesystem::path(config.output_dir) / context.digest;
  summary.directory = dir.string();
  if (options.write_files) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
      return absl::InternalError(absl::StrCat("Cannot create ", dir.string(),
                                              ": ", ec.message()));
    }
  }

  const int64_t trials = config.trials;
  std::vector<TrialMetrics> rows(trials);
  std::vector<GateInput> gate_inputs(trials);
  std::vector<absl::Status> errors(trials);
  std::atomic<int64_t> next{0};
  const auto worker = [&]() {
    for (int64_t i = next++; i < trials; i = next++) {
      absl::StatusOr<TrialResult> r = RunTrial(context, i);
      if (!r.ok()) {
        errors[i] = r.status();
        continue;
      }
      if (options.write_files) {
        const std::filesystem::path file =
            dir / absl::StrCat(r->metrics.seed, ".json");
        std::ofstream out(file);
        out << RunReportJson(r->report, r->metrics.seed, context.digest) << "\n";
        if (!out) {
          errors[i] = absl::InternalError(
              absl::StrCat("Cannot write ", file.string()));
          continue;
        }
      }
      if (options.observer) options.observer(*r);
      rows[i] = r->metrics;
      gate_inputs[i] = ToGateInput(*r);
    }
  };
  const int workers = static_cast<int>(
      std::clamp<int64_t>(options.workers, 1, trials));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (int64_t i = 0; i < trials; ++i) {
    if (!errors[i].ok()) {
      return absl::Status(errors[i].code(),
                          absl::StrCat("Trial ", i, ": ", errors[i].message()));
    }
  }

  summary.rows = std::move(rows);
  summary.gates = EvaluateGates(context.config, gate_inputs);
  if (options.write_files) {
    const std::filesystem::path file = dir / "aggregate.csv";
    std::ofstream out(file);
    out << AggregateCsv(summary.rows);
    if (!out) {
      return absl::InternalError(absl::StrCat("Cannot write ", file.string()));
    }
  }
  return summary;
}

std::string AggregateCsv(const std::vector<TrialMetrics>& rows) {
  std::string out = absl::StrCat(kAggregateHeader, "\n");
  for (const TrialMetrics& r : rows) {
    absl::StrAppend(&out, r.seed, ",", r.top_count, ",",
                    FormatDouble(r.max_block_error), ",",
                    FormatDouble(r.final_eps), ",",
                    FormatDouble(r.final_delta), ",", r.wrong_prediction_count,
                    ",", r.fallback_count, ",", r.wall_ms, "\n");
  }
  return out;
}

absl::StatusOr<std::vector<TrialMetrics>> ParseAggregateCsv(
    const std::string& text) {
  std::vector<std::string> lines =
      absl::StrSplit(text, '\n', absl::SkipEmpty());
  if (lines.empty() || lines.front() != kAggregateHeader) {
    return absl::InvalidArgumentError("Missing or unexpected CSV header");
  }
  std::vector<TrialMetrics> rows;
  for (size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string> f = absl::StrSplit(lines[i], ',');
    TrialMetrics r;
    if (f.size() != 8 || !absl::SimpleAtoi(f[0], &r.seed) ||
        !absl::SimpleAtoi(f[1], &r.top_count) ||
        !absl::SimpleAtod(f[2], &r.max_block_error) ||
        !absl::SimpleAtod(f[3], &r.final_eps) ||
        !absl::SimpleAtod(f[4], &r.final_delta) ||
        !absl::SimpleAtoi(f[5], &r.wrong_prediction_count) ||
        !absl::SimpleAtoi(f[6], &r.fallback_count) ||
        !absl::SimpleAtoi(f[7], &r.wall_ms)) {
      return absl::InvalidArgumentError(
          absl::StrCat("Malformed CSV row ", i, ": ", lines[i]));
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace private_prediction
