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

// Command-line front end: run experiments, print parameter plans, audit.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "nlohmann/json.hpp"
#include "private_prediction/harness/audit.h"
#include "private_prediction/harness/config.h"
#include "private_prediction/harness/experiment.h"
#include "private_prediction/harness/planner.h"

namespace private_prediction {
namespace {

constexpr int kExitGateFailure = 1;
constexpr int kExitError = 2;

int Fail(const absl::Status& status) {
  std::cerr << "predict: " << status << "\n";
  return kExitError;
}

nlohmann::ordered_json PlanJson(const PlanResult& plan) {
  nlohmann::ordered_json out;
  out["k"] = plan.k;
  out["m"] = plan.m;
  out["N"] = plan.n;
  out["eps_bt"] = plan.epsilon_bt;
  out["delta_bt"] = plan.delta_bt;
  out["alpha_bt"] = plan.alpha_bt;
  out["beta_bt"] = plan.beta_bt;
  out["top_budget"] = plan.top_budget;
  out["required_gap"] = plan.required_gap;
  return out;
}

nlohmann::ordered_json AuditJson(const AuditResult& r) {
  nlohmann::ordered_json out;
  // JSON has no infinity; a diverged estimate is reported as null.
  out["eps_hat"] = std::isfinite(r.eps_hat) ? nlohmann::ordered_json(r.eps_hat)
                                            : nlohmann::ordered_json(nullptr);
  out["eps_point"] = std::isfinite(r.eps_point)
                         ? nlohmann::ordered_json(r.eps_point)
                         : nlohmann::ordered_json(nullptr);
  out["diverged"] = r.diverged;
  out["worst_event"] = r.worst_event;
  out["trials"] = r.trials;
  return out;
}

struct RunFlags {
  std::string config;
  std::optional<int64_t> trials;
  std::optional<uint64_t> seed;
  int workers = 1;
  std::optional<std::string> out;
};

int Run(const RunFlags& flags) {
  absl::StatusOr<ExperimentConfig> config = LoadExperimentConfig(flags.config);
  if (!config.ok()) return Fail(config.status());
  if (const char* env = std::getenv("PREDICT_SEED"); env != nullptr) {
    uint64_t seed = 0;
    if (!absl::SimpleAtoi(env, &seed)) {
      return Fail(absl::InvalidArgumentError(
          absl::StrCat("PREDICT_SEED is not an unsigned integer: ", env)));
    }
    config->seed = seed;
  }
  if (flags.seed.has_value()) config->seed = *flags.seed;
  if (flags.trials.has_value()) config->trials = *flags.trials;
  if (flags.out.has_value()) config->output_dir = *flags.out;
  if (absl::Status s = ValidateExperimentConfig(*config); !s.ok()) return Fail(s);

  std::mutex mu;
  RunOptions options;
  options.workers = flags.workers;
  options.observer = [&mu](const TrialResult& r) {
    std::lock_guard<std::mutex> lock(mu);
    std::cerr << "trial " << r.index << " seed " << r.metrics.seed << ": "
              << r.metrics.top_count << " Top, ensemble error "
              << r.ensemble_error << "\n";
  };
  absl::StatusOr<ExperimentSummary> summary = RunExperiment(*config, options);
  if (!summary.ok()) return Fail(summary.status());

  nlohmann::ordered_json out;
  out["digest"] = summary->digest;
  out["directory"] = summary->directory;
  out["plan"] = PlanJson(summary->plan);
  out["trials"] = summary->rows.size();
  out["gates_configured"] = summary->gates.configured;
  out["top_fraction"] = summary->gates.top_fraction;
  out["accuracy_fraction"] = summary->gates.accuracy_fraction;
  out["pass"] = summary->gates.pass;
  std::cout << out.dump(2) << "\n";
  return summary->gates.pass ? 0 : kExitGateFailure;
}

int Plan(const std::string& mode, const PlanInputs& inputs) {
  absl::StatusOr<PlanResult> plan = mode == "halfspace"
                                        ? PlanHalfspace(inputs)
                                        : PlanOblivious(inputs);
  if (!plan.ok()) return Fail(plan.status());
  std::cout << PlanJson(*plan).dump(2) << "\n";
  return 0;
}

int Audit(const std::string& path, int workers) {
  absl::StatusOr<ExperimentConfig> config = LoadExperimentConfig(path);
  if (!config.ok()) return Fail(config.status());
  absl::StatusOr<AuditReport> report = RunPrivacyAudit(*config, workers);
  if (!report.ok()) return Fail(report.status());
  nlohmann::ordered_json out;
  out["plan"] = PlanJson(report->plan);
  out["budget_eps"] = report->budget.epsilon;
  out["budget_delta"] = report->budget.delta;
  out["correct"] = AuditJson(report->correct);
  out["broken"] = AuditJson(report->broken);
  out["correct_pass"] = report->correct_pass;
  out["broken_flagged"] = report->broken_flagged;
  std::cout << out.dump(2) << "\n";
  return report->correct_pass && report->broken_flagged ? 0 : kExitGateFailure;
}

}  // namespace
}  // namespace private_prediction

int main(int argc, char** argv) {
  using namespace private_prediction;
  CLI::App app{"Private prediction experiments"};
  app.require_subcommand(1);

  RunFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "Run seeded trials from a config");
  run->add_option("--config", run_flags.config, "Config JSON")->required();
  run->add_option("--trials", run_flags.trials, "Number of trials");
  run->add_option("--seed", run_flags.seed,
                  "Master seed; overrides PREDICT_SEED and the config");
  run->add_option("--workers", run_flags.workers, "Worker threads")
      ->check(CLI::PositiveNumber);
  run->add_option("--out", run_flags.out, "Output directory");

  std::string mode = "oblivious";
  PlanInputs inputs;
  CLI::App* plan = app.add_subcommand("plan", "Print the parameter plan");
  plan->add_option("--mode", mode, "oblivious or halfspace")
      ->check(CLI::IsMember({"oblivious", "halfspace"}));
  plan->add_option("--d", inputs.d, "VC or ambient dimension");
  plan->add_option("--T", inputs.rounds, "Number of queries");
  plan->add_option("--alpha", inputs.alpha, "Target error");
  plan->add_option("--beta", inputs.beta, "Failure probability");
  plan->add_option("--eps", inputs.epsilon, "Privacy epsilon");
  plan->add_option("--delta", inputs.delta, "Privacy delta");
  plan->add_option("--block-constant", inputs.block_size_constant,
                   "Constant of the block size formula");

  std::string audit_config;
  int audit_workers = 1;
  CLI::App* audit = app.add_subcommand("audit", "Empirical privacy audit");
  audit->add_option("--config", audit_config, "Config JSON")->required();
  audit->add_option("--workers", audit_workers, "Worker threads")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);
  if (run->parsed()) return Run(run_flags);
  if (plan->parsed()) return Plan(mode, inputs);
  return Audit(audit_config, audit_workers);
}
