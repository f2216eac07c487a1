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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "nlohmann/json.hpp"

namespace {

namespace fs = std::filesystem;

struct Invocation {
  int exit_code = -1;
  std::string out;
};

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Runs the CLI with `env` prepended to the command line.
Invocation Predict(const std::string& args, const std::string& env = "") {
  const fs::path out = fs::path(::testing::TempDir()) / "predict_stdout.txt";
  const std::string command = env + " " + PREDICT_BIN + " " + args + " > " +
                              out.string() + " 2>/dev/null";
  const int status = std::system(command.c_str());
  Invocation result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = ReadFile(out);
  return result;
}

fs::path WriteConfig(const std::string& name, const std::string& text) {
  const fs::path path = fs::path(::testing::TempDir()) / name;
  std::ofstream(path) << text;
  return path;
}

constexpr char kSmallRun[] = R"({
  "T": 64, "domain_size": 200, "trials": 2, "seed": 3, "holdout": 500,
  "overrides": {"eps_bt": 8.0, "delta_bt": 1e-3, "beta_bt": 0.05,
                "alpha_bt": 0.3, "block_size": 10},
  "adversary": {"kind": "window", "center": 90, "half_width": 15}
})";

std::string Digest(const Invocation& run) {
  return nlohmann::json::parse(run.out).at("digest").get<std::string>();
}

TEST(PredictCliTest, PlanPrintsClosedForms) {
  const Invocation run = Predict(
      "plan --mode oblivious --d 1 --T 1024 --alpha 0.1 --beta 0.1 --eps 1 "
      "--delta 1e-6");
  ASSERT_EQ(run.exit_code, 0);
  const auto doc = nlohmann::json::parse(run.out);
  EXPECT_EQ(doc.at("k").get<int64_t>(), 28230);
  EXPECT_EQ(doc.at("m").get<int64_t>(), 1295048);
  const Invocation halfspace = Predict(
      "plan --mode halfspace --d 2 --T 1024 --alpha 0.1 --beta 0.1 --eps 1 "
      "--delta 1e-6");
  ASSERT_EQ(halfspace.exit_code, 0);
  EXPECT_EQ(nlohmann::json::parse(halfspace.out).at("alpha_bt").get<double>(),
            0.025);
}

TEST(PredictCliTest, PlanRejectsBadInputs) {
  EXPECT_NE(Predict("plan --mode oblivious --alpha 3").exit_code, 0);
  EXPECT_NE(Predict("plan --mode sideways").exit_code, 0);
}

TEST(PredictCliTest, RunWritesReportsAndHonorsSeedPrecedence) {
  const fs::path config = WriteConfig("small_run.json", kSmallRun);
  const fs::path out = fs::path(::testing::TempDir()) / "cli_runs";
  fs::remove_all(out);
  const std::string base =
      "run --config " + config.string() + " --out " + out.string();

  const Invocation plain = Predict(base);
  ASSERT_EQ(plain.exit_code, 0);
  const fs::path dir = out / Digest(plain);
  EXPECT_TRUE(fs::exists(dir / "aggregate.csv"));
  int reports = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    reports += entry.path().extension() == ".json";
  }
  EXPECT_EQ(reports, 2);

  const Invocation env_seed = Predict(base, "PREDICT_SEED=9");
  const Invocation flag_seed = Predict(base + " --seed 9");
  const Invocation both = Predict(base + " --seed 9", "PREDICT_SEED=5");
  ASSERT_EQ(env_seed.exit_code, 0);
  EXPECT_NE(Digest(env_seed), Digest(plain));
  EXPECT_EQ(Digest(env_seed), Digest(flag_seed));
  EXPECT_EQ(Digest(both), Digest(flag_seed));
  EXPECT_EQ(ReadFile(out / Digest(both) / "aggregate.csv"),
            ReadFile(out / Digest(flag_seed) / "aggregate.csv"));
}

TEST(PredictCliTest, FailingGateGivesNonzeroExit) {
  std::string text = kSmallRun;
  text.insert(text.rfind('}'), R"(, "gates": {"accuracy_slack": -1.0})");
  const fs::path config = WriteConfig("gated_run.json", text);
  const fs::path out = fs::path(::testing::TempDir()) / "cli_gated";
  const Invocation run =
      Predict("run --config " + config.string() + " --out " + out.string());
  EXPECT_EQ(run.exit_code, 1);
  EXPECT_FALSE(nlohmann::json::parse(run.out).at("pass").get<bool>());
}

TEST(PredictCliTest, ErrorsGiveDiagnosticExit) {
  EXPECT_EQ(Predict("run --config /nonexistent.json").exit_code, 2);
  const fs::path bad = WriteConfig("bad.json", R"({"T": 8, "rounds": 8})");
  EXPECT_EQ(Predict("run --config " + bad.string()).exit_code, 2);
  const fs::path halfspace =
      WriteConfig("halfspace_audit.json", R"({"mode": "halfspace", "d": 2})");
  EXPECT_EQ(Predict("audit --config " + halfspace.string()).exit_code, 2);
  EXPECT_NE(Predict("").exit_code, 0);
}

}  // namespace
