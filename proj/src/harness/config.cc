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

#include "private_prediction/harness/config.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"
#include "absl/strings/str_join.h"
#include "nlohmann/json.hpp"
#include "openssl/evp.h"
#include "private_prediction/base/status_macros.h"

namespace private_prediction {
namespace {

using json = nlohmann::json;

absl::Status CheckKeys(const json& object, absl::string_view where,
                       const std::set<std::string>& allowed) {
  if (!object.is_object()) {
    return absl::InvalidArgumentError(absl::StrCat(where, " must be an object"));
  }
  for (const auto& [key, value] : object.items()) {
    if (!allowed.contains(key)) {
      return absl::InvalidArgumentError(
          absl::StrCat("Unknown key '", key, "' in ", where));
    }
  }
  return absl::OkStatus();
}

template <typename T>
absl::Status Read(const json& object, const char* key, T& out) {
  if (!object.contains(key)) return absl::OkStatus();
  try {
    out = object.at(key).get<T>();
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("Bad value for '", key, "': ", e.what()));
  }
  return absl::OkStatus();
}

template <typename T>
absl::Status ReadOptional(const json& object, const char* key,
                          std::optional<T>& out) {
  if (!object.contains(key) || object.at(key).is_null()) return absl::OkStatus();
  T value{};
  PP_RETURN_IF_ERROR(Read(object, key, value));
  out = value;
  return absl::OkStatus();
}

absl::StatusOr<Mode> ParseMode(const std::string& s) {
  if (s == "oblivious") return Mode::kOblivious;
  if (s == "halfspace") return Mode::kHalfspace;
  if (s == "stochastic-baseline") return Mode::kStochasticBaseline;
  return absl::InvalidArgumentError(absl::StrCat(
      "Unknown mode '", s,
      "'; expected oblivious, halfspace or stochastic-baseline"));
}

template <typename T>
json OptionalJson(const std::optional<T>& v) {
  return v.has_value() ? json(*v) : json(nullptr);
}

}  // namespace

std::string_view ToString(Mode mode) {
  switch (mode) {
    case Mode::kOblivious:
      return "oblivious";
    case Mode::kHalfspace:
      return "halfspace";
    case Mode::kStochasticBaseline:
      return "stochastic-baseline";
  }
  return "unknown";
}

absl::StatusOr<ExperimentConfig> ParseExperimentConfig(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("Config is not valid JSON: ", e.what()));
  }
  PP_RETURN_IF_ERROR(CheckKeys(
      doc, "config",
      {"mode", "T", "d", "class_file", "domain_size", "target_threshold",
       "target_row", "target_weights", "alpha", "beta", "epsilon", "delta",
       "delta_prime", "trials", "seed", "output_dir", "block_size_constant",
       "overrides", "adversary", "gates", "audit", "holdout", "sphere_samples",
       "record_wall_time"}));
  ExperimentConfig c;
  std::string mode = std::string(ToString(c.mode));
  PP_RETURN_IF_ERROR(Read(doc, "mode", mode));
  PP_ASSIGN_OR_RETURN(c.mode, ParseMode(mode));
  PP_RETURN_IF_ERROR(Read(doc, "T", c.rounds));
  PP_RETURN_IF_ERROR(Read(doc, "d", c.dimension));
  PP_RETURN_IF_ERROR(Read(doc, "class_file", c.class_file));
  PP_RETURN_IF_ERROR(Read(doc, "domain_size", c.domain_size));
  PP_RETURN_IF_ERROR(ReadOptional(doc, "target_threshold", c.target_threshold));
  PP_RETURN_IF_ERROR(Read(doc, "target_row", c.target_row));
  PP_RETURN_IF_ERROR(Read(doc, "target_weights", c.target_weights));
  PP_RETURN_IF_ERROR(Read(doc, "alpha", c.alpha));
  PP_RETURN_IF_ERROR(Read(doc, "beta", c.beta));
  PP_RETURN_IF_ERROR(Read(doc, "epsilon", c.epsilon));
  PP_RETURN_IF_ERROR(Read(doc, "delta", c.delta));
  PP_RETURN_IF_ERROR(ReadOptional(doc, "delta_prime", c.delta_prime));
  PP_RETURN_IF_ERROR(Read(doc, "trials", c.trials));
  PP_RETURN_IF_ERROR(Read(doc, "seed", c.seed));
  PP_RETURN_IF_ERROR(Read(doc, "output_dir", c.output_dir));
  PP_RETURN_IF_ERROR(Read(doc, "block_size_constant", c.block_size_constant));
  PP_RETURN_IF_ERROR(Read(doc, "holdout", c.holdout));
  PP_RETURN_IF_ERROR(Read(doc, "sphere_samples", c.sphere_samples));
  PP_RETURN_IF_ERROR(Read(doc, "record_wall_time", c.record_wall_time));

  if (doc.contains("overrides")) {
    const json& o = doc["overrides"];
    PP_RETURN_IF_ERROR(CheckKeys(o, "overrides",
                                 {"eps_bt", "delta_bt", "beta_bt", "alpha_bt",
                                  "block_size", "top_budget"}));
    PP_RETURN_IF_ERROR(ReadOptional(o, "eps_bt", c.overrides.epsilon_bt));
    PP_RETURN_IF_ERROR(ReadOptional(o, "delta_bt", c.overrides.delta_bt));
    PP_RETURN_IF_ERROR(ReadOptional(o, "beta_bt", c.overrides.beta_bt));
    PP_RETURN_IF_ERROR(ReadOptional(o, "alpha_bt", c.overrides.alpha_bt));
    PP_RETURN_IF_ERROR(ReadOptional(o, "block_size", c.overrides.block_size));
    PP_RETURN_IF_ERROR(ReadOptional(o, "top_budget", c.overrides.top_budget));
  }
  if (doc.contains("adversary")) {
    const json& a = doc["adversary"];
    PP_RETURN_IF_ERROR(CheckKeys(a, "adversary",
                                 {"kind", "center", "half_width", "path",
                                  "probe_distance", "disclose"}));
    PP_RETURN_IF_ERROR(Read(a, "kind", c.adversary.kind));
    PP_RETURN_IF_ERROR(ReadOptional(a, "center", c.adversary.center));
    PP_RETURN_IF_ERROR(ReadOptional(a, "half_width", c.adversary.half_width));
    PP_RETURN_IF_ERROR(Read(a, "path", c.adversary.path));
    PP_RETURN_IF_ERROR(
        ReadOptional(a, "probe_distance", c.adversary.probe_distance));
    PP_RETURN_IF_ERROR(Read(a, "disclose", c.adversary.disclose));
  }
  if (doc.contains("gates")) {
    const json& g = doc["gates"];
    PP_RETURN_IF_ERROR(CheckKeys(g, "gates",
                                 {"max_top_count", "min_top_fraction",
                                  "accuracy_slack", "min_accuracy_fraction"}));
    PP_RETURN_IF_ERROR(ReadOptional(g, "max_top_count", c.gates.max_top_count));
    PP_RETURN_IF_ERROR(Read(g, "min_top_fraction", c.gates.min_top_fraction));
    PP_RETURN_IF_ERROR(ReadOptional(g, "accuracy_slack", c.gates.accuracy_slack));
    PP_RETURN_IF_ERROR(
        Read(g, "min_accuracy_fraction", c.gates.min_accuracy_fraction));
  }
  if (doc.contains("audit")) {
    const json& a = doc["audit"];
    PP_RETURN_IF_ERROR(CheckKeys(a, "audit",
                                 {"trials", "confidence", "prefix_length",
                                  "broken_multiplier", "ci_slack"}));
    PP_RETURN_IF_ERROR(Read(a, "trials", c.audit.trials));
    PP_RETURN_IF_ERROR(Read(a, "confidence", c.audit.confidence));
    PP_RETURN_IF_ERROR(Read(a, "prefix_length", c.audit.prefix_length));
    PP_RETURN_IF_ERROR(Read(a, "broken_multiplier", c.audit.broken_multiplier));
    PP_RETURN_IF_ERROR(Read(a, "ci_slack", c.audit.ci_slack));
  }
  PP_RETURN_IF_ERROR(ValidateExperimentConfig(c));
  return c;
}

absl::StatusOr<ExperimentConfig> LoadExperimentConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("Cannot open ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseExperimentConfig(buffer.str());
}

absl::Status ValidateExperimentConfig(const ExperimentConfig& c) {
  std::vector<std::string> problems;
  const auto in_unit = [](double v) { return v > 0.0 && v < 1.0; };
  if (c.rounds < 0) problems.push_back("T must be >= 0");
  if (c.dimension < 1) problems.push_back("d must be >= 1");
  if (c.domain_size < 1) problems.push_back("domain_size must be >= 1");
  if (c.target_threshold.has_value() &&
      (*c.target_threshold < 1 || *c.target_threshold > c.domain_size)) {
    problems.push_back("target_threshold must lie in [1, domain_size]");
  }
  if (!c.target_weights.empty() &&
      c.target_weights.size() != static_cast<size_t>(c.dimension) + 1) {
    problems.push_back("target_weights must have d + 1 entries");
  }
  if (!in_unit(c.alpha)) problems.push_back("alpha must lie in (0, 1)");
  if (!in_unit(c.beta)) problems.push_back("beta must lie in (0, 1)");
  if (!(c.epsilon > 0.0) || !std::isfinite(c.epsilon)) {
    problems.push_back("epsilon must be positive");
  }
  if (!in_unit(c.delta)) problems.push_back("delta must lie in (0, 1)");
  if (c.delta_prime.has_value() && !in_unit(*c.delta_prime)) {
    problems.push_back("delta_prime must lie in (0, 1)");
  }
  if (c.trials < 1) problems.push_back("trials must be >= 1");
  if (!(c.block_size_constant > 0.0)) {
    problems.push_back("block_size_constant must be positive");
  }
  if (c.holdout < 1) problems.push_back("holdout must be >= 1");
  if (c.sphere_samples < 0) problems.push_back("sphere_samples must be >= 0");
  if (c.mode == Mode::kHalfspace && !c.class_file.empty()) {
    problems.push_back("class_file does not apply to halfspace mode");
  }
  static const std::set<std::string> kKinds = {
      "",        "window",    "uniform",       "csv",
      "stochastic", "bisection", "boundary_probe"};
  if (!kKinds.contains(c.adversary.kind)) {
    problems.push_back(absl::StrCat("Unknown adversary kind '",
                                    c.adversary.kind, "'"));
  }
  if (c.adversary.kind == "csv" && c.adversary.path.empty()) {
    problems.push_back("csv adversary needs a path");
  }
  if (c.adversary.half_width.has_value() && *c.adversary.half_width < 0) {
    problems.push_back("half_width must be >= 0");
  }
  if (c.gates.min_top_fraction < 0.0 || c.gates.min_top_fraction > 1.0 ||
      c.gates.min_accuracy_fraction < 0.0 ||
      c.gates.min_accuracy_fraction > 1.0) {
    problems.push_back("gate fractions must lie in [0, 1]");
  }
  if (c.audit.trials < 1 || c.audit.prefix_length < 0 ||
      !in_unit(c.audit.confidence) || !(c.audit.broken_multiplier > 0.0)) {
    problems.push_back("invalid audit settings");
  }
  if (!problems.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("Invalid config: ", absl::StrJoin(problems, "; ")));
  }
  return absl::OkStatus();
}

std::string CanonicalJson(const ExperimentConfig& c) {
  json doc;
  doc["mode"] = std::string(ToString(c.mode));
  doc["T"] = c.rounds;
  doc["d"] = c.dimension;
  doc["class_file"] = c.class_file;
  doc["domain_size"] = c.domain_size;
  doc["target_threshold"] = OptionalJson(c.target_threshold);
  doc["target_row"] = c.target_row;
  doc["target_weights"] = c.target_weights;
  doc["alpha"] = c.alpha;
  doc["beta"] = c.beta;
  doc["epsilon"] = c.epsilon;
  doc["delta"] = c.delta;
  doc["delta_prime"] = OptionalJson(c.delta_prime);
  doc["trials"] = c.trials;
  doc["seed"] = c.seed;
  doc["block_size_constant"] = c.block_size_constant;
  doc["holdout"] = c.holdout;
  doc["sphere_samples"] = c.sphere_samples;
  doc["record_wall_time"] = c.record_wall_time;
  doc["overrides"] = {
      {"eps_bt", OptionalJson(c.overrides.epsilon_bt)},
      {"delta_bt", OptionalJson(c.overrides.delta_bt)},
      {"beta_bt", OptionalJson(c.overrides.beta_bt)},
      {"alpha_bt", OptionalJson(c.overrides.alpha_bt)},
      {"block_size", OptionalJson(c.overrides.block_size)},
      {"top_budget", OptionalJson(c.overrides.top_budget)}};
  doc["adversary"] = {{"kind", c.adversary.kind},
                      {"center", OptionalJson(c.adversary.center)},
                      {"half_width", OptionalJson(c.adversary.half_width)},
                      {"path", c.adversary.path},
                      {"probe_distance", OptionalJson(c.adversary.probe_distance)},
                      {"disclose", c.adversary.disclose}};
  doc["gates"] = {{"max_top_count", OptionalJson(c.gates.max_top_count)},
                  {"min_top_fraction", c.gates.min_top_fraction},
                  {"accuracy_slack", OptionalJson(c.gates.accuracy_slack)},
                  {"min_accuracy_fraction", c.gates.min_accuracy_fraction}};
  doc["audit"] = {{"trials", c.audit.trials},
                  {"confidence", c.audit.confidence},
                  {"prefix_length", c.audit.prefix_length},
                  {"broken_multiplier", c.audit.broken_multiplier},
                  {"ci_slack", c.audit.ci_slack}};
  return doc.dump();
}

std::string Sha256Hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(),
             nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

std::string ConfigDigest(const ExperimentConfig& config) {
  return Sha256Hex(CanonicalJson(config));
}

}  // namespace private_prediction
