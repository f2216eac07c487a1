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

#include "private_prediction/predictor/generator.h"

#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "private_prediction/base/status_macros.h"

namespace private_prediction {

absl::StatusOr<std::unique_ptr<ObliviousGenerator>> ObliviousGenerator::Create(
    ConceptClass concept_class, std::vector<LabeledSample> blocks) {
  if (std::holds_alternative<HalfspaceClass>(concept_class)) {
    return absl::InvalidArgumentError(
        "Halfspaces have no ERM oracle; use the halfspace generator");
  }
  if (blocks.empty()) {
    return absl::InvalidArgumentError("Generator needs at least one block");
  }
  auto shared = std::make_shared<Blocks>();
  for (size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].empty()) {
      return absl::InvalidArgumentError(absl::StrCat("Block ", i, " is empty"));
    }
    if (std::holds_alternative<ThresholdClass>(concept_class)) {
      PP_ASSIGN_OR_RETURN(ThresholdErmSolver solver,
                          ThresholdErmSolver::Create(blocks[i]));
      shared->solvers.push_back(std::move(solver));
    }
  }
  shared->samples = std::move(blocks);
  return std::unique_ptr<ObliviousGenerator>(
      new ObliviousGenerator(std::move(concept_class), std::move(shared)));
}

int64_t ObliviousGenerator::num_blocks() const {
  return static_cast<int64_t>(blocks_->samples.size());
}

absl::StatusOr<std::vector<Hypothesis>> ObliviousGenerator::Generate() {
  std::vector<Hypothesis> out;
  out.reserve(blocks_->samples.size());
  if (!blocks_->solvers.empty()) {
    const int64_t lo = version_space_.threshold_lower();
    const int64_t hi = version_space_.threshold_upper();
    if (lo > hi) {
      return absl::FailedPreconditionError("Version space is empty");
    }
    for (const ThresholdErmSolver& solver : blocks_->solvers) {
      out.push_back(ThresholdHypothesis{solver.Solve(lo, hi)});
    }
    return out;
  }
  for (const LabeledSample& block : blocks_->samples) {
    PP_ASSIGN_OR_RETURN(Hypothesis h, Erm(version_space_, block));
    out.push_back(std::move(h));
  }
  return out;
}

absl::StatusOr<HardQueryUpdate> ObliviousGenerator::AddHardQuery(
    const TranscriptEntry& entry) {
  PP_RETURN_IF_ERROR(version_space_.RestrictInPlace(entry.x, entry.label));
  HardQueryUpdate update;
  PP_ASSIGN_OR_RETURN(const bool empty, version_space_.IsEmpty());
  if (empty) {
    PP_RETURN_IF_ERROR(version_space_.DropLast());
    update.fallback = true;
  }
  return update;
}

std::unique_ptr<HypothesisGenerator> ObliviousGenerator::Fresh() const {
  return std::unique_ptr<HypothesisGenerator>(
      new ObliviousGenerator(version_space_.base(), blocks_));
}

absl::StatusOr<std::unique_ptr<HalfspaceGenerator>> HalfspaceGenerator::Create(
    int dimension, std::vector<LabeledSample> blocks,
    CandidateOptions options) {
  if (dimension < 1) {
    return absl::InvalidArgumentError("Halfspace dimension must be >= 1");
  }
  if (blocks.empty()) {
    return absl::InvalidArgumentError("Generator needs at least one block");
  }
  auto shared = std::make_shared<Blocks>();
  shared->dimension = dimension;
  shared->options = options;
  for (size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].empty()) {
      return absl::InvalidArgumentError(absl::StrCat("Block ", i, " is empty"));
    }
    if (blocks[i].dimension() != dimension) {
      return absl::InvalidArgumentError(
          absl::StrCat("Block ", i, " has dimension ", blocks[i].dimension(),
                       ", expected ", dimension));
    }
    std::vector<Constraint> constraints;
    constraints.reserve(blocks[i].size());
    for (const LabeledExample& r : blocks[i]) {
      constraints.push_back(ToConstraint(r.x, r.y));
    }
    PP_ASSIGN_OR_RETURN(DepthProfile profile,
                        DepthProfile::Create(std::move(constraints)));
    shared->profiles.push_back(std::move(profile));
  }
  return std::unique_ptr<HalfspaceGenerator>(
      new HalfspaceGenerator(std::move(shared)));
}

int64_t HalfspaceGenerator::num_blocks() const {
  return static_cast<int64_t>(blocks_->profiles.size());
}

int64_t HalfspaceGenerator::block_size(int64_t block) const {
  return blocks_->profiles[static_cast<size_t>(block)].size();
}

absl::StatusOr<std::vector<Hypothesis>> HalfspaceGenerator::Generate() {
  std::vector<Hypothesis> out;
  out.reserve(blocks_->profiles.size());
  last_cdepths_.clear();
  degenerate_blocks_ = 0;
  for (const DepthProfile& profile : blocks_->profiles) {
    PP_ASSIGN_OR_RETURN(const ArgmaxResult best,
                        ArgmaxCdepth(profile, subspace_, blocks_->options));
    last_cdepths_.push_back(best.cdepth);
    degenerate_blocks_ += best.degenerate;
    out.push_back(HalfspaceHypothesis{std::vector<double>(
        best.point.data(), best.point.data() + best.point.size())});
  }
  return out;
}

absl::StatusOr<HardQueryUpdate> HalfspaceGenerator::AddHardQuery(
    const TranscriptEntry& entry) {
  if (entry.x.dimension() != blocks_->dimension) {
    return absl::InvalidArgumentError(
        absl::StrCat("Hard query has dimension ", entry.x.dimension(),
                     ", expected ", blocks_->dimension));
  }
  const Eigen::VectorXd normal = QueryHyperplane(entry.x);
  PP_ASSIGN_OR_RETURN(FeasibleSubspace::IntersectResult result,
                      subspace_.Intersect(normal));
  subspace_ = std::move(result.subspace);
  hyperplanes_.push_back(normal);
  HardQueryUpdate update;
  update.redundant = result.redundant;
  update.dimension = subspace_.dimension();
  return update;
}

std::unique_ptr<HypothesisGenerator> HalfspaceGenerator::Fresh() const {
  return std::unique_ptr<HypothesisGenerator>(new HalfspaceGenerator(blocks_));
}

}  // namespace private_prediction
