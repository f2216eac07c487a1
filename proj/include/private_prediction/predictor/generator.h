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

#ifndef PRIVATE_PREDICTION_PREDICTOR_GENERATOR_H_
#define PRIVATE_PREDICTION_PREDICTOR_GENERATOR_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "absl/status/statusor.h"
#include "private_prediction/concepts/concept_class.h"
#include "private_prediction/concepts/hypothesis.h"
#include "private_prediction/concepts/version_space.h"
#include "private_prediction/core/types.h"
#include "private_prediction/geometry/depth.h"
#include "private_prediction/geometry/feasible_subspace.h"
#include "private_prediction/predictor/transcript.h"

namespace private_prediction {

// Effect of one hard query on a generator.
struct HardQueryUpdate {
  // Oblivious: the constraint emptied the version space and was dropped.
  bool fallback = false;
  // Halfspace: the query hyperplane already contained the feasible subspace.
  bool redundant = false;
  // Halfspace: feasible subspace dimension afterwards; -1 otherwise.
  int dimension = -1;
  friend bool operator==(const HardQueryUpdate&,
                         const HardQueryUpdate&) = default;
};

// Maps (blocks S_1..S_k, hard queries) to one hypothesis per block. The
// output depends only on the blocks and the hard queries added so far.
class HypothesisGenerator {
 public:
  virtual ~HypothesisGenerator() = default;

  virtual int64_t num_blocks() const = 0;

  // f_1, ..., f_k under the current hard queries.
  virtual absl::StatusOr<std::vector<Hypothesis>> Generate() = 0;

  virtual absl::StatusOr<HardQueryUpdate> AddHardQuery(
      const TranscriptEntry& entry) = 0;

  // Same blocks, no hard queries.
  virtual std::unique_ptr<HypothesisGenerator> Fresh() const = 0;

  // Blocks whose latest hypothesis is a degenerate constant.
  virtual int64_t degenerate_blocks() const { return 0; }
};

// ERM over the base class restricted to the hard queries' (x, label) pairs.
// A constraint that would empty the restricted class is dropped and flagged.
class ObliviousGenerator final : public HypothesisGenerator {
 public:
  // Fails for halfspace classes (no ERM oracle) and for empty blocks.
  static absl::StatusOr<std::unique_ptr<ObliviousGenerator>> Create(
      ConceptClass concept_class, std::vector<LabeledSample> blocks);

  int64_t num_blocks() const override;
  absl::StatusOr<std::vector<Hypothesis>> Generate() override;
  absl::StatusOr<HardQueryUpdate> AddHardQuery(
      const TranscriptEntry& entry) override;
  std::unique_ptr<HypothesisGenerator> Fresh() const override;

  const VersionSpace& version_space() const { return version_space_; }

 private:
  struct Blocks {
    std::vector<LabeledSample> samples;
    // Thresholds only.
    std::vector<ThresholdErmSolver> solvers;
  };

  ObliviousGenerator(ConceptClass concept_class,
                     std::shared_ptr<const Blocks> blocks)
      : version_space_(std::move(concept_class)), blocks_(std::move(blocks)) {}

  VersionSpace version_space_;
  std::shared_ptr<const Blocks> blocks_;
};

// Per block, a point of (approximately) maximal cdepth inside the subspace
// of hypotheses lying on every hard query's boundary.
class HalfspaceGenerator final : public HypothesisGenerator {
 public:
  // Fails unless every block is nonempty with points in R^dimension.
  static absl::StatusOr<std::unique_ptr<HalfspaceGenerator>> Create(
      int dimension, std::vector<LabeledSample> blocks,
      CandidateOptions options = {});

  int64_t num_blocks() const override;
  absl::StatusOr<std::vector<Hypothesis>> Generate() override;
  absl::StatusOr<HardQueryUpdate> AddHardQuery(
      const TranscriptEntry& entry) override;
  std::unique_ptr<HypothesisGenerator> Fresh() const override;
  int64_t degenerate_blocks() const override { return degenerate_blocks_; }

  const FeasibleSubspace& subspace() const { return subspace_; }
  // Hyperplane normals of the hard queries, in order.
  const std::vector<Eigen::VectorXd>& hyperplanes() const {
    return hyperplanes_;
  }
  // Per block cdepth of the latest hypotheses.
  const std::vector<int64_t>& last_cdepths() const { return last_cdepths_; }
  int64_t block_size(int64_t block) const;

 private:
  struct Blocks {
    int dimension;
    CandidateOptions options;
    std::vector<DepthProfile> profiles;
  };

  HalfspaceGenerator(std::shared_ptr<const Blocks> blocks)
      : blocks_(std::move(blocks)),
        subspace_(FeasibleSubspace::Full(blocks_->dimension + 1)) {}

  std::shared_ptr<const Blocks> blocks_;
  FeasibleSubspace subspace_;
  std::vector<Eigen::VectorXd> hyperplanes_;
  std::vector<int64_t> last_cdepths_;
  int64_t degenerate_blocks_ = 0;
};

}  // namespace private_prediction

#endif  // PRIVATE_PREDICTION_PREDICTOR_GENERATOR_H_
