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

#ifndef PRIVATE_PREDICTION_CONCEPTS_CONCEPT_CLASS_H_
#define PRIVATE_PREDICTION_CONCEPTS_CONCEPT_CLASS_H_

#include <cstdint>
#include <memory>
#include <string>
#include <variant>

#include "absl/status/statusor.h"
#include "private_prediction/concepts/hypothesis.h"

namespace private_prediction {

// Thresholds c_t with integer t in [1, max_threshold]. Points are reals; the
// intended domain is the grid {1, ..., max_threshold}.
struct ThresholdClass {
  int64_t max_threshold = int64_t{1} << 20;
};

struct EnumeratedClass {
  std::shared_ptr<const PatternTable> table;
};

// Halfspaces over R^dimension, parameterized as in HalfspaceHypothesis.
struct HalfspaceClass {
  int dimension = 1;
};

using ConceptClass = std::variant<ThresholdClass, EnumeratedClass, HalfspaceClass>;

std::string ClassName(const ConceptClass& c);

// Exact for thresholds and enumerated classes (exhaustive shatter search);
// d + 1 for halfspaces in R^d.
absl::StatusOr<int> VcDimension(const ConceptClass& c);

// Parses {"points": [...], "patterns": [[+-1, ...], ...]}. A point is either
// a number or an array of numbers.
absl::StatusOr<EnumeratedClass> ParseEnumeratedClass(const std::string& json);
absl::StatusOr<EnumeratedClass> LoadEnumeratedClass(const std::string& path);

}  // namespace private_prediction

#endif  // PRIVATE_PREDICTION_CONCEPTS_CONCEPT_CLASS_H_
