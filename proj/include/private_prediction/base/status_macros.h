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

#ifndef PRIVATE_PREDICTION_BASE_STATUS_MACROS_H_
#define PRIVATE_PREDICTION_BASE_STATUS_MACROS_H_

#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define PP_STATUS_CONCAT_INNER_(x, y) x##y
#define PP_STATUS_CONCAT_(x, y) PP_STATUS_CONCAT_INNER_(x, y)

// Evaluates an expression returning absl::Status and returns it from the
// enclosing function if it is not OK.
#define PP_RETURN_IF_ERROR(expr)             \
  do {                                       \
    const absl::Status pp_status_ = (expr);  \
    if (!pp_status_.ok()) return pp_status_; \
  } while (0)

// Evaluates an expression returning absl::StatusOr<T>. On success moves the
// value into `lhs`, otherwise returns the error status.
#define PP_ASSIGN_OR_RETURN(lhs, rexpr) \
  PP_ASSIGN_OR_RETURN_IMPL_(PP_STATUS_CONCAT_(pp_statusor_, __LINE__), lhs, rexpr)

#define PP_ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                              \
  if (!statusor.ok()) return statusor.status();         \
  lhs = std::move(statusor).value()

#endif  // PRIVATE_PREDICTION_BASE_STATUS_MACROS_H_
