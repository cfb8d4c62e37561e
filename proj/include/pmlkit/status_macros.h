// Copyright 2026 The pmlkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PMLKIT_STATUS_MACROS_H_
#define PMLKIT_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define PMLKIT_CONCAT_INNER_(a, b) a##b
#define PMLKIT_CONCAT_(a, b) PMLKIT_CONCAT_INNER_(a, b)

#define RETURN_IF_ERROR(expr)                  \
  do {                                         \
    const absl::Status _pmlkit_status = (expr); \
    if (!_pmlkit_status.ok()) {                \
      return _pmlkit_status;                   \
    }                                          \
  } while (false)

#define PMLKIT_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, rexpr) \
  auto tmp = (rexpr);                                  \
  if (!tmp.ok()) {                                     \
    return tmp.status();                               \
  }                                                    \
  lhs = std::move(tmp).value()

// Evaluates `rexpr` (an absl::StatusOr<T>), returning its status on error
// and otherwise move-assigning the value into `lhs`.
#define ASSIGN_OR_RETURN(lhs, rexpr) \
  PMLKIT_ASSIGN_OR_RETURN_IMPL_(     \
      PMLKIT_CONCAT_(_pmlkit_statusor_, __LINE__), lhs, rexpr)

#endif  // PMLKIT_STATUS_MACROS_H_
