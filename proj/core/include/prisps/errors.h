// Copyright 2026 The PriSPS Authors
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

#ifndef PRISPS_ERRORS_H_
#define PRISPS_ERRORS_H_

#include <string_view>
#include <utility>

#include "absl/status/status.h"

namespace prisps {

// Errors carry a stable kind tag (e.g. "SchemaMismatch") as the message
// prefix, followed by ": " and a human-readable detail.
absl::Status MakeError(absl::StatusCode code, std::string_view kind,
                       std::string_view detail);

// Returns the kind tag of a non-OK status, or an empty view.
std::string_view ErrorKind(const absl::Status& status);

}  // namespace prisps

// Propagates a non-OK absl::Status out of the enclosing function.
#define PRISPS_RETURN_IF_ERROR(expr)             \
  do {                                           \
    if (absl::Status _st = (expr); !_st.ok()) {  \
      return _st;                                \
    }                                            \
  } while (0)

#define PRISPS_CONCAT_INNER_(a, b) a##b
#define PRISPS_CONCAT_(a, b) PRISPS_CONCAT_INNER_(a, b)

// Binds the value of an absl::StatusOr expression to `lhs`, or returns its
// status.
#define PRISPS_ASSIGN_OR_RETURN(lhs, expr) \
  PRISPS_ASSIGN_OR_RETURN_IMPL_(PRISPS_CONCAT_(_statusor_, __LINE__), lhs, expr)

#define PRISPS_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, expr) \
  auto tmp = (expr);                                  \
  if (!tmp.ok()) return tmp.status();                 \
  lhs = std::move(tmp).value()

#endif  // PRISPS_ERRORS_H_
