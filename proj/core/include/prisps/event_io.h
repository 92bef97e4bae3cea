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

#ifndef PRISPS_EVENT_IO_H_
#define PRISPS_EVENT_IO_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "prisps/event.h"

namespace prisps {

// JSON Lines event files, one object per line:
//   {"day": 1, "slot": 1, "stream": "S", "activity": "swallow", "attrs": {...}}
// Blank lines are skipped. Unknown keys are rejected with SchemaMismatch;
// malformed JSON yields ParseError with the 1-based line number.
absl::StatusOr<std::vector<RawEventRecord>> ParseEventsJsonl(
    std::string_view text);

// Deterministic serialization; keys in the order shown above, "attrs" omitted
// when empty.
std::string FormatEventsJsonl(const EventStream& stream);

}  // namespace prisps

#endif  // PRISPS_EVENT_IO_H_
