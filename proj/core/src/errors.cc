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

#include "prisps/errors.h"

#include "str_util.h"

namespace prisps {

absl::Status MakeError(absl::StatusCode code, std::string_view kind,
                       std::string_view detail) {
  return absl::Status(code, StrCat(kind, ": ", detail));
}

std::string_view ErrorKind(const absl::Status& status) {
  if (status.ok()) return {};
  const std::string_view message(status.message().data(),
                                 status.message().size());
  const size_t colon = message.find(':');
  if (colon == std::string_view::npos) return {};
  return message.substr(0, colon);
}

}  // namespace prisps
