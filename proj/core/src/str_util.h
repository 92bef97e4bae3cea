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

#ifndef PRISPS_SRC_STR_UTIL_H_
#define PRISPS_SRC_STR_UTIL_H_

#include <iterator>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace prisps {

// Concatenation helpers over {fmt}; the system absl build uses its own
// string_view type, which makes absl::StrCat awkward with std::string_view.
template <typename... Args>
void StrAppend(std::string* out, const Args&... args) {
  (fmt::format_to(std::back_inserter(*out), "{}", args), ...);
}

template <typename... Args>
std::string StrCat(const Args&... args) {
  std::string out;
  StrAppend(&out, args...);
  return out;
}

template <typename Range>
std::string StrJoin(const Range& range, std::string_view sep) {
  return fmt::format("{}", fmt::join(range, sep));
}

inline std::vector<std::string_view> SplitView(std::string_view text, char sep,
                                               bool skip_empty = false) {
  std::vector<std::string_view> pieces;
  size_t start = 0;
  for (;;) {
    const size_t pos = text.find(sep, start);
    const std::string_view piece =
        text.substr(start, pos == std::string_view::npos ? std::string_view::npos
                                                         : pos - start);
    if (!skip_empty || !piece.empty()) pieces.push_back(piece);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return pieces;
}

inline std::string_view StripWhitespace(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n\f\v";
  const size_t first = s.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  const size_t last = s.find_last_not_of(kSpace);
  return s.substr(first, last - first + 1);
}

}  // namespace prisps

#endif  // PRISPS_SRC_STR_UTIL_H_
