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

#include "prisps/event_io.h"

#include <nlohmann/json.hpp>

#include "str_util.h"
#include "prisps/errors.h"

namespace prisps {
namespace {

using Json = nlohmann::ordered_json;

absl::StatusOr<Scalar> ScalarFromJson(const Json& value, std::string_view key,
                                      size_t line) {
  if (value.is_number_integer()) return Scalar(value.get<int64_t>());
  if (value.is_number_float()) return Scalar(value.get<double>());
  if (value.is_string()) return Scalar(value.get<std::string>());
  return MakeError(absl::StatusCode::kInvalidArgument, "SchemaMismatch",
                   StrCat("line ", line, ": attribute '", key,
                                "' must be a number or string"));
}

Json ScalarToJson(const Scalar& value) {
  if (const auto* i = std::get_if<int64_t>(&value)) return Json(*i);
  if (const auto* d = std::get_if<double>(&value)) return Json(*d);
  return Json(std::get<std::string>(value));
}

}  // namespace

absl::StatusOr<std::vector<RawEventRecord>> ParseEventsJsonl(
    std::string_view text) {
  std::vector<RawEventRecord> records;
  size_t line_no = 0;
  for (std::string_view line : SplitView(text, '\n')) {
    ++line_no;
    line = StripWhitespace(line);
    if (line.empty()) continue;
    Json obj = Json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (obj.is_discarded() || !obj.is_object()) {
      return MakeError(absl::StatusCode::kInvalidArgument, "ParseError",
                       StrCat("line ", line_no, ": not a JSON object"));
    }
    RawEventRecord rec;
    for (const auto& [key, value] : obj.items()) {
      const auto mistyped = [&](std::string_view want) {
        return MakeError(absl::StatusCode::kInvalidArgument, "SchemaMismatch",
                         StrCat("line ", line_no, ": '", key,
                                      "' must be ", want));
      };
      if (key == "day" || key == "slot") {
        if (!value.is_number_integer()) return mistyped("an integer");
        (key == "day" ? rec.day : rec.slot) = value.get<int64_t>();
      } else if (key == "stream") {
        if (!value.is_string()) return mistyped("a string");
        rec.stream = value.get<std::string>();
      } else if (key == "activity") {
        if (!value.is_string()) return mistyped("a string");
        rec.activity = value.get<std::string>();
      } else if (key == "attrs") {
        if (!value.is_object()) return mistyped("an object");
        for (const auto& [attr, attr_value] : value.items()) {
          auto scalar = ScalarFromJson(attr_value, attr, line_no);
          if (!scalar.ok()) return scalar.status();
          rec.attrs[attr] = *std::move(scalar);
        }
      } else {
        return MakeError(absl::StatusCode::kInvalidArgument, "SchemaMismatch",
                         StrCat("line ", line_no, ": unknown key '", key,
                                      "'"));
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::string FormatEventsJsonl(const EventStream& stream) {
  std::string out;
  for (const Event& e : stream.events()) {
    Json obj;
    obj["day"] = e.ts.day;
    obj["slot"] = e.ts.slot;
    obj["stream"] = e.stream_name;
    obj["activity"] = e.activity;
    if (!e.attrs.empty()) {
      Json attrs = Json::object();
      for (const auto& [key, value] : e.attrs) attrs[key] = ScalarToJson(value);
      obj["attrs"] = std::move(attrs);
    }
    StrAppend(&out, obj.dump(), "\n");
  }
  return out;
}

}  // namespace prisps
