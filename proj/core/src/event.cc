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

#include "prisps/event.h"

#include <algorithm>
#include <charconv>
#include <set>

#include "str_util.h"
#include "prisps/errors.h"

namespace prisps {

std::string_view FieldTypeName(FieldType type) {
  switch (type) {
    case FieldType::kLong:
      return "long";
    case FieldType::kInt:
      return "int";
    case FieldType::kFloat:
      return "float";
    case FieldType::kString:
      return "string";
  }
  return "long";
}

std::optional<FieldType> ParseFieldType(std::string_view name) {
  if (name == "long") return FieldType::kLong;
  if (name == "int") return FieldType::kInt;
  if (name == "float" || name == "double") return FieldType::kFloat;
  if (name == "string") return FieldType::kString;
  return std::nullopt;
}

const FieldDecl* StreamSchema::Find(std::string_view field) const {
  for (const FieldDecl& decl : fields) {
    if (decl.name == field) return &decl;
  }
  return nullptr;
}

bool ScalarConforms(const Scalar& value, FieldType type) {
  switch (type) {
    case FieldType::kLong:
    case FieldType::kInt:
      return std::holds_alternative<int64_t>(value);
    case FieldType::kFloat:
      return !std::holds_alternative<std::string>(value);
    case FieldType::kString:
      return std::holds_alternative<std::string>(value);
  }
  return false;
}

std::vector<int> EventStream::Days() const {
  std::vector<int> days;
  for (const Event& e : events_) {
    if (days.empty() || days.back() != e.ts.day) days.push_back(e.ts.day);
  }
  return days;
}

std::span<const Event> EventStream::EventsOnDay(int day) const {
  const auto lo = std::lower_bound(
      events_.begin(), events_.end(), day,
      [](const Event& e, int d) { return e.ts.day < d; });
  const auto hi = std::upper_bound(
      lo, events_.end(), day, [](int d, const Event& e) { return d < e.ts.day; });
  return {lo, hi};
}

int EventStream::MaxSlot() const {
  int max_slot = 0;
  for (const Event& e : events_) max_slot = std::max(max_slot, e.ts.slot);
  return max_slot;
}

std::vector<std::string> EventStream::Activities() const {
  std::vector<std::string> labels;
  std::set<std::string_view> seen;
  for (const Event& e : events_) {
    if (seen.insert(e.activity).second) labels.push_back(e.activity);
  }
  return labels;
}

absl::StatusOr<EventStream> IngestEvents(std::span<const RawEventRecord> records,
                                         const StreamSchema& schema) {
  EventStream stream(schema);
  stream.events_.reserve(records.size());
  for (size_t i = 0; i < records.size(); ++i) {
    const RawEventRecord& rec = records[i];
    const std::string where = StrCat("record ", i);
    if (!rec.day.has_value() || !rec.slot.has_value()) {
      return MakeError(absl::StatusCode::kInvalidArgument, "SchemaMismatch",
                       StrCat(where, " lacks day or slot"));
    }
    if (!rec.activity.has_value()) {
      return MakeError(absl::StatusCode::kInvalidArgument, "SchemaMismatch",
                       StrCat(where, " lacks activity"));
    }
    if (rec.activity->empty()) {
      return MakeError(absl::StatusCode::kInvalidArgument, "SchemaMismatch",
                       StrCat(where, " has an empty activity"));
    }
    if (rec.stream.has_value() && *rec.stream != schema.name) {
      return MakeError(
          absl::StatusCode::kInvalidArgument, "SchemaMismatch",
          StrCat(where, " belongs to undeclared stream '", *rec.stream,
                       "' (expected '", schema.name, "')"));
    }
    if (*rec.day < 1 || *rec.slot < 1 || *rec.day > INT32_MAX ||
        *rec.slot > INT32_MAX) {
      return MakeError(absl::StatusCode::kInvalidArgument, "InvalidTimestamp",
                       StrCat(where, " has day ", *rec.day, " slot ",
                                    *rec.slot));
    }
    for (const auto& [key, value] : rec.attrs) {
      const FieldDecl* decl = schema.Find(key);
      if (decl == nullptr) {
        return MakeError(absl::StatusCode::kInvalidArgument, "SchemaMismatch",
                         StrCat(where, " has undeclared attribute '",
                                      key, "'"));
      }
      if (!ScalarConforms(value, decl->type)) {
        return MakeError(
            absl::StatusCode::kInvalidArgument, "SchemaMismatch",
            StrCat(where, " attribute '", key, "' is not of type ",
                         FieldTypeName(decl->type)));
      }
    }
    Event event;
    event.stream_name = schema.name;
    event.ts = {static_cast<int>(*rec.day), static_cast<int>(*rec.slot)};
    event.activity = *rec.activity;
    for (const auto& [key, value] : rec.attrs) {
      // Float fields store doubles even when the record carried an integer.
      if (schema.Find(key)->type == FieldType::kFloat &&
          std::holds_alternative<int64_t>(value)) {
        event.attrs[key] = static_cast<double>(std::get<int64_t>(value));
      } else {
        event.attrs[key] = value;
      }
    }
    stream.events_.push_back(std::move(event));
  }
  std::stable_sort(stream.events_.begin(), stream.events_.end(),
                   [](const Event& a, const Event& b) { return a.ts < b.ts; });
  return stream;
}

EventStream MakeDerivedStream(StreamSchema schema, std::vector<Event> events) {
  EventStream stream(std::move(schema));
  stream.events_ = std::move(events);
  std::stable_sort(stream.events_.begin(), stream.events_.end(),
                   [](const Event& a, const Event& b) { return a.ts < b.ts; });
  return stream;
}

std::vector<RawEventRecord> ToRecords(const EventStream& stream) {
  std::vector<RawEventRecord> records;
  records.reserve(stream.size());
  for (const Event& e : stream.events()) {
    RawEventRecord rec;
    rec.day = e.ts.day;
    rec.slot = e.ts.slot;
    rec.stream = e.stream_name;
    rec.activity = e.activity;
    rec.attrs = e.attrs;
    records.push_back(std::move(rec));
  }
  return records;
}

std::string ScalarToString(const Scalar& value) {
  if (const auto* i = std::get_if<int64_t>(&value)) return StrCat(*i);
  if (const auto* s = std::get_if<std::string>(&value)) return *s;
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), std::get<double>(value));
  return std::string(buf, res.ptr);
}

}  // namespace prisps
