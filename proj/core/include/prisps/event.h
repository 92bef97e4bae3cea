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

#ifndef PRISPS_EVENT_H_
#define PRISPS_EVENT_H_

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"

namespace prisps {

// Discrete time index. Ordering is lexicographic on (day, slot).
struct Timestamp {
  int day = 1;
  int slot = 1;

  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

enum class FieldType { kLong, kInt, kFloat, kString };

std::string_view FieldTypeName(FieldType type);
std::optional<FieldType> ParseFieldType(std::string_view name);

// Attribute values. Integers and floats are kept apart so that a printed
// query or event file round-trips exactly.
using Scalar = std::variant<int64_t, double, std::string>;

struct FieldDecl {
  std::string name;
  FieldType type = FieldType::kLong;

  friend bool operator==(const FieldDecl&, const FieldDecl&) = default;
};

struct StreamSchema {
  std::string name;
  std::vector<FieldDecl> fields;

  const FieldDecl* Find(std::string_view field) const;

  friend bool operator==(const StreamSchema&, const StreamSchema&) = default;
};

// True when `value` can be stored in a field of `type`. Integer values are
// accepted for float fields.
bool ScalarConforms(const Scalar& value, FieldType type);

struct Event {
  std::string stream_name;
  Timestamp ts;
  std::string activity;
  std::map<std::string, Scalar> attrs;

  friend bool operator==(const Event&, const Event&) = default;
};

// Ingestion input. The mandatory keys are optional here so that a missing key
// is reported as SchemaMismatch instead of being impossible to express.
struct RawEventRecord {
  std::optional<int64_t> day;
  std::optional<int64_t> slot;
  std::optional<std::string> stream;
  std::optional<std::string> activity;
  std::map<std::string, Scalar> attrs;
};

// An immutable, schema-conforming sequence of events sorted by timestamp with
// ingestion order as the tie-break.
class EventStream {
 public:
  EventStream() = default;
  explicit EventStream(StreamSchema schema) : schema_(std::move(schema)) {}

  const std::string& name() const { return schema_.name; }
  const StreamSchema& schema() const { return schema_; }
  std::span<const Event> events() const { return events_; }
  size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }

  // Distinct days in ascending order.
  std::vector<int> Days() const;

  // Contiguous run of events on `day`; empty when the day is absent.
  std::span<const Event> EventsOnDay(int day) const;

  // Largest slot present in the stream, 0 when empty.
  int MaxSlot() const;

  // Distinct activity labels in first-seen order.
  std::vector<std::string> Activities() const;

  friend bool operator==(const EventStream&, const EventStream&) = default;

 private:
  friend absl::StatusOr<EventStream> IngestEvents(
      std::span<const RawEventRecord>, const StreamSchema&);
  friend EventStream MakeDerivedStream(StreamSchema schema,
                                       std::vector<Event> events);

  StreamSchema schema_;
  std::vector<Event> events_;
};

// Validates and sorts raw records into a stream. Errors: SchemaMismatch
// (missing day/slot/activity, foreign stream, undeclared or mistyped attribute)
// and InvalidTimestamp (day or slot < 1).
absl::StatusOr<EventStream> IngestEvents(std::span<const RawEventRecord> records,
                                         const StreamSchema& schema);

// Builds a stream from events already produced by the engine; stable-sorts by
// timestamp. Callers guarantee schema conformance.
EventStream MakeDerivedStream(StreamSchema schema, std::vector<Event> events);

std::vector<RawEventRecord> ToRecords(const EventStream& stream);

std::string ScalarToString(const Scalar& value);

}  // namespace prisps

#endif  // PRISPS_EVENT_H_
