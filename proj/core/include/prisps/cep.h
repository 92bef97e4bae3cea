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

#ifndef PRISPS_CEP_H_
#define PRISPS_CEP_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "prisps/event.h"
#include "prisps/query.h"

namespace prisps {

// One step of a sequence pattern: an optional stream constraint plus a
// conjunctive predicate over the event's fields.
struct PatternStep {
  std::optional<std::string> stream;
  Predicate filter;

  friend bool operator==(const PatternStep&, const PatternStep&) = default;
};

// Ordered steps that must occur at strictly increasing event indices with a
// slot span (last.slot - first.slot) of at most `within`. Construction rejects
// within < k - 1.
class SequencePattern {
 public:
  static absl::StatusOr<SequencePattern> Create(std::vector<PatternStep> steps,
                                                int within_slots);

  // Convenience: one `user_activity == label` step per label.
  static absl::StatusOr<SequencePattern> FromActivities(
      std::span<const std::string> labels, int within_slots);

  std::span<const PatternStep> steps() const { return steps_; }
  size_t length() const { return steps_.size(); }
  int within() const { return within_; }

  friend bool operator==(const SequencePattern&, const SequencePattern&) = default;

 private:
  SequencePattern() = default;
  std::vector<PatternStep> steps_;
  int within_ = 0;
};

// Value of `field` on `event`: reserved fields first (user_activity, day,
// slot), then attributes. A "ts" field absent from the attributes resolves to
// the slot. nullopt when the event carries no such field.
std::optional<Scalar> EventField(const Event& event, std::string_view field);

bool EvaluateComparison(const Comparison& comparison, const Event& event);
bool EvaluatePredicate(const Predicate& predicate, const Event& event);
bool StepMatches(const PatternStep& step, const Event& event);

struct PatternMatch {
  int day = 0;
  std::vector<size_t> event_indices;  // into the day's event sequence
  int completion_slot = 0;

  friend bool operator==(const PatternMatch&, const PatternMatch&) = default;
};

// All non-overlapping matches on `day`, chosen greedily: repeatedly take the
// valid match whose last event index is smallest (ties broken by the
// lexicographically smallest index tuple) among events not yet consumed.
// Returns matches in selection order. Empty when the day is absent.
std::vector<PatternMatch> MatchSequence(const EventStream& stream,
                                        const SequencePattern& pattern, int day);

// Same policy over an explicit event sequence (one day's events).
std::vector<PatternMatch> MatchSequenceInDay(std::span<const Event> day_events,
                                             const SequencePattern& pattern,
                                             int day);

// Per-slot count series. Entries for slots 1..k-1 are Undefined (nullopt).
struct CountSeries {
  std::vector<std::optional<int64_t>> values;  // index 0 is slot 1
  int n_days = 0;
  size_t pattern_length = 1;

  int horizon() const { return static_cast<int>(values.size()); }
  const std::optional<int64_t>& at(int slot) const { return values[slot - 1]; }

  friend bool operator==(const CountSeries&, const CountSeries&) = default;
};

// values[t] = number of days with a selected match completing at slot t.
// `horizon` defaults to the largest slot in the stream.
CountSeries CountPatternCompletions(const EventStream& stream,
                                    const SequencePattern& pattern,
                                    int horizon = 0);

// Multiplicity of each label at exactly `ts`. Errors: InvalidArgument for an
// empty or duplicated label set; UnknownLabel when a label is not in
// `alphabet`.
absl::StatusOr<std::vector<int64_t>> CountEvents(
    const EventStream& stream, std::span<const std::string> labels,
    const Timestamp& ts, std::span<const std::string> alphabet);

// Alphabet defaults to the activities observed in the stream.
absl::StatusOr<std::vector<int64_t>> CountEvents(
    const EventStream& stream, std::span<const std::string> labels,
    const Timestamp& ts);

struct EvaluationOptions {
  int slot_seconds = 60;  // wall-clock length of one slot
};

// Translates a query's "within" clause to slots (floor division).
int WithinSlots(const Duration& within, const EvaluationOptions& options);

// Pattern described by the query's bindings.
absl::StatusOr<SequencePattern> PatternFromQuery(
    const QueryAst& ast, const EvaluationOptions& options = {});

// Runs the query and returns the derived stream named by "insert into": one
// event per match, timestamped at the completion slot, carrying the select
// list values. Errors: UnknownStream, UnknownField.
absl::StatusOr<EventStream> EvaluateQuery(
    const QueryAst& ast, const std::map<std::string, EventStream>& streams,
    const EvaluationOptions& options = {});

}  // namespace prisps

#endif  // PRISPS_CEP_H_
