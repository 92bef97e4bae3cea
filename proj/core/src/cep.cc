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

#include "prisps/cep.h"

#include <algorithm>
#include <set>

#include "str_util.h"
#include "prisps/errors.h"

namespace prisps {
namespace {

// Three-way comparison of two scalars; nullopt when the types are not
// comparable (string vs number).
std::optional<int> CompareScalars(const Scalar& a, const Scalar& b) {
  const bool a_str = std::holds_alternative<std::string>(a);
  const bool b_str = std::holds_alternative<std::string>(b);
  if (a_str != b_str) return std::nullopt;
  if (a_str) {
    const int c = std::get<std::string>(a).compare(std::get<std::string>(b));
    return (c > 0) - (c < 0);
  }
  if (std::holds_alternative<int64_t>(a) && std::holds_alternative<int64_t>(b)) {
    const int64_t x = std::get<int64_t>(a);
    const int64_t y = std::get<int64_t>(b);
    return (x > y) - (x < y);
  }
  const auto as_double = [](const Scalar& s) {
    return std::holds_alternative<int64_t>(s)
               ? static_cast<double>(std::get<int64_t>(s))
               : std::get<double>(s);
  };
  const double x = as_double(a);
  const double y = as_double(b);
  return (x > y) - (x < y);
}

// Greedy earliest embedding of steps [1, k-2] strictly between `first` and
// `last`, skipping consumed events. Writes the chosen indices to `out`.
bool EmbedMiddle(const std::vector<std::vector<char>>& ok,
                 const std::vector<char>& consumed, size_t k, size_t first,
                 size_t last, std::vector<size_t>& out) {
  size_t pos = first + 1;
  for (size_t step = 1; step + 1 < k; ++step) {
    while (pos < last && (consumed[pos] || !ok[pos][step])) ++pos;
    if (pos >= last) return false;
    out[step] = pos++;
  }
  return true;
}

}  // namespace

absl::StatusOr<SequencePattern> SequencePattern::Create(
    std::vector<PatternStep> steps, int within_slots) {
  if (steps.empty()) {
    return MakeError(absl::StatusCode::kInvalidArgument, "InvalidPattern",
                     "pattern needs at least one step");
  }
  if (within_slots < static_cast<int>(steps.size()) - 1) {
    return MakeError(
        absl::StatusCode::kInvalidArgument, "InvalidPattern",
        StrCat("within ", within_slots, " slot(s) cannot hold ",
                     steps.size(), " steps"));
  }
  SequencePattern pattern;
  pattern.steps_ = std::move(steps);
  pattern.within_ = within_slots;
  return pattern;
}

absl::StatusOr<SequencePattern> SequencePattern::FromActivities(
    std::span<const std::string> labels, int within_slots) {
  std::vector<PatternStep> steps;
  for (const std::string& label : labels) {
    PatternStep step;
    step.filter.terms.push_back(
        Comparison{std::string(kActivityField), CompareOp::kEq, Literal(label)});
    steps.push_back(std::move(step));
  }
  return Create(std::move(steps), within_slots);
}

std::optional<Scalar> EventField(const Event& event, std::string_view field) {
  if (field == kActivityField) return Scalar(event.activity);
  if (field == kDayField) return Scalar(int64_t{event.ts.day});
  if (field == kSlotField) return Scalar(int64_t{event.ts.slot});
  if (auto it = event.attrs.find(std::string(field)); it != event.attrs.end()) {
    return it->second;
  }
  if (field == "ts") return Scalar(int64_t{event.ts.slot});
  return std::nullopt;
}

bool EvaluateComparison(const Comparison& comparison, const Event& event) {
  const std::optional<Scalar> value = EventField(event, comparison.field);
  if (!value.has_value()) return false;
  const std::optional<int> c = CompareScalars(*value, comparison.value);
  if (!c.has_value()) return false;
  switch (comparison.op) {
    case CompareOp::kEq:
      return *c == 0;
    case CompareOp::kNe:
      return *c != 0;
    case CompareOp::kLt:
      return *c < 0;
    case CompareOp::kLe:
      return *c <= 0;
    case CompareOp::kGt:
      return *c > 0;
    case CompareOp::kGe:
      return *c >= 0;
  }
  return false;
}

bool EvaluatePredicate(const Predicate& predicate, const Event& event) {
  return std::all_of(predicate.terms.begin(), predicate.terms.end(),
                     [&](const Comparison& c) { return EvaluateComparison(c, event); });
}

bool StepMatches(const PatternStep& step, const Event& event) {
  if (step.stream.has_value() && *step.stream != event.stream_name) return false;
  return EvaluatePredicate(step.filter, event);
}

std::vector<PatternMatch> MatchSequenceInDay(std::span<const Event> day_events,
                                             const SequencePattern& pattern,
                                             int day) {
  const size_t n = day_events.size();
  const size_t k = pattern.length();
  std::vector<PatternMatch> matches;
  if (n < k) return matches;

  std::vector<std::vector<char>> ok(n, std::vector<char>(k, 0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t s = 0; s < k; ++s) {
      ok[i][s] = StepMatches(pattern.steps()[s], day_events[i]) ? 1 : 0;
    }
  }

  std::vector<char> consumed(n, 0);
  std::vector<size_t> tuple(k);
  size_t window_start = 0;
  for (size_t last = k - 1; last < n; ++last) {
    if (!ok[last][k - 1]) continue;
    const int last_slot = day_events[last].ts.slot;
    while (day_events[window_start].ts.slot < last_slot - pattern.within()) {
      ++window_start;
    }
    bool found = false;
    if (k == 1) {
      tuple[0] = last;
      found = true;
    } else {
      for (size_t first = window_start; first + k - 1 <= last; ++first) {
        if (consumed[first] || !ok[first][0]) continue;
        if (EmbedMiddle(ok, consumed, k, first, last, tuple)) {
          tuple[0] = first;
          found = true;
          break;
        }
      }
    }
    if (!found) continue;
    tuple[k - 1] = last;
    for (size_t idx : tuple) consumed[idx] = 1;
    matches.push_back(PatternMatch{day, tuple, last_slot});
  }
  return matches;
}

std::vector<PatternMatch> MatchSequence(const EventStream& stream,
                                        const SequencePattern& pattern, int day) {
  return MatchSequenceInDay(stream.EventsOnDay(day), pattern, day);
}

CountSeries CountPatternCompletions(const EventStream& stream,
                                    const SequencePattern& pattern, int horizon) {
  if (horizon <= 0) horizon = stream.MaxSlot();
  CountSeries series;
  series.pattern_length = pattern.length();
  series.values.assign(horizon, int64_t{0});
  const int undefined_upto = static_cast<int>(pattern.length()) - 1;
  for (int slot = 1; slot <= std::min(undefined_upto, horizon); ++slot) {
    series.values[slot - 1] = std::nullopt;
  }
  const std::vector<int> days = stream.Days();
  series.n_days = static_cast<int>(days.size());
  for (int day : days) {
    std::set<int> completion_slots;
    for (const PatternMatch& m : MatchSequence(stream, pattern, day)) {
      completion_slots.insert(m.completion_slot);
    }
    for (int slot : completion_slots) {
      if (slot > horizon || slot <= undefined_upto) continue;
      ++*series.values[slot - 1];
    }
  }
  return series;
}

absl::StatusOr<std::vector<int64_t>> CountEvents(
    const EventStream& stream, std::span<const std::string> labels,
    const Timestamp& ts, std::span<const std::string> alphabet) {
  if (labels.empty()) {
    return absl::InvalidArgumentError("event set must not be empty");
  }
  std::set<std::string_view> distinct;
  for (const std::string& label : labels) {
    if (!distinct.insert(label).second) {
      return absl::InvalidArgumentError(
          StrCat("duplicate label '", label, "' in event set"));
    }
    if (std::find(alphabet.begin(), alphabet.end(), label) == alphabet.end()) {
      return MakeError(absl::StatusCode::kNotFound, "UnknownLabel",
                       StrCat("'", label, "' is not in the alphabet"));
    }
  }
  std::vector<int64_t> counts(labels.size(), 0);
  for (const Event& e : stream.EventsOnDay(ts.day)) {
    if (e.ts.slot != ts.slot) continue;
    for (size_t i = 0; i < labels.size(); ++i) {
      if (e.activity == labels[i]) ++counts[i];
    }
  }
  return counts;
}

absl::StatusOr<std::vector<int64_t>> CountEvents(
    const EventStream& stream, std::span<const std::string> labels,
    const Timestamp& ts) {
  const std::vector<std::string> alphabet = stream.Activities();
  return CountEvents(stream, labels, ts, alphabet);
}

int WithinSlots(const Duration& within, const EvaluationOptions& options) {
  return static_cast<int>(within.Seconds() / options.slot_seconds);
}

absl::StatusOr<SequencePattern> PatternFromQuery(const QueryAst& ast,
                                                 const EvaluationOptions& options) {
  std::vector<PatternStep> steps;
  std::set<std::string_view> streams;
  for (const PatternBinding& b : ast.pattern.bindings) streams.insert(b.stream);
  for (const PatternBinding& b : ast.pattern.bindings) {
    PatternStep step;
    if (streams.size() > 1) step.stream = b.stream;
    step.filter = b.filter;
    steps.push_back(std::move(step));
  }
  return SequencePattern::Create(std::move(steps),
                                 WithinSlots(ast.pattern.within, options));
}

absl::StatusOr<EventStream> EvaluateQuery(
    const QueryAst& ast, const std::map<std::string, EventStream>& streams,
    const EvaluationOptions& options) {
  // Referenced streams in first-use order.
  std::vector<const EventStream*> inputs;
  std::vector<std::string> names;
  for (const PatternBinding& b : ast.pattern.bindings) {
    if (std::find(names.begin(), names.end(), b.stream) != names.end()) continue;
    auto it = streams.find(b.stream);
    if (it == streams.end()) {
      return MakeError(absl::StatusCode::kNotFound, "UnknownStream",
                       StrCat("no events supplied for stream '", b.stream,
                                    "'"));
    }
    names.push_back(b.stream);
    inputs.push_back(&it->second);
  }

  // Output schema from the select list.
  StreamSchema out_schema;
  out_schema.name = ast.insert_into;
  for (const SelectItem& item : ast.select) {
    const PatternBinding* b = ast.FindBinding(item.binding);
    if (b == nullptr) {
      return MakeError(absl::StatusCode::kInvalidArgument, "UnknownField",
                       StrCat("select references unknown binding '",
                                    item.binding, "'"));
    }
    const StreamSchema* schema = ast.FindStream(b->stream);
    std::optional<FieldType> type =
        schema != nullptr ? ResolveFieldType(*schema, item.field) : std::nullopt;
    if (!type.has_value()) {
      return MakeError(absl::StatusCode::kInvalidArgument, "UnknownField",
                       StrCat("unknown field '", item.field, "'"));
    }
    if (item.kind == SelectItem::Kind::kCount) type = FieldType::kLong;
    out_schema.fields.push_back(FieldDecl{item.OutputName(), *type});
  }

  PRISPS_ASSIGN_OR_RETURN(SequencePattern pattern, PatternFromQuery(ast, options));

  std::set<int> day_set;
  for (const EventStream* s : inputs) {
    for (int d : s->Days()) day_set.insert(d);
  }

  std::vector<Event> derived;
  for (int day : day_set) {
    std::vector<Event> merged;
    for (const EventStream* s : inputs) {
      const auto day_events = s->EventsOnDay(day);
      merged.insert(merged.end(), day_events.begin(), day_events.end());
    }
    std::stable_sort(merged.begin(), merged.end(),
                     [](const Event& a, const Event& b) { return a.ts < b.ts; });
    for (const PatternMatch& m : MatchSequenceInDay(merged, pattern, day)) {
      Event out;
      out.stream_name = ast.insert_into;
      out.ts = Timestamp{day, m.completion_slot};
      out.activity = ast.insert_into;
      for (const SelectItem& item : ast.select) {
        size_t step = 0;
        while (ast.pattern.bindings[step].name != item.binding) ++step;
        const Event& bound = merged[m.event_indices[step]];
        const std::optional<Scalar> value = EventField(bound, item.field);
        if (item.kind == SelectItem::Kind::kCount) {
          out.attrs[item.OutputName()] = int64_t{value.has_value() ? 1 : 0};
        } else if (value.has_value()) {
          out.attrs[item.OutputName()] = *value;
        }
      }
      derived.push_back(std::move(out));
    }
  }
  return MakeDerivedStream(std::move(out_schema), std::move(derived));
}

}  // namespace prisps
