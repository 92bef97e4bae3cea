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

#ifndef PRISPS_QUERY_H_
#define PRISPS_QUERY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "prisps/event.h"

namespace prisps {

// AST for the Siddhi-like subset: stream definitions, one "from every"
// sequence pattern with "->" steps and a "within" bound, a select list of
// field projections and count() aggregates, "insert into", and annotations
// such as @sink(publisher='Bob').

enum class CompareOp { kEq, kNe, kLt, kLe, kGt, kGe };

std::string_view CompareOpSymbol(CompareOp op);

// Literals are typed the same way as event attributes.
using Literal = Scalar;

struct Comparison {
  std::string field;
  CompareOp op = CompareOp::kEq;
  Literal value;

  friend bool operator==(const Comparison&, const Comparison&) = default;
};

// Conjunction of comparisons. A valid predicate has at least one term.
struct Predicate {
  std::vector<Comparison> terms;

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

struct PatternBinding {
  std::string name;    // e.g. "e1"
  std::string stream;  // bound stream name
  Predicate filter;

  friend bool operator==(const PatternBinding&, const PatternBinding&) = default;
};

enum class TimeUnit { kSec, kMin };

struct Duration {
  int64_t amount = 0;
  TimeUnit unit = TimeUnit::kMin;

  int64_t Seconds() const { return unit == TimeUnit::kMin ? amount * 60 : amount; }

  friend bool operator==(const Duration&, const Duration&) = default;
};

struct SequencePatternClause {
  std::vector<PatternBinding> bindings;
  Duration within;

  friend bool operator==(const SequencePatternClause&,
                         const SequencePatternClause&) = default;
};

struct SelectItem {
  enum class Kind { kField, kCount };
  Kind kind = Kind::kField;
  std::string binding;
  std::string field;
  std::optional<std::string> alias;

  // Name of the derived attribute: the alias, or the projected field name.
  std::string OutputName() const;

  friend bool operator==(const SelectItem&, const SelectItem&) = default;
};

struct Annotation {
  std::string key;
  std::vector<std::pair<std::string, std::string>> params;

  const std::string* Param(std::string_view name) const;

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

struct QueryAst {
  std::vector<Annotation> annotations;
  std::vector<StreamSchema> stream_defs;
  SequencePatternClause pattern;
  std::vector<SelectItem> select;
  std::string insert_into;

  const StreamSchema* FindStream(std::string_view name) const;
  const PatternBinding* FindBinding(std::string_view name) const;
  const Annotation* FindAnnotation(std::string_view key) const;

  friend bool operator==(const QueryAst&, const QueryAst&) = default;
};

// Fields every bound event exposes regardless of its stream schema.
inline constexpr std::string_view kActivityField = "user_activity";
inline constexpr std::string_view kDayField = "day";
inline constexpr std::string_view kSlotField = "slot";

// Type of `field` on `schema`, including the reserved fields. nullopt if the
// field is unknown.
std::optional<FieldType> ResolveFieldType(const StreamSchema& schema,
                                          std::string_view field);

bool LiteralCompatible(const Literal& value, FieldType type);

// Position and expectation set of a syntax error.
struct QueryDiagnostic {
  enum class Kind { kNone, kParse, kSemantic };
  Kind kind = Kind::kNone;
  int line = 0;
  int column = 0;
  std::vector<std::string> expected;
  std::string message;
};

// Parses one query. Errors: ParseError (with line:column and the expected
// token set) and SemanticError (unknown stream, unknown field, duplicate
// binding, incompatible literal, non-positive within). When `diagnostic` is
// non-null it receives the structured error.
absl::StatusOr<QueryAst> ParseQuery(std::string_view text,
                                    QueryDiagnostic* diagnostic = nullptr);

// Semantic validation shared by the parser and AST producers.
absl::Status ValidateQuery(const QueryAst& ast);

// Canonical text, one clause per line. Deterministic, and
// ParseQuery(PrintQuery(a)) == a for every valid AST.
std::string PrintQuery(const QueryAst& ast);

std::string PrintPredicate(const Predicate& predicate);
std::string PrintAnnotation(const Annotation& annotation);

}  // namespace prisps

#endif  // PRISPS_QUERY_H_
