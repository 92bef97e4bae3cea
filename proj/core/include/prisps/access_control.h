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

#ifndef PRISPS_ACCESS_CONTROL_H_
#define PRISPS_ACCESS_CONTROL_H_

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "prisps/query.h"

namespace prisps {

// Query rewriting at the entry point: queries that search for a private
// pattern are redirected, rejected, or pinned to trusted nodes according to
// action rules derived from the user's policy.

struct PrivatePatternSignature {
  std::string id;
  std::vector<std::string> steps;  // activity labels, length >= 2
  int max_within = 0;              // slots

  friend bool operator==(const PrivatePatternSignature&,
                         const PrivatePatternSignature&) = default;
};

struct RewriteSink {
  std::string publisher;
  friend bool operator==(const RewriteSink&, const RewriteSink&) = default;
};
struct Deny {
  friend bool operator==(const Deny&, const Deny&) = default;
};
struct RestrictNodes {
  std::vector<std::string> node_ids;
  friend bool operator==(const RestrictNodes&, const RestrictNodes&) = default;
};

using RuleAction = std::variant<RewriteSink, Deny, RestrictNodes>;

std::string_view ActionName(const RuleAction& action);

struct ActionRule {
  std::string id;
  std::string signature_id;
  RuleAction action;
  std::string provenance;  // policy rule that produced this action rule

  friend bool operator==(const ActionRule&, const ActionRule&) = default;
};

// Annotation keys written by the rewriter.
inline constexpr std::string_view kSinkAnnotation = "sink";
inline constexpr std::string_view kPublisherParam = "publisher";
inline constexpr std::string_view kRestrictAnnotation = "restrict";
inline constexpr std::string_view kNodesParam = "nodes";

// Activity label a binding dispatches on (its first `user_activity == 'x'`
// term), if any.
std::optional<std::string> BindingActivity(const PatternBinding& binding);

// Signatures whose steps appear, in order, as a subsequence of the query's
// activity-equality steps, provided the query's window spans at least
// steps - 1 slots. Returned in signature order.
std::vector<std::string> DetectPrivatePatternQuery(
    const QueryAst& ast, const std::vector<PrivatePatternSignature>& signatures,
    int slot_seconds = 60);

struct RewriteLogEntry {
  std::string rule_id;
  std::string signature_id;
  std::string action;  // "rewrite_sink", "deny", "restrict_nodes"
  std::string detail;
};

struct RewriteOutcome {
  // nullopt when a Deny rule rejected the query.
  std::optional<QueryAst> query;
  std::vector<RewriteLogEntry> log;

  bool rejected() const { return !query.has_value(); }
};

// Applies the rules of every matched signature in declaration order. The
// first rule of each action kind wins; a second RewriteSink naming a different
// publisher is a ConflictingRules error. Rules referencing an unknown
// signature are an InvalidArgument error. Queries that match nothing are
// returned unchanged with an empty log.
absl::StatusOr<RewriteOutcome> RewriteQuery(
    const QueryAst& ast, const std::vector<ActionRule>& rules,
    const std::vector<PrivatePatternSignature>& signatures,
    int slot_seconds = 60);

// Node ids from a @restrict(nodes='a,b') annotation, if present.
std::optional<std::vector<std::string>> RestrictedNodes(const QueryAst& ast);

// Publisher named by a @sink(publisher='x') annotation, if present.
std::optional<std::string> SinkPublisher(const QueryAst& ast);

}  // namespace prisps

#endif  // PRISPS_ACCESS_CONTROL_H_
