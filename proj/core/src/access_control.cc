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

#include "prisps/access_control.h"

#include <algorithm>
#include <map>

#include "str_util.h"
#include "prisps/errors.h"

namespace prisps {
namespace {

const PrivatePatternSignature* FindSignature(
    const std::vector<PrivatePatternSignature>& signatures, std::string_view id) {
  for (const auto& sig : signatures) {
    if (sig.id == id) return &sig;
  }
  return nullptr;
}

// Replaces the first annotation with `key` or appends one.
void SetAnnotation(QueryAst& ast, std::string_view key,
                   std::vector<std::pair<std::string, std::string>> params) {
  for (Annotation& a : ast.annotations) {
    if (a.key == key) {
      a.params = std::move(params);
      return;
    }
  }
  ast.annotations.push_back(Annotation{std::string(key), std::move(params)});
}

}  // namespace

std::string_view ActionName(const RuleAction& action) {
  if (std::holds_alternative<RewriteSink>(action)) return "rewrite_sink";
  if (std::holds_alternative<Deny>(action)) return "deny";
  return "restrict_nodes";
}

std::optional<std::string> BindingActivity(const PatternBinding& binding) {
  for (const Comparison& c : binding.filter.terms) {
    if (c.field == kActivityField && c.op == CompareOp::kEq &&
        std::holds_alternative<std::string>(c.value)) {
      return std::get<std::string>(c.value);
    }
  }
  return std::nullopt;
}

std::vector<std::string> DetectPrivatePatternQuery(
    const QueryAst& ast, const std::vector<PrivatePatternSignature>& signatures,
    int slot_seconds) {
  std::vector<std::optional<std::string>> steps;
  for (const PatternBinding& b : ast.pattern.bindings) {
    steps.push_back(BindingActivity(b));
  }
  const int64_t within_slots = ast.pattern.within.Seconds() / slot_seconds;

  std::vector<std::string> matched;
  for (const PrivatePatternSignature& sig : signatures) {
    if (sig.steps.empty()) continue;
    if (within_slots < static_cast<int64_t>(sig.steps.size()) - 1) continue;
    size_t next = 0;
    for (const auto& label : steps) {
      if (next < sig.steps.size() && label.has_value() && *label == sig.steps[next]) {
        ++next;
      }
    }
    if (next == sig.steps.size()) matched.push_back(sig.id);
  }
  return matched;
}

absl::StatusOr<RewriteOutcome> RewriteQuery(
    const QueryAst& ast, const std::vector<ActionRule>& rules,
    const std::vector<PrivatePatternSignature>& signatures, int slot_seconds) {
  for (const ActionRule& rule : rules) {
    if (FindSignature(signatures, rule.signature_id) == nullptr) {
      return absl::InvalidArgumentError(
          StrCat("action rule '", rule.id, "' references unknown signature '",
                       rule.signature_id, "'"));
    }
    if (const auto* sink = std::get_if<RewriteSink>(&rule.action);
        sink != nullptr && sink->publisher.empty()) {
      return absl::InvalidArgumentError(
          StrCat("action rule '", rule.id, "' has an empty publisher"));
    }
  }

  RewriteOutcome outcome;
  const std::vector<std::string> matched =
      DetectPrivatePatternQuery(ast, signatures, slot_seconds);
  if (matched.empty()) {
    outcome.query = ast;
    return outcome;
  }

  std::optional<std::pair<std::string, std::string>> sink;  // rule id, publisher
  std::optional<std::string> deny_rule;
  std::optional<std::vector<std::string>> restrict_nodes;
  std::map<std::string, std::string> sink_by_signature;

  for (const ActionRule& rule : rules) {
    if (std::find(matched.begin(), matched.end(), rule.signature_id) ==
        matched.end()) {
      continue;
    }
    RewriteLogEntry entry{rule.id, rule.signature_id,
                          std::string(ActionName(rule.action)), ""};
    if (const auto* s = std::get_if<RewriteSink>(&rule.action)) {
      auto [it, inserted] =
          sink_by_signature.emplace(rule.signature_id, s->publisher);
      if (!inserted && it->second != s->publisher) {
        return MakeError(
            absl::StatusCode::kFailedPrecondition, "ConflictingRules",
            StrCat("signature '", rule.signature_id, "' sinks to both '",
                         it->second, "' and '", s->publisher, "'"));
      }
      if (sink.has_value() && sink->second != s->publisher) {
        return MakeError(
            absl::StatusCode::kFailedPrecondition, "ConflictingRules",
            StrCat("query would sink to both '", sink->second, "' and '",
                         s->publisher, "'"));
      }
      if (sink.has_value()) continue;
      sink.emplace(rule.id, s->publisher);
      entry.detail = StrCat("publisher=", s->publisher);
    } else if (std::holds_alternative<Deny>(rule.action)) {
      if (deny_rule.has_value()) continue;
      deny_rule = rule.id;
      entry.detail = "query rejected";
    } else {
      if (restrict_nodes.has_value()) continue;
      restrict_nodes = std::get<RestrictNodes>(rule.action).node_ids;
      entry.detail = StrCat("nodes=", StrJoin(*restrict_nodes, ","));
    }
    outcome.log.push_back(std::move(entry));
  }

  if (deny_rule.has_value()) return outcome;  // query stays empty

  QueryAst rewritten = ast;
  if (sink.has_value()) {
    SetAnnotation(rewritten, kSinkAnnotation,
                  {{std::string(kPublisherParam), sink->second}});
  }
  if (restrict_nodes.has_value()) {
    SetAnnotation(rewritten, kRestrictAnnotation,
                  {{std::string(kNodesParam), StrJoin(*restrict_nodes, ",")}});
  }
  outcome.query = std::move(rewritten);
  return outcome;
}

std::optional<std::vector<std::string>> RestrictedNodes(const QueryAst& ast) {
  const Annotation* a = ast.FindAnnotation(kRestrictAnnotation);
  if (a == nullptr) return std::nullopt;
  const std::string* nodes = a->Param(kNodesParam);
  if (nodes == nullptr) return std::vector<std::string>{};
  std::vector<std::string> ids;
  for (std::string_view id : SplitView(*nodes, ',', /*skip_empty=*/true)) {
    ids.emplace_back(id);
  }
  return ids;
}

std::optional<std::string> SinkPublisher(const QueryAst& ast) {
  const Annotation* a = ast.FindAnnotation(kSinkAnnotation);
  if (a == nullptr) return std::nullopt;
  const std::string* publisher = a->Param(kPublisherParam);
  if (publisher == nullptr) return std::nullopt;
  return *publisher;
}

}  // namespace prisps
