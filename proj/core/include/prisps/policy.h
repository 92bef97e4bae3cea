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

#ifndef PRISPS_POLICY_H_
#define PRISPS_POLICY_H_

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "prisps/access_control.h"
#include "prisps/dp.h"
#include "prisps/event.h"
#include "prisps/query.h"

namespace prisps {

// User privacy policies: static rules, context-dependent dynamic overrides,
// and the derivation of per-mechanism configuration from the rules in force.

struct ConcealAttribute {
  std::string attribute;
  friend bool operator==(const ConcealAttribute&, const ConcealAttribute&) = default;
};

// Protect a private pattern; `occurrence_windows` are the user-declared slot
// ranges in which the pattern can happen (the relevance intervals).
struct ProtectPattern {
  std::string pattern_id;
  std::vector<SlotRange> occurrence_windows;
  friend bool operator==(const ProtectPattern&, const ProtectPattern&) = default;
};

struct RestrictSink {
  std::string pattern_id;
  std::string publisher;
  friend bool operator==(const RestrictSink&, const RestrictSink&) = default;
};

struct TrustNodes {
  std::vector<std::string> node_ids;
  friend bool operator==(const TrustNodes&, const TrustNodes&) = default;
};

using RuleTrigger = std::variant<ConcealAttribute, ProtectPattern, RestrictSink,
                                 TrustNodes>;

std::string_view TriggerName(const RuleTrigger& trigger);

struct StaticRule {
  std::string id;
  RuleTrigger trigger;
  // 0 = maximal privacy, 1 = maximal utility.
  double put_knob = 0.0;

  friend bool operator==(const StaticRule&, const StaticRule&) = default;
};

enum class ContextField { kLocation, kPeer, kDay, kSlot };

std::string_view ContextFieldName(ContextField field);
std::optional<ContextField> ParseContextField(std::string_view name);

struct ContextCondition {
  ContextField field = ContextField::kLocation;
  CompareOp op = CompareOp::kEq;
  Scalar value;

  friend bool operator==(const ContextCondition&, const ContextCondition&) = default;
};

struct Suspend {
  friend bool operator==(const Suspend&, const Suspend&) = default;
};

// Replacement body for an overridden rule; the rule keeps its id.
struct RuleBody {
  RuleTrigger trigger;
  double put_knob = 0.0;

  friend bool operator==(const RuleBody&, const RuleBody&) = default;
};

struct DynamicRule {
  std::string id;
  std::vector<ContextCondition> when;  // conjunction; empty = always
  std::string overrides;               // static rule id
  std::variant<Suspend, RuleBody> replacement;

  friend bool operator==(const DynamicRule&, const DynamicRule&) = default;
};

struct PrivacyPolicy {
  std::string user;
  std::vector<StaticRule> static_rules;
  std::vector<DynamicRule> dynamic_rules;
  // Human-readable purposes of the data uses the user consents to.
  std::vector<std::string> purpose_statements;
  // Pattern catalog the rules refer to.
  std::vector<PrivatePatternSignature> patterns;
};

struct Context {
  std::string location;
  Timestamp time;
  std::string peer;
};

bool ConditionHolds(const ContextCondition& condition, const Context& ctx);

// Static rules in force under `ctx`, in static order. A static rule overridden
// by a dynamic rule whose conditions all hold is replaced by that rule's body
// or dropped (Suspend); the first satisfied override in declaration order wins.
std::vector<StaticRule> EvaluatePolicy(const PrivacyPolicy& policy,
                                       const Context& ctx);

struct PolicyDiagnostic {
  enum class Severity { kError, kAdvisory };
  Severity severity = Severity::kError;
  std::string code;  // e.g. "DuplicateRuleId", "DanglingOverride"
  std::string rule_id;
  std::string message;
};

// What the deployment offers; unknown references are only checked for the
// lists that are non-empty.
struct ValidationContext {
  std::vector<std::string> known_attributes;
  std::vector<std::string> known_nodes;
  bool obfuscator_enabled = false;
};

// Reports DuplicateRuleId, DanglingOverride, UnknownPattern, UnknownAttribute,
// UnknownNode, KnobOutOfRange, InvalidRule and MissingPurpose as errors, and
// InferenceStillFeasible (a concealed attribute with no obfuscator to stop its
// inference) as an advisory.
std::vector<PolicyDiagnostic> ValidatePolicy(const PrivacyPolicy& policy,
                                             const ValidationContext& ctx = {});

bool HasErrors(const std::vector<PolicyDiagnostic>& diagnostics);

// Deployment facts the derivation needs.
struct ScenarioConfig {
  std::vector<PrivatePatternSignature> signatures;
  std::vector<std::string> node_ids;  // empty = node ids are not checked
  double epsilon_min = 0.1;
  double epsilon_max = 10.0;
  double sensitivity = 1.0;
  int n_days = 1;
  TaperMode taper_mode = TaperMode::kTable;
};

struct PpmCustomization {
  std::optional<ScheduleConfig> schedule;
  std::vector<ActionRule> action_rules;
  // Signatures referenced by ProtectPattern or RestrictSink rules.
  std::vector<PrivatePatternSignature> signatures;
  std::optional<std::vector<std::string>> trusted_nodes;
  std::vector<std::string> concealed_attributes;

  bool empty() const {
    return !schedule.has_value() && action_rules.empty() &&
           !trusted_nodes.has_value() && concealed_attributes.empty();
  }
};

// epsilon_min + knob * (epsilon_max - epsilon_min).
double KnobToEpsilon(double put_knob, double epsilon_min, double epsilon_max);

// Maps effective rules onto mechanism settings. ProtectPattern rules yield the
// relevance intervals (merged across rules), w = longest protected pattern,
// and the smallest knob-derived epsilon; RestrictSink rules yield RewriteSink
// action rules; TrustNodes rules yield the trusted node set; ConcealAttribute
// rules list the attributes for the obfuscator. Errors: UnknownPattern,
// UnknownNode.
absl::StatusOr<PpmCustomization> DerivePpmConfig(
    const std::vector<StaticRule>& effective_rules, const ScenarioConfig& config);

}  // namespace prisps

#endif  // PRISPS_POLICY_H_
