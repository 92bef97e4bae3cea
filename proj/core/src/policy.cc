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

#include "prisps/policy.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "prisps/cep.h"
#include "prisps/errors.h"
#include "str_util.h"

namespace prisps {
namespace {

bool Contains(const std::vector<std::string>& list, std::string_view item) {
  return std::find(list.begin(), list.end(), item) != list.end();
}

const PrivatePatternSignature* FindPattern(
    const std::vector<PrivatePatternSignature>& catalog, std::string_view id) {
  for (const auto& sig : catalog) {
    if (sig.id == id) return &sig;
  }
  return nullptr;
}

}  // namespace

std::string_view TriggerName(const RuleTrigger& trigger) {
  switch (trigger.index()) {
    case 0:
      return "conceal_attribute";
    case 1:
      return "protect_pattern";
    case 2:
      return "restrict_sink";
    default:
      return "trust_nodes";
  }
}

std::string_view ContextFieldName(ContextField field) {
  switch (field) {
    case ContextField::kLocation:
      return "location";
    case ContextField::kPeer:
      return "peer";
    case ContextField::kDay:
      return "day";
    case ContextField::kSlot:
      return "slot";
  }
  return "location";
}

std::optional<ContextField> ParseContextField(std::string_view name) {
  if (name == "location") return ContextField::kLocation;
  if (name == "peer") return ContextField::kPeer;
  if (name == "day") return ContextField::kDay;
  if (name == "slot") return ContextField::kSlot;
  return std::nullopt;
}

bool ConditionHolds(const ContextCondition& condition, const Context& ctx) {
  // Reuse the event comparison semantics on a synthetic event.
  Event probe;
  probe.ts = ctx.time;
  std::string field;
  switch (condition.field) {
    case ContextField::kLocation:
      probe.attrs["location"] = ctx.location;
      field = "location";
      break;
    case ContextField::kPeer:
      probe.attrs["peer"] = ctx.peer;
      field = "peer";
      break;
    case ContextField::kDay:
      field = std::string(kDayField);
      break;
    case ContextField::kSlot:
      field = std::string(kSlotField);
      break;
  }
  return EvaluateComparison(Comparison{field, condition.op, condition.value}, probe);
}

std::vector<StaticRule> EvaluatePolicy(const PrivacyPolicy& policy,
                                       const Context& ctx) {
  std::vector<StaticRule> effective;
  for (const StaticRule& rule : policy.static_rules) {
    const DynamicRule* active = nullptr;
    for (const DynamicRule& dyn : policy.dynamic_rules) {
      if (dyn.overrides != rule.id) continue;
      const bool holds = std::all_of(
          dyn.when.begin(), dyn.when.end(),
          [&](const ContextCondition& c) { return ConditionHolds(c, ctx); });
      if (holds) {
        active = &dyn;
        break;
      }
    }
    if (active == nullptr) {
      effective.push_back(rule);
    } else if (const auto* body = std::get_if<RuleBody>(&active->replacement)) {
      effective.push_back(StaticRule{rule.id, body->trigger, body->put_knob});
    }
  }
  return effective;
}

std::vector<PolicyDiagnostic> ValidatePolicy(const PrivacyPolicy& policy,
                                             const ValidationContext& ctx) {
  using Severity = PolicyDiagnostic::Severity;
  std::vector<PolicyDiagnostic> out;
  const auto report = [&](Severity severity, std::string code, std::string rule_id,
                          std::string message) {
    out.push_back({severity, std::move(code), std::move(rule_id), std::move(message)});
  };

  if (policy.purpose_statements.empty()) {
    report(Severity::kError, "MissingPurpose", "",
           "policy states no purpose for the data uses it permits");
  }

  std::set<std::string> ids;
  const auto check_id = [&](const std::string& id) {
    if (!ids.insert(id).second) {
      report(Severity::kError, "DuplicateRuleId", id,
             StrCat("rule id '", id, "' is used more than once"));
    }
  };
  for (const StaticRule& r : policy.static_rules) check_id(r.id);
  for (const DynamicRule& r : policy.dynamic_rules) check_id(r.id);

  std::set<std::string> pattern_ids;
  for (const auto& sig : policy.patterns) {
    if (!pattern_ids.insert(sig.id).second) {
      report(Severity::kError, "DuplicatePatternId", "",
             StrCat("pattern id '", sig.id, "' is defined more than once"));
    }
    if (sig.steps.size() < 2) {
      report(Severity::kError, "InvalidRule", "",
             StrCat("pattern '", sig.id, "' needs at least two steps"));
    }
  }

  std::vector<std::string> concealed;
  const auto check_trigger = [&](const std::string& rule_id, const RuleTrigger& trigger,
                                 double knob) {
    if (!(knob >= 0.0 && knob <= 1.0)) {
      report(Severity::kError, "KnobOutOfRange", rule_id,
             StrCat("put_knob ", knob, " is outside [0, 1]"));
    }
    if (const auto* c = std::get_if<ConcealAttribute>(&trigger)) {
      if (!ctx.known_attributes.empty() && !Contains(ctx.known_attributes, c->attribute)) {
        report(Severity::kError, "UnknownAttribute", rule_id,
               StrCat("attribute '", c->attribute, "' is not produced by any stream"));
      }
      concealed.push_back(c->attribute);
    } else if (const auto* p = std::get_if<ProtectPattern>(&trigger)) {
      if (!pattern_ids.count(p->pattern_id)) {
        report(Severity::kError, "UnknownPattern", rule_id,
               StrCat("pattern '", p->pattern_id, "' is not in the catalog"));
      }
      ScheduleConfig probe;
      probe.relevance_intervals = p->occurrence_windows;
      std::sort(probe.relevance_intervals.begin(), probe.relevance_intervals.end(),
                [](const SlotRange& a, const SlotRange& b) { return a.start < b.start; });
      if (absl::Status st = probe.Validate(); !st.ok()) {
        report(Severity::kError, "InvalidRule", rule_id, std::string(st.message()));
      }
      if (p->occurrence_windows.empty()) {
        report(Severity::kError, "InvalidRule", rule_id,
               "protect_pattern rule declares no occurrence window");
      }
    } else if (const auto* s = std::get_if<RestrictSink>(&trigger)) {
      if (!pattern_ids.count(s->pattern_id)) {
        report(Severity::kError, "UnknownPattern", rule_id,
               StrCat("pattern '", s->pattern_id, "' is not in the catalog"));
      }
      if (s->publisher.empty()) {
        report(Severity::kError, "InvalidRule", rule_id, "empty sink publisher");
      }
    } else if (const auto* t = std::get_if<TrustNodes>(&trigger)) {
      for (const std::string& node : t->node_ids) {
        if (!ctx.known_nodes.empty() && !Contains(ctx.known_nodes, node)) {
          report(Severity::kError, "UnknownNode", rule_id,
                 StrCat("node '", node, "' is not in the topology"));
        }
      }
    }
  };

  for (const StaticRule& r : policy.static_rules) {
    check_trigger(r.id, r.trigger, r.put_knob);
  }
  std::set<std::string> static_ids;
  for (const StaticRule& r : policy.static_rules) static_ids.insert(r.id);
  for (const DynamicRule& r : policy.dynamic_rules) {
    if (!static_ids.count(r.overrides)) {
      report(Severity::kError, "DanglingOverride", r.id,
             StrCat("overrides unknown static rule '", r.overrides, "'"));
    }
    if (const auto* body = std::get_if<RuleBody>(&r.replacement)) {
      check_trigger(r.id, body->trigger, body->put_knob);
    }
  }

  if (!ctx.obfuscator_enabled) {
    std::set<std::string> warned;
    for (const std::string& attr : concealed) {
      if (!warned.insert(attr).second) continue;
      report(Severity::kAdvisory, "InferenceStillFeasible", "",
             StrCat("'", attr,
                    "' is withheld but no obfuscator is enabled; it can still be "
                    "inferred from correlated data"));
    }
  }
  return out;
}

bool HasErrors(const std::vector<PolicyDiagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(), [](const auto& d) {
    return d.severity == PolicyDiagnostic::Severity::kError;
  });
}

double KnobToEpsilon(double put_knob, double epsilon_min, double epsilon_max) {
  const double knob = std::clamp(put_knob, 0.0, 1.0);
  return epsilon_min + knob * (epsilon_max - epsilon_min);
}

absl::StatusOr<PpmCustomization> DerivePpmConfig(
    const std::vector<StaticRule>& effective_rules, const ScenarioConfig& config) {
  PpmCustomization out;
  std::vector<SlotRange> intervals;
  std::optional<double> epsilon;
  size_t longest_pattern = 0;

  const auto require_pattern =
      [&](std::string_view id) -> absl::StatusOr<const PrivatePatternSignature*> {
    const PrivatePatternSignature* sig = FindPattern(config.signatures, id);
    if (sig == nullptr) {
      return MakeError(absl::StatusCode::kNotFound, "UnknownPattern",
                       StrCat("pattern '", id, "' is not in the catalog"));
    }
    if (FindPattern(out.signatures, id) == nullptr) out.signatures.push_back(*sig);
    return sig;
  };

  for (const StaticRule& rule : effective_rules) {
    if (const auto* p = std::get_if<ProtectPattern>(&rule.trigger)) {
      PRISPS_ASSIGN_OR_RETURN(const PrivatePatternSignature* sig,
                              require_pattern(p->pattern_id));
      longest_pattern = std::max(longest_pattern, sig->steps.size());
      intervals.insert(intervals.end(), p->occurrence_windows.begin(),
                       p->occurrence_windows.end());
      const double eps =
          KnobToEpsilon(rule.put_knob, config.epsilon_min, config.epsilon_max);
      epsilon = epsilon.has_value() ? std::min(*epsilon, eps) : eps;
    } else if (const auto* s = std::get_if<RestrictSink>(&rule.trigger)) {
      PRISPS_ASSIGN_OR_RETURN(const PrivatePatternSignature* sig,
                              require_pattern(s->pattern_id));
      out.action_rules.push_back(ActionRule{StrCat("ar-", rule.id), sig->id,
                                            RewriteSink{s->publisher}, rule.id});
    } else if (const auto* t = std::get_if<TrustNodes>(&rule.trigger)) {
      if (!out.trusted_nodes.has_value()) out.trusted_nodes.emplace();
      for (const std::string& node : t->node_ids) {
        if (!config.node_ids.empty() && !Contains(config.node_ids, node)) {
          return MakeError(absl::StatusCode::kNotFound, "UnknownNode",
                           StrCat("node '", node, "' is not in the topology"));
        }
        if (!Contains(*out.trusted_nodes, node)) out.trusted_nodes->push_back(node);
      }
    } else if (const auto* c = std::get_if<ConcealAttribute>(&rule.trigger)) {
      if (!Contains(out.concealed_attributes, c->attribute)) {
        out.concealed_attributes.push_back(c->attribute);
      }
    }
  }

  if (epsilon.has_value()) {
    // Merge overlapping or touching windows declared by different rules.
    std::sort(intervals.begin(), intervals.end(),
              [](const SlotRange& a, const SlotRange& b) {
                return a.start != b.start ? a.start < b.start : a.end < b.end;
              });
    std::vector<SlotRange> merged;
    for (const SlotRange& r : intervals) {
      if (!merged.empty() && r.start <= merged.back().end + 1) {
        merged.back().end = std::max(merged.back().end, r.end);
      } else {
        merged.push_back(r);
      }
    }
    ScheduleConfig schedule;
    schedule.epsilon = *epsilon;
    schedule.w = static_cast<int>(std::max<size_t>(longest_pattern, 1));
    schedule.sensitivity = config.sensitivity;
    schedule.relevance_intervals = std::move(merged);
    schedule.n_days = std::max(config.n_days, 1);
    schedule.taper_mode = config.taper_mode;
    PRISPS_RETURN_IF_ERROR(schedule.Validate());
    out.schedule = std::move(schedule);
  }
  return out;
}

}  // namespace prisps
