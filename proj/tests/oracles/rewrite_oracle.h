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

#ifndef PRISPS_TESTS_ORACLES_REWRITE_ORACLE_H_
#define PRISPS_TESTS_ORACLES_REWRITE_ORACLE_H_

#include <cstddef>
#include <string>
#include <vector>

#include "prisps/policy.h"

namespace prisps::oracle {

// True when `needle` occurs in order (not necessarily contiguously) in
// `hay`. Plain two-index scan.
inline bool IsSubsequence(const std::vector<std::string>& needle,
                          const std::vector<std::string>& hay) {
  size_t i = 0;
  for (size_t j = 0; j < hay.size() && i < needle.size(); ++j) {
    if (hay[j] == needle[i]) ++i;
  }
  return i == needle.size();
}

// Effective rules in two passes: first decide the winning override per static
// rule id, then rebuild the list.
inline std::vector<StaticRule> TwoPassEffectiveRules(const PrivacyPolicy& policy,
                                                     const Context& ctx) {
  std::vector<const DynamicRule*> winner(policy.static_rules.size(), nullptr);
  for (size_t i = 0; i < policy.static_rules.size(); ++i) {
    for (const DynamicRule& d : policy.dynamic_rules) {
      if (d.overrides != policy.static_rules[i].id) continue;
      bool all = true;
      for (const ContextCondition& c : d.when) all = all && ConditionHolds(c, ctx);
      if (all) {
        winner[i] = &d;
        break;
      }
    }
  }
  std::vector<StaticRule> out;
  for (size_t i = 0; i < policy.static_rules.size(); ++i) {
    if (winner[i] == nullptr) {
      out.push_back(policy.static_rules[i]);
    } else if (const auto* body = std::get_if<RuleBody>(&winner[i]->replacement)) {
      out.push_back({policy.static_rules[i].id, body->trigger, body->put_knob});
    }
  }
  return out;
}

}  // namespace prisps::oracle

#endif  // PRISPS_TESTS_ORACLES_REWRITE_ORACLE_H_
