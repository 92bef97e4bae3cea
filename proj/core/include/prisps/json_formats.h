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

#ifndef PRISPS_JSON_FORMATS_H_
#define PRISPS_JSON_FORMATS_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "prisps/adversary.h"
#include "prisps/dp.h"
#include "prisps/placement.h"
#include "prisps/policy.h"

namespace prisps {

// File formats shared by the CLI and the fixtures. Parsers reject unknown
// keys; malformed JSON is a ParseError, structural problems are
// SchemaMismatch. Writers emit keys in a fixed order so output is byte-stable.

// {"nodes": [{"id", "layer", "trusted", "capacity", "owner"?}],
//  "links": [{"from", "to", "latency_ms"}], "source_node", "consumer_node"}
absl::StatusOr<Topology> ParseTopologyJson(std::string_view text);
std::string FormatTopologyJson(const Topology& topo);

// {"user", "purpose_statements": [...],
//  "patterns": [{"id", "steps": [...], "max_within"}],
//  "static_rules": [{"id", "trigger": {"type", ...}, "put_knob"}],
//  "dynamic_rules": [{"id", "when": [{"field", "op", "value"}], "overrides",
//                     "replacement": "suspend" | {"trigger", "put_knob"}}]}
// Trigger types: conceal_attribute {attribute}, protect_pattern {pattern,
// occurrence_windows: [[start, end], ...]}, restrict_sink {pattern,
// publisher}, trust_nodes {nodes}.
absl::StatusOr<PrivacyPolicy> ParsePolicyJson(std::string_view text);
std::string FormatPolicyJson(const PrivacyPolicy& policy);

// {"epsilon", "w", "sensitivity", "relevance_intervals": [[s, e]], "n_days",
//  "taper_mode", "horizon"?}; returns the config and the optional horizon.
absl::StatusOr<std::pair<ScheduleConfig, int>> ParseScheduleConfigJson(
    std::string_view text);

struct NamedPlacement {
  std::string query;
  Placement placement;
};
std::string FormatPlacementJson(const std::vector<NamedPlacement>& placements);

std::string FormatPutReportJson(const std::vector<PutReport>& reports);

// One {"window_id", "features": [...], "group", "activity"} per line.
absl::StatusOr<std::vector<FeatureWindow>> ParseFeatureWindowsJsonl(
    std::string_view text);
std::string FormatFeatureWindowsJsonl(const std::vector<FeatureWindow>& windows);

}  // namespace prisps

#endif  // PRISPS_JSON_FORMATS_H_
