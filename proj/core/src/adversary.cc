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

#include "prisps/adversary.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "prisps/errors.h"
#include "prisps/random.h"
#include "str_util.h"

namespace prisps {

absl::StatusOr<std::vector<double>> TwoWorldAdvantages(
    const CountSeries& absent, const CountSeries& present,
    const NoiseSchedule& schedule, const std::vector<int>& slots, int trials,
    uint64_t seed) {
  if (trials <= 0) {
    return MakeError(absl::StatusCode::kInvalidArgument, "InvalidArgument",
                     "trials must be positive");
  }
  if (absent.horizon() != present.horizon()) {
    return MakeError(absl::StatusCode::kInvalidArgument, "HorizonMismatch",
                     "worlds have different horizons");
  }
  std::vector<double> thresholds;
  std::vector<bool> present_above;
  for (int t : slots) {
    if (t < 1 || t > absent.horizon() || !absent.at(t) || !present.at(t)) {
      return MakeError(absl::StatusCode::kInvalidArgument, "InvalidArgument",
                       StrCat("slot ", t, " is not defined in both worlds"));
    }
    const double a = static_cast<double>(*absent.at(t));
    const double b = static_cast<double>(*present.at(t));
    thresholds.push_back((a + b) / 2.0);
    present_above.push_back(b >= a);
  }

  std::vector<int64_t> true_pos(slots.size(), 0);
  std::vector<int64_t> false_pos(slots.size(), 0);
  for (int i = 0; i < trials; ++i) {
    const uint64_t idx = static_cast<uint64_t>(i);
    PRISPS_ASSIGN_OR_RETURN(SanitizedSeries world_a,
                            Sanitize(absent, schedule, DeriveSeed(seed, 2 * idx)));
    PRISPS_ASSIGN_OR_RETURN(SanitizedSeries world_b,
                            Sanitize(present, schedule, DeriveSeed(seed, 2 * idx + 1)));
    for (size_t k = 0; k < slots.size(); ++k) {
      const int t = slots[k];
      const auto says_present = [&](double x) {
        return present_above[k] ? x > thresholds[k] : x < thresholds[k];
      };
      if (says_present(*world_b.at(t))) ++true_pos[k];
      if (says_present(*world_a.at(t))) ++false_pos[k];
    }
  }
  std::vector<double> out;
  for (size_t k = 0; k < slots.size(); ++k) {
    const double adv =
        static_cast<double>(true_pos[k] - false_pos[k]) / static_cast<double>(trials);
    out.push_back(std::clamp(adv, 0.0, 1.0));
  }
  return out;
}

absl::StatusOr<double> PatternPresenceAdvantage(const CountSeries& absent,
                                                const CountSeries& present,
                                                const NoiseSchedule& schedule,
                                                int trials, uint64_t seed) {
  if (absent.horizon() != present.horizon()) {
    return MakeError(absl::StatusCode::kInvalidArgument, "HorizonMismatch",
                     "worlds have different horizons");
  }
  std::vector<int> differing;
  for (int t = 1; t <= absent.horizon(); ++t) {
    if (absent.at(t) != present.at(t)) differing.push_back(t);
  }
  if (differing.empty()) {
    return MakeError(absl::StatusCode::kInvalidArgument, "DegenerateWorlds",
                     "the two worlds are identical");
  }
  const int t = differing.front();
  if (differing.size() > 1 || !absent.at(t) || !present.at(t) ||
      std::llabs(*present.at(t) - *absent.at(t)) != 1) {
    return MakeError(absl::StatusCode::kInvalidArgument, "InvalidArgument",
                     "worlds must differ by exactly one at a single defined slot");
  }
  PRISPS_ASSIGN_OR_RETURN(
      std::vector<double> adv,
      TwoWorldAdvantages(absent, present, schedule, {t}, trials, seed));
  return adv.front();
}

double AnalyticAdvantage(double epsilon_t) { return -std::expm1(-epsilon_t / 2.0); }

absl::StatusOr<QueryAst> CraftInvasiveQuery(const QueryAst& base,
                                            const Predicate& filter) {
  if (filter.terms.empty()) {
    return MakeError(absl::StatusCode::kInvalidArgument, "EmptyPredicate",
                     "invasive filter has no terms");
  }
  if (base.pattern.bindings.empty()) {
    return MakeError(absl::StatusCode::kInvalidArgument, "InvalidQuery",
                     "query has no pattern bindings");
  }
  QueryAst out = base;
  PatternBinding& first = out.pattern.bindings.front();
  const StreamSchema* schema = base.FindStream(first.stream);
  for (const Comparison& c : filter.terms) {
    const std::optional<FieldType> type =
        schema != nullptr ? ResolveFieldType(*schema, c.field) : std::nullopt;
    if (!type.has_value()) {
      return MakeError(absl::StatusCode::kInvalidArgument, "UnknownField",
                       StrCat("stream '", first.stream, "' has no field '", c.field, "'"));
    }
    if (!LiteralCompatible(c.value, *type)) {
      return MakeError(absl::StatusCode::kInvalidArgument, "TypeMismatch",
                       StrCat("literal does not fit field '", c.field, "'"));
    }
    first.filter.terms.push_back(c);
  }
  return out;
}

std::optional<double> PutReport::Utility(std::string_view name) const {
  for (const Metric& m : utility) {
    if (m.name == name) return m.value;
  }
  return std::nullopt;
}

absl::StatusOr<PutReport> ComputePut(const PutInputs& inputs) {
  if (!inputs.baseline.has_value()) {
    return MakeError(absl::StatusCode::kFailedPrecondition, "MissingBaseline",
                     StrCat("no PPM-free run to compare '", inputs.run.ppm_id, "' against"));
  }
  const CountSeries& truth = *inputs.baseline;
  PutReport report;
  report.ppm_id = inputs.run.ppm_id;
  report.config = inputs.run.config;
  report.privacy.name = "attacker_advantage";

  double accuracy = 1.0;
  double mae = 0.0;
  if (!inputs.run.delivered) {
    report.privacy.value = 0.0;
  } else if (!inputs.run.schedule.has_value()) {
    report.privacy.value = 1.0;
  } else {
    const NoiseSchedule& schedule = *inputs.run.schedule;
    std::vector<int> protected_slots;
    for (const SlotRange& r : inputs.protected_intervals) {
      for (int t = std::max(r.start, 1); t <= std::min(r.end, truth.horizon()); ++t) {
        if (truth.at(t).has_value()) protected_slots.push_back(t);
      }
    }
    std::sort(protected_slots.begin(), protected_slots.end());
    protected_slots.erase(std::unique(protected_slots.begin(), protected_slots.end()),
                          protected_slots.end());
    if (protected_slots.empty()) {
      report.privacy.value = 1.0;
    } else {
      // The pattern-present world adds one completion at every protected slot;
      // each slot's test only looks at its own marginal.
      CountSeries present = truth;
      for (int t : protected_slots) present.values[t - 1] = *truth.at(t) + 1;
      PRISPS_ASSIGN_OR_RETURN(
          std::vector<double> adv,
          TwoWorldAdvantages(truth, present, schedule, protected_slots,
                             inputs.trials, inputs.seed));
      report.privacy.value = *std::max_element(adv.begin(), adv.end());
    }

    int64_t total_true = 0;
    int defined = 0;
    for (int t = 1; t <= truth.horizon(); ++t) {
      if (!truth.at(t)) continue;
      ++defined;
      total_true += *truth.at(t);
    }
    double acc_sum = 0.0;
    double mae_sum = 0.0;
    for (int i = 0; i < inputs.trials; ++i) {
      // Same streams as world A of the advantage estimate.
      PRISPS_ASSIGN_OR_RETURN(
          SanitizedSeries m,
          Sanitize(truth, schedule, DeriveSeed(inputs.seed, 2 * static_cast<uint64_t>(i))));
      int64_t hit = 0;
      double err = 0.0;
      for (int t = 1; t <= truth.horizon(); ++t) {
        if (!truth.at(t)) continue;
        const double q = static_cast<double>(*truth.at(t));
        err += std::abs(*m.at(t) - q);
        if (std::round(*m.at(t)) == q) hit += *truth.at(t);
      }
      acc_sum += total_true > 0 ? static_cast<double>(hit) / total_true : 1.0;
      mae_sum += defined > 0 ? err / defined : 0.0;
    }
    accuracy = acc_sum / inputs.trials;
    mae = mae_sum / inputs.trials;
  }
  report.utility = {{std::string(kPublicAccuracyMetric), accuracy},
                    {std::string(kCountMaeMetric), mae},
                    {std::string(kLatencyMetric), inputs.run.latency_ms}};
  return report;
}

std::string_view ThreatName(Threat threat) {
  switch (threat) {
    case Threat::kSensitiveAttributes:
      return "sensitive_attributes";
    case Threat::kPrivatePatterns:
      return "private_patterns";
    case Threat::kInvasiveQueries:
      return "invasive_queries";
  }
  return "private_patterns";
}

std::optional<Threat> ParseThreat(std::string_view name) {
  for (Threat t : {Threat::kSensitiveAttributes, Threat::kPrivatePatterns,
                   Threat::kInvasiveQueries}) {
    if (ThreatName(t) == name) return t;
  }
  return std::nullopt;
}

std::string_view CriterionName(Criterion criterion) {
  switch (criterion) {
    case Criterion::kPrivacyGuarantees:
      return "privacy_guarantees";
    case Criterion::kRuntime:
      return "runtime";
    case Criterion::kUtility:
      return "utility";
    case Criterion::kResources:
      return "resources";
    case Criterion::kScalability:
      return "scalability";
    case Criterion::kSetup:
      return "setup";
  }
  return "privacy_guarantees";
}

const std::vector<Criterion>& AllCriteria() {
  static const std::vector<Criterion> kAll = {
      Criterion::kPrivacyGuarantees, Criterion::kRuntime,     Criterion::kUtility,
      Criterion::kResources,         Criterion::kScalability, Criterion::kSetup};
  return kAll;
}

absl::StatusOr<std::vector<RankedPpm>> SelectPpm(
    const std::vector<PpmCandidate>& candidates, Threat threat,
    const std::map<Criterion, double>& weights) {
  double weight_sum = 0.0;
  for (const auto& [c, w] : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      return MakeError(absl::StatusCode::kInvalidArgument, "InvalidArgument",
                       StrCat("weight for ", CriterionName(c), " must be >= 0"));
    }
    weight_sum += w;
  }
  if (weight_sum <= 0.0) {
    return MakeError(absl::StatusCode::kInvalidArgument, "InvalidArgument",
                     "all criterion weights are zero");
  }
  std::vector<RankedPpm> ranked;
  for (const PpmCandidate& cand : candidates) {
    if (cand.threat != threat) continue;
    double score = 0.0;
    for (Criterion c : AllCriteria()) {
      const auto it = cand.scores.find(c);
      if (it == cand.scores.end() || !(it->second >= 0.0 && it->second <= 1.0)) {
        return MakeError(absl::StatusCode::kInvalidArgument, "InvalidArgument",
                         StrCat("candidate '", cand.id, "' lacks a valid ",
                                CriterionName(c), " score"));
      }
      const auto w = weights.find(c);
      if (w != weights.end()) score += w->second * it->second;
    }
    ranked.push_back({cand.id, score / weight_sum});
  }
  if (ranked.empty()) {
    return MakeError(absl::StatusCode::kNotFound, "NoCandidateForThreat",
                     StrCat("no candidate addresses ", ThreatName(threat)));
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const RankedPpm& a, const RankedPpm& b) {
                     return a.score != b.score ? a.score > b.score : a.id < b.id;
                   });
  return ranked;
}

}  // namespace prisps
