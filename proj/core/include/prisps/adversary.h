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

#ifndef PRISPS_ADVERSARY_H_
#define PRISPS_ADVERSARY_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "prisps/cep.h"
#include "prisps/dp.h"
#include "prisps/query.h"

namespace prisps {

// ---- Pattern presence on sanitized series ---------------------------------

// Empirical advantage (TPR - FPR, clamped to [0, 1]) of the likelihood-ratio
// test that tells world `absent` from world `present` by thresholding the
// sanitized value at the midpoint of the two true values. Trial i draws world
// A with DeriveSeed(seed, 2i) and world B with DeriveSeed(seed, 2i + 1).
// Returns one advantage per entry of `slots`.
absl::StatusOr<std::vector<double>> TwoWorldAdvantages(
    const CountSeries& absent, const CountSeries& present,
    const NoiseSchedule& schedule, const std::vector<int>& slots, int trials,
    uint64_t seed);

// The worlds must differ by exactly one at a single slot. Errors:
// DegenerateWorlds (identical), InvalidArgument (other differences).
absl::StatusOr<double> PatternPresenceAdvantage(const CountSeries& absent,
                                                const CountSeries& present,
                                                const NoiseSchedule& schedule,
                                                int trials, uint64_t seed);

// Total variation distance between Laplace(0, 1/eps) and Laplace(1, 1/eps).
double AnalyticAdvantage(double epsilon_t);

// ---- Invasive queries -----------------------------------------------------

// `base` with `filter` conjoined onto the first binding. Errors:
// EmptyPredicate, UnknownField.
absl::StatusOr<QueryAst> CraftInvasiveQuery(const QueryAst& base,
                                            const Predicate& filter);

// ---- Sensitive attributes -------------------------------------------------

struct FeatureWindow {
  std::string window_id;
  std::vector<double> features;
  std::string group;     // sensitive attribute value
  std::string activity;  // public label

  friend bool operator==(const FeatureWindow&, const FeatureWindow&) = default;
};

struct ObfuscationConfig {
  std::string concealed_attribute = "group";
  double strength = 1.0;  // 0 = identity, 1 = groups share mean and variance
};

// Group-conditional moment alignment: each group's per-dimension mean and
// standard deviation move toward the pooled mean and pooled within-group
// standard deviation by `strength`. Errors: SingleGroup, InvalidArgument.
absl::StatusOr<std::vector<FeatureWindow>> ObfuscateFeatures(
    const std::vector<FeatureWindow>& windows, const ObfuscationConfig& config);

enum class InferenceTarget { kGroup, kActivity };

// Nearest-centroid classifier trained on a seeded 70/30 split; returns test
// accuracy. Error: InsufficientData (< 2 classes or < 10 windows in a class).
absl::StatusOr<double> InferAttribute(const std::vector<FeatureWindow>& windows,
                                      InferenceTarget target, uint64_t seed);

// ---- Privacy-utility tradeoff ---------------------------------------------

struct Metric {
  std::string name;
  double value = 0.0;

  friend bool operator==(const Metric&, const Metric&) = default;
};

inline constexpr std::string_view kPublicAccuracyMetric = "public_event_accuracy";
inline constexpr std::string_view kCountMaeMetric = "count_mae";
inline constexpr std::string_view kLatencyMetric = "latency_ms";

struct PutReport {
  std::string ppm_id;
  Metric privacy;
  std::vector<Metric> utility;
  std::map<std::string, std::string> config;

  std::optional<double> Utility(std::string_view name) const;
};

struct PpmRun {
  std::string ppm_id;
  std::optional<NoiseSchedule> schedule;  // sanitization of the released series
  bool delivered = true;                  // consumer still receives results
  double latency_ms = 0.0;
  std::map<std::string, std::string> config;
};

struct PutInputs {
  // Released series without any PPM; required.
  std::optional<CountSeries> baseline;
  // Slots where the private pattern can complete.
  std::vector<SlotRange> protected_intervals;
  PpmRun run;
  int trials = 10000;
  uint64_t seed = 0;
};

// Privacy is the largest pattern-presence advantage over the defined slots
// inside the protected intervals (1 without sanitization, 0 when nothing is
// delivered). Utility: public event accuracy (share of true completions whose
// rounded release is exact), count MAE over defined slots, and latency; the
// first two are trial means. Error: MissingBaseline.
absl::StatusOr<PutReport> ComputePut(const PutInputs& inputs);

// ---- PPM selection --------------------------------------------------------

enum class Threat { kSensitiveAttributes, kPrivatePatterns, kInvasiveQueries };
enum class Criterion {
  kPrivacyGuarantees,
  kRuntime,
  kUtility,
  kResources,
  kScalability,
  kSetup,
};

std::string_view ThreatName(Threat threat);
std::optional<Threat> ParseThreat(std::string_view name);
std::string_view CriterionName(Criterion criterion);
const std::vector<Criterion>& AllCriteria();

struct PpmCandidate {
  std::string id;
  Threat threat = Threat::kPrivatePatterns;
  std::map<Criterion, double> scores;  // each in [0, 1]
};

struct RankedPpm {
  std::string id;
  double score = 0.0;
};

// Candidates for `threat`, by descending normalized weighted score, ties by
// id. Errors: InvalidArgument (bad weights or scores), NoCandidateForThreat.
absl::StatusOr<std::vector<RankedPpm>> SelectPpm(
    const std::vector<PpmCandidate>& candidates, Threat threat,
    const std::map<Criterion, double>& weights);

}  // namespace prisps

#endif  // PRISPS_ADVERSARY_H_
