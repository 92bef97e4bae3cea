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

#ifndef PRISPS_DP_H_
#define PRISPS_DP_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "prisps/cep.h"
#include "prisps/random.h"
#include "prisps/rational.h"

namespace prisps {

// Relevance-interval sanitization of count series. Per-slot budgets are
// expressed as exact fractions ("shares") of the window budget epsilon; the
// Laplace scale at a noisy slot is sensitivity / (share * epsilon).

// How budgets decay after a relevance interval ends.
//   kTable:  interval slots get eps/w, then eps/2, then eps, then no noise.
//   kStrict: slots sharing a w-window with an interval slot get the largest
//            budget that keeps every w-window sum <= eps.
//   kNone:   eps/w inside intervals, no noise anywhere else.
enum class TaperMode { kTable, kStrict, kNone };

std::string_view TaperModeName(TaperMode mode);
std::optional<TaperMode> ParseTaperMode(std::string_view name);

// Closed slot range [start, end], 1-based.
struct SlotRange {
  int start = 1;
  int end = 1;

  friend bool operator==(const SlotRange&, const SlotRange&) = default;
};

struct ScheduleConfig {
  double epsilon = 1.0;      // budget per window of w slots
  int w = 1;                 // window length in slots
  double sensitivity = 1.0;  // global query sensitivity
  std::vector<SlotRange> relevance_intervals;  // sorted, non-overlapping
  int n_days = 1;            // cross-day sequential composition factor
  TaperMode taper_mode = TaperMode::kTable;

  absl::Status Validate() const;
};

class NoiseSchedule {
 public:
  NoiseSchedule() = default;
  NoiseSchedule(double epsilon, double sensitivity, int w, int composition_factor,
                std::vector<std::optional<Rational>> shares);

  // A schedule that adds no noise at any of `horizon` slots.
  static NoiseSchedule NoNoise(int horizon, double epsilon = 1.0,
                               double sensitivity = 1.0);

  int horizon() const { return static_cast<int>(shares_.size()); }
  double epsilon() const { return epsilon_; }
  double sensitivity() const { return sensitivity_; }
  int w() const { return w_; }
  int composition_factor() const { return composition_factor_; }

  bool IsNoisy(int slot) const { return shares_[slot - 1].has_value(); }
  // Share of epsilon spent at `slot`; nullopt for NoNoise.
  const std::optional<Rational>& Share(int slot) const { return shares_[slot - 1]; }
  // epsilon_t; nullopt for NoNoise.
  std::optional<double> EpsilonAt(int slot) const;
  // Laplace scale sensitivity / epsilon_t; nullopt for NoNoise.
  std::optional<double> ScaleAt(int slot) const;

  // Total budget consumed over all days (composition_factor * epsilon).
  double TotalBudget() const { return composition_factor_ * epsilon_; }

  const std::vector<std::optional<Rational>>& shares() const { return shares_; }

  friend bool operator==(const NoiseSchedule&, const NoiseSchedule&) = default;

 private:
  double epsilon_ = 1.0;
  double sensitivity_ = 1.0;
  int w_ = 1;
  int composition_factor_ = 1;
  std::vector<std::optional<Rational>> shares_;
};

// Builds the per-slot schedule. Errors: InvalidConfig (bad parameters,
// overlapping or unsorted intervals, interval past the horizon) and
// InfeasibleSchedule (strict mode cannot give a slot a positive budget).
absl::StatusOr<NoiseSchedule> AllocateBudget(const ScheduleConfig& config,
                                             int horizon);

// Laplace(0, scale) from one uniform draw u in (0, 1) by inverting the CDF.
// LaplaceFromUniform(0.5, b) == 0.
double LaplaceFromUniform(double u, double scale);

// Errors: InvalidScale when scale <= 0 or not finite.
absl::StatusOr<double> SampleLaplace(double scale, Rng& rng);

struct SanitizedSeries {
  std::vector<std::optional<double>> values;  // index 0 is slot 1
  NoiseSchedule schedule;
  uint64_t seed = 0;

  const std::optional<double>& at(int slot) const { return values[slot - 1]; }
};

// M(t) = Q(t) + Laplace(0, scale_t) at noisy slots, Q(t) elsewhere; Undefined
// passes through. One uniform is drawn per slot in slot order whether or not
// the slot is noisy, so a fixed seed gives the same draw at slot t under every
// schedule. Errors: HorizonMismatch when the schedule is shorter than q.
absl::StatusOr<SanitizedSeries> Sanitize(const CountSeries& q,
                                         const NoiseSchedule& schedule,
                                         uint64_t seed);

struct WindowViolation {
  int start = 1;  // first slot of the window
  int end = 1;    // last slot of the window
  Rational spent_share;  // sum of shares, as a multiple of schedule epsilon
  double spent = 0.0;    // spent_share * schedule epsilon

  friend bool operator==(const WindowViolation&, const WindowViolation&) = default;
};

struct WindowCheckReport {
  // Windows whose budget sum exceeds epsilon, NoNoise slots counting as 0.
  std::vector<WindowViolation> violations;
  // Windows that contain at least one NoNoise slot; under the reading where
  // an unperturbed release spends unbounded budget, each of these breaks.
  std::vector<SlotRange> unbounded_windows;
};

// Scans every window of w consecutive slots (the whole horizon when it is
// shorter than w). Comparisons are exact when `epsilon` equals the schedule's
// epsilon.
WindowCheckReport WindowBudgetCheck(const NoiseSchedule& schedule, int w,
                                    double epsilon);

// CSV with header "slot,epsilon_t,scale"; NoNoise slots leave both value
// columns empty. Values use fixed 6-decimal formatting.
std::string FormatScheduleCsv(const NoiseSchedule& schedule);

}  // namespace prisps

#endif  // PRISPS_DP_H_
