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

#include "prisps/dp.h"

#include <algorithm>
#include <cmath>

#include "str_util.h"
#include "prisps/errors.h"

namespace prisps {
namespace {

absl::Status InvalidConfig(std::string_view detail) {
  return MakeError(absl::StatusCode::kInvalidArgument, "InvalidConfig", detail);
}

// Windows of w consecutive slots fully inside [1, horizon]; a single window
// covering everything when horizon < w.
std::vector<SlotRange> Windows(int horizon, int w) {
  std::vector<SlotRange> windows;
  if (horizon <= 0) return windows;
  if (horizon < w) {
    windows.push_back({1, horizon});
    return windows;
  }
  for (int start = 1; start + w - 1 <= horizon; ++start) {
    windows.push_back({start, start + w - 1});
  }
  return windows;
}

absl::StatusOr<std::vector<std::optional<Rational>>> StrictShares(
    const std::vector<char>& in_interval, int w) {
  const int horizon = static_cast<int>(in_interval.size());
  const Rational uniform(1, w);
  const std::vector<SlotRange> windows = Windows(horizon, w);

  std::vector<char> candidate(horizon, 0);
  for (const SlotRange& win : windows) {
    bool touches = false;
    for (int t = win.start; t <= win.end; ++t) touches |= in_interval[t - 1] != 0;
    if (!touches) continue;
    for (int t = win.start; t <= win.end; ++t) {
      if (!in_interval[t - 1]) candidate[t - 1] = 1;
    }
  }

  // Working values: interval slots and not-yet-assigned candidates hold the
  // uniform share as a reservation, so every window stays within budget
  // throughout the greedy pass.
  std::vector<Rational> value(horizon, Rational(0));
  for (int t = 1; t <= horizon; ++t) {
    if (in_interval[t - 1] || candidate[t - 1]) value[t - 1] = uniform;
  }

  std::vector<std::optional<Rational>> shares(horizon);
  for (int t = 1; t <= horizon; ++t) {
    if (in_interval[t - 1]) shares[t - 1] = uniform;
  }
  for (int t = 1; t <= horizon; ++t) {
    if (!candidate[t - 1]) continue;
    std::optional<Rational> best;
    for (const SlotRange& win : windows) {
      if (t < win.start || t > win.end) continue;
      Rational room(1);
      for (int u = win.start; u <= win.end; ++u) {
        if (u != t) room -= value[u - 1];
      }
      if (!best.has_value() || room < *best) best = room;
    }
    if (!best.has_value() || *best <= Rational(0)) {
      return MakeError(absl::StatusCode::kFailedPrecondition,
                       "InfeasibleSchedule",
                       StrCat("no positive budget fits slot ", t));
    }
    value[t - 1] = *best;
    shares[t - 1] = *best;
  }
  return shares;
}

}  // namespace

std::string_view TaperModeName(TaperMode mode) {
  switch (mode) {
    case TaperMode::kTable:
      return "table";
    case TaperMode::kStrict:
      return "strict";
    case TaperMode::kNone:
      return "none";
  }
  return "table";
}

std::optional<TaperMode> ParseTaperMode(std::string_view name) {
  if (name == "table") return TaperMode::kTable;
  if (name == "strict") return TaperMode::kStrict;
  if (name == "none") return TaperMode::kNone;
  return std::nullopt;
}

absl::Status ScheduleConfig::Validate() const {
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    return InvalidConfig(StrCat("epsilon must be positive and finite, got ",
                                      epsilon));
  }
  if (w < 1) return InvalidConfig(StrCat("w must be >= 1, got ", w));
  if (!(sensitivity > 0) || !std::isfinite(sensitivity)) {
    return InvalidConfig("sensitivity must be positive and finite");
  }
  if (n_days < 1) return InvalidConfig("n_days must be >= 1");
  for (size_t i = 0; i < relevance_intervals.size(); ++i) {
    const SlotRange& r = relevance_intervals[i];
    if (r.start < 1 || r.end < r.start) {
      return InvalidConfig(
          StrCat("malformed relevance interval [", r.start, ",", r.end, "]"));
    }
    if (i > 0 && relevance_intervals[i - 1].end >= r.start) {
      return InvalidConfig("relevance intervals must be sorted and non-overlapping");
    }
  }
  return absl::OkStatus();
}

NoiseSchedule::NoiseSchedule(double epsilon, double sensitivity, int w,
                             int composition_factor,
                             std::vector<std::optional<Rational>> shares)
    : epsilon_(epsilon),
      sensitivity_(sensitivity),
      w_(w),
      composition_factor_(composition_factor),
      shares_(std::move(shares)) {}

NoiseSchedule NoiseSchedule::NoNoise(int horizon, double epsilon,
                                     double sensitivity) {
  return NoiseSchedule(epsilon, sensitivity, 1, 1,
                       std::vector<std::optional<Rational>>(horizon));
}

std::optional<double> NoiseSchedule::EpsilonAt(int slot) const {
  const auto& share = shares_[slot - 1];
  if (!share.has_value()) return std::nullopt;
  return share->ToDouble() * epsilon_;
}

std::optional<double> NoiseSchedule::ScaleAt(int slot) const {
  const std::optional<double> eps = EpsilonAt(slot);
  if (!eps.has_value()) return std::nullopt;
  return sensitivity_ / *eps;
}

absl::StatusOr<NoiseSchedule> AllocateBudget(const ScheduleConfig& config,
                                             int horizon) {
  PRISPS_RETURN_IF_ERROR(config.Validate());
  if (horizon < 0) return InvalidConfig("horizon must be non-negative");
  for (const SlotRange& r : config.relevance_intervals) {
    if (r.end > horizon) {
      return InvalidConfig(StrCat("relevance interval [", r.start, ",",
                                        r.end, "] exceeds horizon ", horizon));
    }
  }

  std::vector<char> in_interval(horizon, 0);
  for (const SlotRange& r : config.relevance_intervals) {
    for (int t = r.start; t <= r.end; ++t) in_interval[t - 1] = 1;
  }

  const Rational uniform(1, config.w);
  std::vector<std::optional<Rational>> shares(horizon);
  switch (config.taper_mode) {
    case TaperMode::kNone:
      for (int t = 1; t <= horizon; ++t) {
        if (in_interval[t - 1]) shares[t - 1] = uniform;
      }
      break;
    case TaperMode::kTable: {
      for (int t = 1; t <= horizon; ++t) {
        if (in_interval[t - 1]) shares[t - 1] = uniform;
      }
      const Rational taper[] = {Rational(1, 2), Rational(1)};
      for (const SlotRange& r : config.relevance_intervals) {
        for (int step = 0; step < 2; ++step) {
          const int t = r.end + 1 + step;
          if (t > horizon || in_interval[t - 1]) continue;
          auto& slot_share = shares[t - 1];
          if (!slot_share.has_value() || taper[step] < *slot_share) {
            slot_share = taper[step];
          }
        }
      }
      break;
    }
    case TaperMode::kStrict: {
      PRISPS_ASSIGN_OR_RETURN(shares, StrictShares(in_interval, config.w));
      break;
    }
  }
  return NoiseSchedule(config.epsilon, config.sensitivity, config.w,
                       config.n_days, std::move(shares));
}

double LaplaceFromUniform(double u, double scale) {
  const double centered = u - 0.5;
  if (centered == 0.0) return 0.0;
  const double magnitude = -scale * std::log1p(-2.0 * std::fabs(centered));
  return centered < 0 ? -magnitude : magnitude;
}

absl::StatusOr<double> SampleLaplace(double scale, Rng& rng) {
  if (!(scale > 0) || !std::isfinite(scale)) {
    return MakeError(absl::StatusCode::kInvalidArgument, "InvalidScale",
                     StrCat("Laplace scale must be positive, got ", scale));
  }
  return LaplaceFromUniform(rng.UniformOpen01(), scale);
}

absl::StatusOr<SanitizedSeries> Sanitize(const CountSeries& q,
                                         const NoiseSchedule& schedule,
                                         uint64_t seed) {
  if (schedule.horizon() < q.horizon()) {
    return MakeError(absl::StatusCode::kInvalidArgument, "HorizonMismatch",
                     StrCat("schedule covers ", schedule.horizon(),
                                  " slots, series has ", q.horizon()));
  }
  SanitizedSeries out;
  out.schedule = schedule;
  out.seed = seed;
  out.values.resize(q.horizon());
  Rng rng(seed);
  for (int t = 1; t <= q.horizon(); ++t) {
    const double u = rng.UniformOpen01();
    const auto& truth = q.at(t);
    if (!truth.has_value()) continue;
    const double exact = static_cast<double>(*truth);
    const std::optional<double> scale = schedule.ScaleAt(t);
    out.values[t - 1] = scale.has_value() ? exact + LaplaceFromUniform(u, *scale)
                                          : exact;
  }
  return out;
}

WindowCheckReport WindowBudgetCheck(const NoiseSchedule& schedule, int w,
                                    double epsilon) {
  WindowCheckReport report;
  const bool exact = epsilon == schedule.epsilon();
  for (const SlotRange& win : Windows(schedule.horizon(), std::max(w, 1))) {
    Rational spent(0);
    bool has_unperturbed = false;
    for (int t = win.start; t <= win.end; ++t) {
      if (const auto& share = schedule.Share(t)) {
        spent += *share;
      } else {
        has_unperturbed = true;
      }
    }
    const double spent_value = spent.ToDouble() * schedule.epsilon();
    const bool violated = exact ? spent > Rational(1) : spent_value > epsilon;
    if (violated) {
      report.violations.push_back({win.start, win.end, spent, spent_value});
    }
    if (has_unperturbed) report.unbounded_windows.push_back(win);
  }
  return report;
}

std::string FormatScheduleCsv(const NoiseSchedule& schedule) {
  std::string out = "slot,epsilon_t,scale\n";
  for (int t = 1; t <= schedule.horizon(); ++t) {
    const std::optional<double> eps = schedule.EpsilonAt(t);
    if (eps.has_value()) {
      fmt::format_to(std::back_inserter(out), "{},{:.6f},{:.6f}\n", t, *eps,
                     *schedule.ScaleAt(t));
    } else {
      fmt::format_to(std::back_inserter(out), "{},,\n", t);
    }
  }
  return out;
}

}  // namespace prisps
