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

#ifndef PRISPS_TESTS_ORACLES_BUDGET_ORACLE_H_
#define PRISPS_TESTS_ORACLES_BUDGET_ORACLE_H_

#include <algorithm>
#include <optional>
#include <vector>

#include "prisps/dp.h"
#include "prisps/rational.h"

namespace prisps::oracle {

// Largest w-window share sum, NoNoise counting as zero. Windows are clipped
// to the horizon when it is shorter than w.
inline Rational MaxWindowShare(const std::vector<std::optional<Rational>>& shares, int w) {
  const int h = static_cast<int>(shares.size());
  const int len = std::min(w, h);
  Rational best(0);
  for (int start = 0; start + len <= h; ++start) {
    Rational sum(0);
    for (int t = start; t < start + len; ++t) {
      if (shares[t]) sum += *shares[t];
    }
    if (sum > best) best = sum;
  }
  return best;
}

// Same bound in floating point, from per-slot epsilons.
inline double MaxWindowEpsilon(const NoiseSchedule& schedule, int w) {
  const int h = schedule.horizon();
  const int len = std::min(w, h);
  double best = 0.0;
  for (int start = 1; start + len - 1 <= h; ++start) {
    double sum = 0.0;
    for (int t = start; t < start + len; ++t) sum += schedule.EpsilonAt(t).value_or(0.0);
    best = std::max(best, sum);
  }
  return best;
}

// Table taper written out slot by slot: 1/w inside an interval, then 1/2 and
// 1 on the two slots after its end (the smaller one where two intervals
// reach the same slot), NoNoise elsewhere.
inline std::vector<std::optional<Rational>> TableShares(
    const std::vector<SlotRange>& intervals, int w, int horizon) {
  std::vector<std::optional<Rational>> out(horizon);
  const auto inside = [&](int t) {
    return std::any_of(intervals.begin(), intervals.end(),
                       [&](const SlotRange& r) { return r.start <= t && t <= r.end; });
  };
  for (int t = 1; t <= horizon; ++t) {
    if (inside(t)) {
      out[t - 1] = Rational(1, w);
      continue;
    }
    for (const SlotRange& r : intervals) {
      std::optional<Rational> v;
      if (t == r.end + 1) v = Rational(1, 2);
      if (t == r.end + 2) v = Rational(1);
      if (v && (!out[t - 1] || *v < *out[t - 1])) out[t - 1] = v;
    }
  }
  return out;
}

}  // namespace prisps::oracle

#endif  // PRISPS_TESTS_ORACLES_BUDGET_ORACLE_H_
