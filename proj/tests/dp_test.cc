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

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "oracles/budget_oracle.h"
#include "oracles/test_util.h"
#include "prisps/dp.h"
#include "prisps/fixtures.h"
#include "prisps/random.h"
#include "prisps/rational.h"

namespace prisps {
namespace {

using ::prisps::testing::KindOf;
using ::testing::ElementsAre;
using Shares = std::vector<std::optional<Rational>>;

ScheduleConfig MedicineConfig(double eps, TaperMode mode = TaperMode::kTable) {
  ScheduleConfig c;
  c.epsilon = eps;
  c.w = 3;
  c.relevance_intervals = {{1, 4}};
  c.taper_mode = mode;
  return c;
}

TEST(RationalTest, NormalizesAndCompares) {
  EXPECT_EQ(Rational(2, 4), Rational(1, 2));
  EXPECT_EQ(Rational(3, -6), Rational(-1, 2));
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
  EXPECT_EQ(Rational(1, 3) * Rational(3, 4), Rational(1, 4));
  EXPECT_EQ(Rational(1, 2) / Rational(1, 4), Rational(2));
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_EQ(Rational(-5, 6).ToString(), "-5/6");
  EXPECT_EQ(Rational(4, 2).ToString(), "2");
}

TEST(RngTest, FixedSeedIsReproducible) {
  Rng a(99), b(99);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a.NextU64(), b.NextU64());
  Rng c(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.UniformOpen01();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    const int64_t k = c.UniformInt(-3, 3);
    ASSERT_GE(k, -3);
    ASSERT_LE(k, 3);
  }
  EXPECT_NE(DeriveSeed(42, 0), DeriveSeed(42, 1));
}

TEST(AllocateBudgetTest, TableModeMatchesOracle) {
  ASSERT_OK_AND_ASSIGN(NoiseSchedule s, AllocateBudget(MedicineConfig(1.0), 7));
  const Rational third(1, 3);
  EXPECT_THAT(s.shares(), ElementsAre(third, third, third, third, Rational(1, 2),
                                      Rational(1), std::nullopt));
  EXPECT_EQ(s.shares(), oracle::TableShares({{1, 4}}, 3, 7));
}

TEST(AllocateBudgetTest, StrictModeMedicineWindow) {
  ASSERT_OK_AND_ASSIGN(NoiseSchedule s,
                       AllocateBudget(MedicineConfig(1.0, TaperMode::kStrict), 7));
  const Rational third(1, 3);
  EXPECT_THAT(s.shares(), ElementsAre(third, third, third, third, third, third,
                                      std::nullopt));
}

TEST(AllocateBudgetTest, NoneModeOnlyNoisesIntervals) {
  ASSERT_OK_AND_ASSIGN(NoiseSchedule s,
                       AllocateBudget(MedicineConfig(1.0, TaperMode::kNone), 7));
  EXPECT_FALSE(s.IsNoisy(5));
  EXPECT_TRUE(s.IsNoisy(4));
}

TEST(AllocateBudgetTest, ScalesAndCsv) {
  ScheduleConfig c = MedicineConfig(0.1);
  c.n_days = 3;
  ASSERT_OK_AND_ASSIGN(NoiseSchedule s, AllocateBudget(c, 7));
  EXPECT_DOUBLE_EQ(*s.ScaleAt(1), 30.0);
  EXPECT_DOUBLE_EQ(*s.ScaleAt(6), 10.0);
  EXPECT_FALSE(s.ScaleAt(7).has_value());
  EXPECT_DOUBLE_EQ(s.TotalBudget(), 0.3);
  EXPECT_EQ(FormatScheduleCsv(s),
            "slot,epsilon_t,scale\n"
            "1,0.033333,30.000000\n2,0.033333,30.000000\n3,0.033333,30.000000\n"
            "4,0.033333,30.000000\n5,0.050000,20.000000\n6,0.100000,10.000000\n7,,\n");
}

TEST(AllocateBudgetTest, InvalidConfigs) {
  ScheduleConfig c = MedicineConfig(1.0);
  c.epsilon = 0;
  EXPECT_EQ(KindOf(AllocateBudget(c, 7).status()), "InvalidConfig");
  c = MedicineConfig(1.0);
  c.w = 0;
  EXPECT_EQ(KindOf(AllocateBudget(c, 7).status()), "InvalidConfig");
  c = MedicineConfig(1.0);
  c.relevance_intervals = {{3, 5}, {5, 6}};
  EXPECT_EQ(KindOf(AllocateBudget(c, 7).status()), "InvalidConfig");
  c = MedicineConfig(1.0);
  EXPECT_EQ(KindOf(AllocateBudget(c, 3).status()), "InvalidConfig");
}

TEST(WindowBudgetCheckTest, TableModeOverspends) {
  ASSERT_OK_AND_ASSIGN(NoiseSchedule s, AllocateBudget(MedicineConfig(1.0), 7));
  const WindowCheckReport r = WindowBudgetCheck(s, 3, 1.0);
  // [t3,t5] = 7/6, [t4,t6] = 11/6, [t5,t7] = 3/2 with NoNoise counted as zero.
  std::vector<std::pair<SlotRange, Rational>> got;
  for (const auto& v : r.violations) got.push_back({{v.start, v.end}, v.spent_share});
  EXPECT_THAT(got, ElementsAre(std::pair{SlotRange{3, 5}, Rational(7, 6)},
                               std::pair{SlotRange{4, 6}, Rational(11, 6)},
                               std::pair{SlotRange{5, 7}, Rational(3, 2)}));
  EXPECT_THAT(r.unbounded_windows, ElementsAre(SlotRange{5, 7}));
}

TEST(WindowBudgetCheckTest, StrictModeIsClean) {
  ASSERT_OK_AND_ASSIGN(NoiseSchedule s,
                       AllocateBudget(MedicineConfig(1.0, TaperMode::kStrict), 7));
  EXPECT_TRUE(WindowBudgetCheck(s, 3, 1.0).violations.empty());
}

TEST(StrictModeProperty, WindowSumsStayWithinBudget) {
  Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    auto [config, horizon] = RandomScheduleConfig(rng, 40, 6);
    ASSERT_OK_AND_ASSIGN(NoiseSchedule s, AllocateBudget(config, horizon));
    ASSERT_LE(oracle::MaxWindowShare(s.shares(), config.w), Rational(1));
    for (const SlotRange& r : config.relevance_intervals) {
      for (int t = r.start; t <= r.end; ++t) ASSERT_EQ(s.Share(t), Rational(1, config.w));
    }
    ASSERT_TRUE(WindowBudgetCheck(s, config.w, config.epsilon).violations.empty());
  }
}

TEST(LaplaceTest, InverseCdf) {
  EXPECT_EQ(LaplaceFromUniform(0.5, 2.0), 0.0);
  EXPECT_NEAR(LaplaceFromUniform(0.75, 1.0), std::log(2.0), 1e-15);
  EXPECT_NEAR(LaplaceFromUniform(0.25, 1.0), -std::log(2.0), 1e-15);
}

TEST(LaplaceTest, InvalidScale) {
  Rng rng(1);
  EXPECT_EQ(KindOf(SampleLaplace(0.0, rng).status()), "InvalidScale");
  EXPECT_EQ(KindOf(SampleLaplace(-1.0, rng).status()), "InvalidScale");
  EXPECT_EQ(KindOf(SampleLaplace(INFINITY, rng).status()), "InvalidScale");
}

TEST(SanitizeTest, UndefinedAndNoNoisePassThrough) {
  CountSeries q;
  q.values = {std::nullopt, std::nullopt, 2, 1, 0, 0, 1};
  ASSERT_OK_AND_ASSIGN(NoiseSchedule s, AllocateBudget(MedicineConfig(1.0), 7));
  ASSERT_OK_AND_ASSIGN(SanitizedSeries out, Sanitize(q, s, 42));
  EXPECT_FALSE(out.at(1).has_value());
  EXPECT_FALSE(out.at(2).has_value());
  EXPECT_EQ(out.at(7), 1.0);
  EXPECT_NE(out.at(3), 2.0);
  ASSERT_OK_AND_ASSIGN(SanitizedSeries again, Sanitize(q, s, 42));
  EXPECT_EQ(again.values, out.values);
}

TEST(SanitizeTest, CommonRandomNumbersAcrossSchedules) {
  CountSeries q;
  q.values = {0, 0, 0, 0};
  ScheduleConfig c;
  c.w = 1;
  c.relevance_intervals = {{1, 4}};
  c.epsilon = 1.0;
  ASSERT_OK_AND_ASSIGN(NoiseSchedule s1, AllocateBudget(c, 4));
  c.epsilon = 4.0;
  ASSERT_OK_AND_ASSIGN(NoiseSchedule s4, AllocateBudget(c, 4));
  ASSERT_OK_AND_ASSIGN(SanitizedSeries a, Sanitize(q, s1, 5));
  ASSERT_OK_AND_ASSIGN(SanitizedSeries b, Sanitize(q, s4, 5));
  for (int t = 1; t <= 4; ++t) EXPECT_NEAR(*a.at(t), 4.0 * *b.at(t), 1e-12);
}

TEST(SanitizeTest, HorizonMismatch) {
  CountSeries q;
  q.values = {1, 2, 3};
  EXPECT_EQ(KindOf(Sanitize(q, NoiseSchedule::NoNoise(2), 0).status()), "HorizonMismatch");
}

TEST(TaperModeTest, NamesRoundTrip) {
  for (TaperMode m : {TaperMode::kTable, TaperMode::kStrict, TaperMode::kNone}) {
    EXPECT_EQ(ParseTaperMode(TaperModeName(m)), m);
  }
  EXPECT_FALSE(ParseTaperMode("linear").has_value());
}

}  // namespace
}  // namespace prisps
