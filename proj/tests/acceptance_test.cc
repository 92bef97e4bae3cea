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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Usage: acceptance_test [scratch_dir]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "oracles/budget_oracle.h"
#include "oracles/cep_oracle.h"
#include "oracles/placement_oracle.h"
#include "prisps/adversary.h"
#include "prisps/cep.h"
#include "prisps/dp.h"
#include "prisps/errors.h"
#include "prisps/event_io.h"
#include "prisps/fixtures.h"
#include "prisps/json_formats.h"
#include "prisps/placement.h"
#include "prisps/policy.h"
#include "prisps/query.h"
#include "prisps/random.h"
#include "prisps/scenario.h"

namespace prisps {
namespace {

namespace fs = std::filesystem;

const std::string kBobDir = std::string(PRISPS_FIXTURE_DIR) + "/bob";

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Detail string helper; formats like printf.
template <typename... Args>
std::string Fmt(const char* format, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

Outcome Fail(std::string why) { return {false, std::move(why)}; }

absl::StatusOr<EventStream> LoadBobEvents() {
  PRISPS_ASSIGN_OR_RETURN(std::string text, ReadTextFile(kBobDir + "/events.jsonl"));
  PRISPS_ASSIGN_OR_RETURN(auto records, ParseEventsJsonl(text));
  return IngestEvents(records, BobStreamSchema());
}

absl::StatusOr<PrivacyPolicy> LoadBobPolicy() {
  PRISPS_ASSIGN_OR_RETURN(std::string text, ReadTextFile(kBobDir + "/policy.json"));
  return ParsePolicyJson(text);
}

ScheduleConfig MedicineConfig(double eps, TaperMode mode = TaperMode::kTable) {
  ScheduleConfig c;
  c.epsilon = eps;
  c.w = 3;
  c.relevance_intervals = {{1, 4}};
  c.taper_mode = mode;
  return c;
}

CountSeries BobCounts() {
  const SequencePattern p =
      *SequencePattern::FromActivities(std::vector<std::string>{"swallow", "drink", "lay down"}, 2);
  return CountPatternCompletions(*LoadBobEvents(), p);
}

// 1
Outcome CountReproduction() {
  auto stream = LoadBobEvents();
  if (!stream.ok()) return Fail(std::string(stream.status().message()));
  const CountSeries q = BobCounts();
  const std::vector<std::optional<int64_t>> want = {std::nullopt, std::nullopt, 2, 1, 0, 0, 1};
  std::string got;
  for (const auto& v : q.values) got += (v ? std::to_string(*v) : "U") + " ";
  return {q.values == want, "Q = " + got};
}

// 2
Outcome TableScheduleReproduction() {
  const std::vector<std::optional<Rational>> want = {
      Rational(1, 3), Rational(1, 3), Rational(1, 3), Rational(1, 3),
      Rational(1, 2), Rational(1),    std::nullopt};
  if (oracle::TableShares({{1, 4}}, 3, 7) != want) return Fail("oracle disagrees with table");
  for (double eps : {0.1, 1.0, 10.0}) {
    auto s = AllocateBudget(MedicineConfig(eps), 7);
    if (!s.ok()) return Fail(std::string(s.status().message()));
    if (s->shares() != want) return Fail(Fmt("shares differ at eps=%g", eps));
    for (int t = 1; t <= 6; ++t) {
      if (*s->EpsilonAt(t) != want[t - 1]->ToDouble() * eps) {
        return Fail(Fmt("eps_t mismatch at slot %d, eps=%g", t, eps));
      }
    }
  }
  return {true, "[e/3 e/3 e/3 e/3 e/2 e NoNoise] for eps in {0.1, 1, 10}"};
}

// 3
Outcome StrictInvariant() {
  Rng rng(20260419);
  double worst_slack = INFINITY;
  for (int i = 0; i < 1000; ++i) {
    auto [config, horizon] = RandomScheduleConfig(rng, 64, 8);
    config.taper_mode = TaperMode::kStrict;
    auto s = AllocateBudget(config, horizon);
    if (!s.ok()) return Fail(Fmt("config %d: %s", i, std::string(s.status().message()).c_str()));
    const double spent = oracle::MaxWindowEpsilon(*s, config.w);
    if (spent > config.epsilon + 1e-12) return Fail(Fmt("config %d overspends", i));
    if (oracle::MaxWindowShare(s->shares(), config.w) > Rational(1)) {
      return Fail(Fmt("config %d overspends (exact)", i));
    }
    worst_slack = std::min(worst_slack, config.epsilon - spent);
  }
  for (double eps : {0.1, 1.0, 10.0}) {
    const NoiseSchedule table = *AllocateBudget(MedicineConfig(eps), 7);
    const WindowCheckReport r = WindowBudgetCheck(table, 3, eps);
    const bool found = std::any_of(r.violations.begin(), r.violations.end(), [&](const auto& v) {
      return v.start == 4 && v.end == 6 && v.spent_share == Rational(11, 6) &&
             std::fabs(v.spent - 11.0 * eps / 6.0) <= 1e-12 * eps;
    });
    if (!found) return Fail(Fmt("table violation missing at eps=%g", eps));
  }
  return {true, Fmt("1000 strict configs within budget (min slack %.3g); table [t4,t6] = 11e/6",
                    worst_slack)};
}

// 4
Outcome LaplaceStatistics() {
  constexpr int kN = 100000;
  std::string detail;
  for (double b : {0.3, 3.0, 30.0}) {
    Rng rng(1234);
    std::vector<double> xs(kN);
    for (double& x : xs) x = *SampleLaplace(b, rng);
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / kN;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double var = ss / (kN - 1);
    const double rel = std::fabs(var / (2 * b * b) - 1.0);
    if (rel > 0.05) return Fail(Fmt("b=%g variance off by %.3f", b, rel));
    if (std::fabs(mean) >= 5 * b / std::sqrt(double{kN})) return Fail(Fmt("b=%g mean %g", b, mean));
    Rng again(1234);
    std::vector<double> ys(kN);
    for (double& y : ys) y = *SampleLaplace(b, again);
    if (std::memcmp(xs.data(), ys.data(), kN * sizeof(double)) != 0) {
      return Fail(Fmt("b=%g stream not reproducible", b));
    }
    detail += Fmt("b=%g var_err=%.4f ", b, rel);
  }
  return {true, detail + "identical streams"};
}

// 5
Outcome AdversaryAdvantage() {
  std::string detail;
  CountSeries absent = BobCounts();
  CountSeries present = absent;
  *present.values[2] += 1;  // slot 3 has eps_t = eps/3
  for (double eps : {0.1, 10.0}) {
    const NoiseSchedule s = *AllocateBudget(MedicineConfig(eps), 7);
    auto adv = PatternPresenceAdvantage(absent, present, s, 10000, 42);
    if (!adv.ok()) return Fail(std::string(adv.status().message()));
    const double want = AnalyticAdvantage(eps / 3);
    detail += Fmt("eps=%g: %.4f vs %.4f  ", eps, *adv, want);
    if (std::fabs(*adv - want) > 0.03) return Fail(detail);
  }
  return {true, detail};
}

// 6
Outcome RewriteBitExactness() {
  auto ast = ParseQuery(BobPrivateQueryText());
  auto policy = LoadBobPolicy();
  if (!ast.ok() || !policy.ok()) return Fail("fixture load failed");
  const Context home{"home", {1, 1}, ""};
  auto once = RewriteWithPolicy(*ast, *policy, home);
  if (!once.ok() || once->rejected()) return Fail("rewrite failed");
  const std::string printed = PrintQuery(*once->query);
  const std::string sink = "@sink(publisher='Bob')";
  if (printed.find(sink) == std::string::npos) return Fail("sink annotation missing");
  if (printed != sink + "\n" + PrintQuery(*ast)) return Fail("other clauses changed");
  auto twice = RewriteWithPolicy(*once->query, *policy, home);
  if (!twice.ok() || twice->rejected() || PrintQuery(*twice->query) != printed) {
    return Fail("not idempotent");
  }
  return {true, "sink substring present, remaining clauses identical, idempotent"};
}

// 7
Outcome PlacementOracle() {
  Rng rng(77);
  const OperatorKind kFree[] = {OperatorKind::kFilter, OperatorKind::kSequenceMatcher,
                                OperatorKind::kAggregate};
  int constrained_feasible = 0;
  for (int i = 0; i < 100; ++i) {
    Topology topo = RandomTopology(rng, static_cast<int>(rng.UniformInt(2, 8)));
    OperatorGraph g;
    g.operators.push_back({OperatorKind::kSource, "source"});
    const int m = static_cast<int>(rng.UniformInt(1, 5));
    for (int j = 0; j < m; ++j) g.operators.push_back({kFree[rng.UniformInt(0, 2)], "op"});
    g.operators.push_back({OperatorKind::kSink, "sink"});

    const auto free_run = PlaceOperators(g, topo, false);
    const auto want = oracle::ExhaustivePlacement(g, topo, false);
    if (want.latency == oracle::kUnreachable) {
      if (free_run.ok()) return Fail(Fmt("instance %d: oracle infeasible", i));
      continue;
    }
    if (!free_run.ok()) return Fail(Fmt("instance %d: %s", i, std::string(free_run.status().message()).c_str()));
    if (free_run->total_latency_ms != want.latency || free_run->assignment != want.assignment) {
      return Fail(Fmt("instance %d: %g vs oracle %g", i, free_run->total_latency_ms, want.latency));
    }
    const auto trusted = PlaceOperators(g, topo, true);
    const auto want_trusted = oracle::ExhaustivePlacement(g, topo, true);
    if (trusted.ok() != (want_trusted.latency != oracle::kUnreachable)) {
      return Fail(Fmt("instance %d: constrained feasibility differs", i));
    }
    if (trusted.ok()) {
      ++constrained_feasible;
      if (trusted->total_latency_ms != want_trusted.latency) {
        return Fail(Fmt("instance %d: constrained differs from oracle", i));
      }
      if (trusted->total_latency_ms < free_run->total_latency_ms) {
        return Fail(Fmt("instance %d: constrained below unconstrained", i));
      }
    }
    const Topology all = WithTrustedNodes(topo, topo.NodeIds());
    const auto all_trusted = PlaceOperators(g, all, true);
    if (!all_trusted.ok() || all_trusted->total_latency_ms != free_run->total_latency_ms) {
      return Fail(Fmt("instance %d: all-trusted differs", i));
    }
  }
  return {true, Fmt("100 instances match oracle (%d constrained-feasible)", constrained_feasible)};
}

// 8
bool CepAgrees(const std::vector<oracle::OracleEvent>& plain,
               const std::vector<std::string>& steps, int within) {
  std::vector<Event> events;
  events.reserve(plain.size());
  for (const auto& e : plain) events.push_back(Event{"S", {1, e.slot}, e.activity, {}});
  const auto pattern = SequencePattern::FromActivities(steps, within);
  std::vector<std::vector<size_t>> got;
  for (const auto& m : MatchSequenceInDay(events, *pattern, 1)) got.push_back(m.event_indices);
  return got == oracle::BruteForceMatches(plain, steps, within);
}

Outcome CepOracle() {
  const std::vector<std::string> alphabet = {"a", "b", "c"};
  const std::vector<std::pair<std::vector<std::string>, int>> patterns = {
      {{"a", "b", "c"}, 3}, {{"a", "a", "b"}, 4}};
  long exhaustive = 0;
  for (int len = 0; len <= 12; ++len) {
    long total = 1;
    for (int i = 0; i < len; ++i) total *= 3;
    std::vector<oracle::OracleEvent> plain(len);
    for (long code = 0; code < total; ++code) {
      long c = code;
      for (int i = 0; i < len; ++i) {
        plain[i] = {alphabet[c % 3], i + 1};
        c /= 3;
      }
      for (const auto& [steps, within] : patterns) {
        if (!CepAgrees(plain, steps, within)) return Fail(Fmt("length %d stream %ld", len, code));
      }
      ++exhaustive;
    }
  }
  Rng rng(88);
  for (int i = 0; i < 1000; ++i) {
    const int len = static_cast<int>(rng.UniformInt(0, 50));
    std::vector<oracle::OracleEvent> plain;
    int slot = 1;
    for (int j = 0; j < len; ++j) {
      slot += static_cast<int>(rng.UniformInt(0, 2));
      plain.push_back({alphabet[rng.UniformInt(0, 2)], slot});
    }
    const int k = static_cast<int>(rng.UniformInt(1, 4));
    std::vector<std::string> steps;
    for (int j = 0; j < k; ++j) steps.push_back(alphabet[rng.UniformInt(0, 2)]);
    const int within = k - 1 + static_cast<int>(rng.UniformInt(0, 8));
    if (!CepAgrees(plain, steps, within)) return Fail(Fmt("random stream %d", i));
  }
  return {true, Fmt("%ld exhaustive streams x 2 patterns, 1000 random streams", exhaustive)};
}

// 9
Outcome ObfuscatorHarness() {
  const auto windows = GenerateSyntheticAttributes(SyntheticAttributeSpec{}, 42);
  auto obf = ObfuscateFeatures(windows, {"group", 1.0});
  if (!obf.ok()) return Fail(std::string(obf.status().message()));
  const double before = *InferAttribute(windows, InferenceTarget::kGroup, 42);
  const double after = *InferAttribute(*obf, InferenceTarget::kGroup, 42);
  const double act_before = *InferAttribute(windows, InferenceTarget::kActivity, 42);
  const double act_after = *InferAttribute(*obf, InferenceTarget::kActivity, 42);
  const bool pass = before >= 0.85 && after <= 0.60 && act_before - act_after <= 0.10;
  return {pass, Fmt("group %.3f -> %.3f, activity %.3f -> %.3f", before, after, act_before,
                    act_after)};
}

// 10
Outcome EndToEndDeterminism(const fs::path& scratch) {
  auto scenario = LoadScenarioFile(kBobDir + "/scenario.json");
  if (!scenario.ok()) return Fail(std::string(scenario.status().message()));
  scenario->seed = 42;
  const fs::path a = scratch / "run_a", b = scratch / "run_b";
  fs::remove_all(a);
  fs::remove_all(b);
  const RunResult ra = RunScenario(*scenario, a.string());
  const RunResult rb = RunScenario(*scenario, b.string());
  if (ra.exit_code != kExitOk || rb.exit_code != kExitOk) return Fail(ra.message + rb.message);
  for (const char* f : {"metrics.csv", "schedule.csv", "placement.json"}) {
    const auto x = ReadTextFile((a / f).string());
    const auto y = ReadTextFile((b / f).string());
    if (!x.ok() || !y.ok() || *x != *y) return Fail(std::string(f) + " differs");
  }
  return {true, "metrics.csv, schedule.csv, placement.json identical"};
}

// Spearman correlation of two equal-length sequences without ties.
double Spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const auto ranks = [](const std::vector<double>& v) {
    std::vector<size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (size_t i = 0; i < idx.size(); ++i) r[idx[i]] = static_cast<double>(i);
    return r;
  };
  const auto rx = ranks(x), ry = ranks(y);
  const double n = static_cast<double>(x.size());
  double d2 = 0.0;
  for (size_t i = 0; i < x.size(); ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
  return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

// 11
Outcome PutMonotonicity() {
  const std::vector<double> grid = {0.1, 0.5, 1, 2, 5, 10};
  std::vector<double> privacy, mae;
  for (double eps : grid) {
    PutInputs in;
    in.baseline = BobCounts();
    in.protected_intervals = {{1, 4}};
    in.run.ppm_id = "dp-table";
    in.run.schedule = *AllocateBudget(MedicineConfig(eps), 7);
    in.trials = 10000;
    in.seed = 42;
    auto r = ComputePut(in);
    if (!r.ok()) return Fail(std::string(r.status().message()));
    privacy.push_back(r->privacy.value);
    mae.push_back(*r->Utility(kCountMaeMetric));
  }
  bool strict = true;
  for (size_t i = 1; i < grid.size(); ++i) {
    strict = strict && privacy[i] > privacy[i - 1] && mae[i] < mae[i - 1];
  }
  const double rho_p = Spearman(grid, privacy), rho_m = Spearman(grid, mae);
  return {strict && rho_p == 1.0 && rho_m == -1.0,
          Fmt("rho(privacy)=%+.0f rho(mae)=%+.0f; adv %.4f..%.4f, mae %.3f..%.3f", rho_p, rho_m,
              privacy.front(), privacy.back(), mae.front(), mae.back())};
}

}  // namespace
}  // namespace prisps

int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  const fs::path scratch = argc > 1 ? fs::path(argv[1])
                                    : fs::temp_directory_path() / "prisps_acceptance";
  fs::create_directories(scratch);

  struct Criterion {
    const char* name;
    double budget_s;
    std::function<prisps::Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"C1 count series reproduction", 1, prisps::CountReproduction},
      {"C2 table schedule reproduction", 1, prisps::TableScheduleReproduction},
      {"C3 strict window invariant", 5, prisps::StrictInvariant},
      {"C4 Laplace statistics", 5, prisps::LaplaceStatistics},
      {"C5 adversary advantage vs analytic", 30, prisps::AdversaryAdvantage},
      {"C6 rewrite bit-exactness", 1, prisps::RewriteBitExactness},
      {"C7 placement oracle", 60, prisps::PlacementOracle},
      {"C8 CEP oracle", 60, prisps::CepOracle},
      {"C9 obfuscator harness", 10, prisps::ObfuscatorHarness},
      {"C10 end-to-end determinism", 10, [&] { return prisps::EndToEndDeterminism(scratch); }},
      {"C11 privacy-utility monotonicity", 60, prisps::PutMonotonicity},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    const prisps::Outcome out = c.run();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = out.pass && in_time;
    if (!pass) ++failures;
    std::printf("%s  %-36s %8.3fs (limit %gs)  %s%s\n", pass ? "PASS" : "FAIL", c.name, secs,
                c.budget_s, out.detail.c_str(), in_time ? "" : "  [over time limit]");
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
