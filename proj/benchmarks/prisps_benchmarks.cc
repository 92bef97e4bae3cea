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

#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "prisps/adversary.h"
#include "prisps/cep.h"
#include "prisps/dp.h"
#include "prisps/fixtures.h"
#include "prisps/placement.h"
#include "prisps/query.h"
#include "prisps/random.h"

namespace prisps {
namespace {

void BM_MatchSequence(benchmark::State& state) {
  Rng rng(1);
  const std::vector<std::string> alphabet = {"a", "b", "c", "d"};
  const EventStream stream =
      RandomActivityStream(rng, static_cast<int>(state.range(0)), alphabet);
  const SequencePattern pattern =
      *SequencePattern::FromActivities(std::vector<std::string>{"a", "b", "c"}, 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(MatchSequence(stream, pattern, 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MatchSequence)->Range(64, 16384);

void BM_ParseQuery(benchmark::State& state) {
  const std::string text = BobPrivateQueryText();
  for (auto _ : state) benchmark::DoNotOptimize(ParseQuery(text));
}
BENCHMARK(BM_ParseQuery);

void BM_AllocateStrict(benchmark::State& state) {
  ScheduleConfig c;
  c.w = 8;
  c.taper_mode = TaperMode::kStrict;
  const int horizon = static_cast<int>(state.range(0));
  for (int s = 1; s + 4 <= horizon; s += 16) c.relevance_intervals.push_back({s, s + 4});
  for (auto _ : state) benchmark::DoNotOptimize(AllocateBudget(c, horizon));
}
BENCHMARK(BM_AllocateStrict)->Range(64, 1440);

void BM_Sanitize(benchmark::State& state) {
  const int horizon = static_cast<int>(state.range(0));
  CountSeries q;
  q.values.assign(horizon, int64_t{1});
  ScheduleConfig c;
  c.w = 3;
  c.relevance_intervals = {{1, horizon}};
  const NoiseSchedule s = *AllocateBudget(c, horizon);
  uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(Sanitize(q, s, seed++));
  state.SetItemsProcessed(state.iterations() * horizon);
}
BENCHMARK(BM_Sanitize)->Range(64, 16384);

void BM_PlaceOperators(benchmark::State& state) {
  Rng rng(3);
  const Topology topo = RandomTopology(rng, static_cast<int>(state.range(0)));
  OperatorGraph g;
  g.operators.push_back({OperatorKind::kSource, "source"});
  for (int i = 0; i < state.range(1); ++i) g.operators.push_back({OperatorKind::kFilter, "f"});
  g.operators.push_back({OperatorKind::kSink, "sink"});
  for (auto _ : state) benchmark::DoNotOptimize(PlaceOperators(g, topo, false));
}
BENCHMARK(BM_PlaceOperators)->Args({8, 3})->Args({8, 5})->Args({16, 4});

void BM_TwoWorldAdvantage(benchmark::State& state) {
  CountSeries absent;
  absent.values = {0, 0, 0};
  CountSeries present = absent;
  present.values[1] = 1;
  ScheduleConfig c;
  c.relevance_intervals = {{1, 3}};
  const NoiseSchedule s = *AllocateBudget(c, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        PatternPresenceAdvantage(absent, present, s, static_cast<int>(state.range(0)), 42));
  }
}
BENCHMARK(BM_TwoWorldAdvantage)->Arg(10000);

void BM_ObfuscateFeatures(benchmark::State& state) {
  const auto windows = GenerateSyntheticAttributes({}, 42);
  for (auto _ : state) benchmark::DoNotOptimize(ObfuscateFeatures(windows, {"group", 1.0}));
}
BENCHMARK(BM_ObfuscateFeatures);

}  // namespace
}  // namespace prisps

BENCHMARK_MAIN();
