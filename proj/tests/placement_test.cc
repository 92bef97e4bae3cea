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

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "oracles/placement_oracle.h"
#include "oracles/test_util.h"
#include "prisps/fixtures.h"
#include "prisps/json_formats.h"
#include "prisps/placement.h"
#include "prisps/query.h"
#include "prisps/random.h"

namespace prisps {
namespace {

using ::prisps::testing::KindOf;
using ::testing::ElementsAre;

Topology BobTopology() {
  for (const auto& [path, text] : GenerateBobFixture()) {
    if (path == "topology.json") return *ParseTopologyJson(text);
  }
  return {};
}

OperatorGraph Chain(int free_ops) {
  OperatorGraph g;
  g.operators.push_back({OperatorKind::kSource, "source"});
  for (int i = 0; i < free_ops; ++i) {
    g.operators.push_back({OperatorKind::kFilter, "filter:e" + std::to_string(i + 1)});
  }
  g.operators.push_back({OperatorKind::kSink, "sink"});
  return g;
}

TEST(TopologyTest, ValidateCatchesProblems) {
  Topology t = BobTopology();
  ASSERT_OK(t.Validate());
  Topology dup = t;
  dup.nodes.push_back(dup.nodes[0]);
  EXPECT_EQ(KindOf(dup.Validate()), "InvalidTopology");
  Topology bad_link = t;
  bad_link.links.push_back({"bob-sensor", "moon", 1});
  EXPECT_EQ(KindOf(bad_link.Validate()), "InvalidTopology");
  Topology neg = t;
  neg.links[0].latency_ms = -1;
  EXPECT_EQ(KindOf(neg.Validate()), "InvalidTopology");
  Topology cut = t;
  cut.links.clear();
  EXPECT_EQ(KindOf(cut.Validate()), "InvalidTopology");
}

TEST(ShortestPathTest, MatchesFloydWarshall) {
  Rng rng(17);
  for (int i = 0; i < 50; ++i) {
    const Topology t = RandomTopology(rng, static_cast<int>(rng.UniformInt(2, 9)));
    EXPECT_EQ(ShortestPathLatencies(t), oracle::FloydWarshall(t));
  }
}

TEST(OperatorGraphTest, MedicineQueryShape) {
  ASSERT_OK_AND_ASSIGN(OperatorGraph g, BuildOperatorGraph(*ParseQuery(BobPrivateQueryText())));
  EXPECT_THAT(g.Kinds(), ElementsAre(OperatorKind::kSource, OperatorKind::kSequenceMatcher,
                                     OperatorKind::kAggregate, OperatorKind::kSink));
  EXPECT_FALSE(g.sink_publisher.has_value());
}

TEST(OperatorGraphTest, FiltersForExtraTerms) {
  ASSERT_OK_AND_ASSIGN(
      QueryAst q, ParseQuery("@sink(publisher='Bob')\n"
                             "define stream S (ts long);\n"
                             "from every a=S[ user_activity == 'x' and ts > 3 ] within 1 min\n"
                             "select a.ts insert into O;"));
  ASSERT_OK_AND_ASSIGN(OperatorGraph g, BuildOperatorGraph(q));
  EXPECT_THAT(g.Kinds(),
              ElementsAre(OperatorKind::kSource, OperatorKind::kFilter, OperatorKind::kSink));
  EXPECT_EQ(g.operators[1].label, "filter:a");
  EXPECT_EQ(g.sink_publisher, "Bob");
}

TEST(OperatorGraphTest, RejectsMultipleStreams) {
  ASSERT_OK_AND_ASSIGN(
      QueryAst q, ParseQuery("define stream S (ts long);\ndefine stream T (ts long);\n"
                             "from every a=S[ ts > 1 ] -> b=T[ ts > 1 ] within 1 min\n"
                             "select a.ts insert into O;"));
  EXPECT_EQ(KindOf(BuildOperatorGraph(q).status()), "UnsupportedQueryShape");
}

TEST(PlaceOperatorsTest, BobMedicineQuery) {
  const Topology t = BobTopology();
  ASSERT_OK_AND_ASSIGN(OperatorGraph g, BuildOperatorGraph(*ParseQuery(BobPrivateQueryText())));
  ASSERT_OK_AND_ASSIGN(Placement p, PlaceOperators(g, t, false));
  EXPECT_TRUE(p.optimal);
  EXPECT_EQ(p.assignment.front(), "bob-sensor");
  EXPECT_EQ(p.assignment.back(), "cloud-har");
  EXPECT_EQ(p.total_latency_ms, 11.0);

  g.sink_publisher = "Bob";
  ASSERT_OK_AND_ASSIGN(Placement owned, PlaceOperators(g, t, true));
  EXPECT_THAT(owned.assignment, ElementsAre("bob-sensor", "fog-home", "fog-home", "bob-cloud"));
  EXPECT_EQ(owned.total_latency_ms, 14.0);
}

TEST(PlaceOperatorsTest, Infeasible) {
  Topology t = BobTopology();
  for (auto& n : t.nodes) n.trusted = false;
  EXPECT_EQ(KindOf(PlaceOperators(Chain(1), t, true).status()), "NoFeasiblePlacement");
  OperatorGraph g = Chain(1);
  g.sink_publisher = "Mallory";
  EXPECT_EQ(KindOf(PlaceOperators(g, BobTopology(), false).status()), "NoFeasiblePlacement");
}

TEST(PlaceOperatorsTest, GreedyFallbackIsFlagged) {
  Rng rng(2);
  const Topology t = RandomTopology(rng, 8);
  PlacementOptions opts;
  opts.exhaustive_limit = 1;
  auto p = PlaceOperators(Chain(3), t, opts);
  if (p.ok()) {
    EXPECT_FALSE(p->optimal);
    ASSERT_OK_AND_ASSIGN(double lat, EndToEndLatency(p->assignment, t));
    EXPECT_EQ(lat, p->total_latency_ms);
  }
}

TEST(PlaceOperatorsProperty, AgreesWithExhaustiveOracle) {
  Rng rng(23);
  for (int i = 0; i < 60; ++i) {
    const Topology t = RandomTopology(rng, static_cast<int>(rng.UniformInt(2, 7)));
    const OperatorGraph g = Chain(static_cast<int>(rng.UniformInt(0, 4)));
    for (bool trusted : {false, true}) {
      const oracle::OracleResult want = oracle::ExhaustivePlacement(g, t, trusted);
      auto got = PlaceOperators(g, t, trusted);
      if (want.latency == oracle::kUnreachable) {
        ASSERT_EQ(KindOf(got.status()), "NoFeasiblePlacement");
        continue;
      }
      ASSERT_OK(got.status());
      ASSERT_EQ(got->total_latency_ms, want.latency);
      ASSERT_EQ(got->assignment, want.assignment);
    }
  }
}

TEST(EndToEndLatencyTest, Errors) {
  const Topology t = BobTopology();
  EXPECT_EQ(*EndToEndLatency({"bob-sensor", "fog-edge", "cloud-har"}, t), 11.0);
  EXPECT_EQ(KindOf(EndToEndLatency({"bob-sensor", "moon"}, t).status()), "UnknownNode");
  Topology split = t;
  split.nodes.push_back({"island", Layer::kFog, true, 1, std::nullopt});
  EXPECT_EQ(KindOf(EndToEndLatency({"bob-sensor", "island"}, split).status()),
            "UnreachablePair");
}

TEST(WithTrustedNodesTest, SetsFlagsExactly) {
  const Topology t = WithTrustedNodes(BobTopology(), {"fog-edge"});
  for (const auto& n : t.nodes) EXPECT_EQ(n.trusted, n.id == "fog-edge") << n.id;
}

TEST(LayerTest, NamesRoundTrip) {
  for (Layer l : {Layer::kSensor, Layer::kFog, Layer::kCloud}) {
    EXPECT_EQ(ParseLayer(LayerName(l)), l);
  }
}

}  // namespace
}  // namespace prisps
