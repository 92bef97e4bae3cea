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

#include "prisps/fixtures.h"

#include <filesystem>
#include <fstream>

#include "prisps/errors.h"
#include "prisps/event_io.h"
#include "str_util.h"

namespace prisps {
namespace {

constexpr const char* kBobDays[3][7] = {
    {"swallow", "drink", "lay down", "drink", "swallow", "lay down", "walk"},
    {"walk", "swallow", "drink", "lay down", "walk", "lay down", "drink"},
    {"swallow", "drink", "lay down", "walk", "swallow", "drink", "lay down"},
};

constexpr char kPolicyJson[] = R"({
  "user": "Bob",
  "purpose_statements": [
    "Detect Bob's walks for his fitness coaching app",
    "Share medication adherence only with Bob himself"
  ],
  "patterns": [
    {"id": "taking-medicine", "steps": ["swallow", "drink", "lay down"], "max_within": 2}
  ],
  "static_rules": [
    {
      "id": "protect-medicine",
      "trigger": {"type": "protect_pattern", "pattern": "taking-medicine", "occurrence_windows": [[1, 4]]},
      "put_knob": 0.0
    },
    {
      "id": "medicine-to-bob",
      "trigger": {"type": "restrict_sink", "pattern": "taking-medicine", "publisher": "Bob"},
      "put_knob": 0.0
    },
    {
      "id": "trusted-infrastructure",
      "trigger": {"type": "trust_nodes", "nodes": ["fog-home", "bob-cloud"]},
      "put_knob": 0.0
    }
  ],
  "dynamic_rules": [
    {
      "id": "at-clinic",
      "when": [{"field": "location", "op": "==", "value": "clinic"}],
      "overrides": "protect-medicine",
      "replacement": "suspend"
    }
  ]
}
)";

constexpr char kTopologyJson[] = R"({
  "nodes": [
    {"id": "bob-sensor", "layer": "sensor", "trusted": false, "capacity": 1},
    {"id": "fog-home", "layer": "fog", "trusted": true, "capacity": 4},
    {"id": "fog-edge", "layer": "fog", "trusted": false, "capacity": 4},
    {"id": "cloud-har", "layer": "cloud", "trusted": false, "capacity": 8},
    {"id": "bob-cloud", "layer": "cloud", "trusted": true, "capacity": 4, "owner": "Bob"}
  ],
  "links": [
    {"from": "bob-sensor", "to": "fog-home", "latency_ms": 2.0},
    {"from": "bob-sensor", "to": "fog-edge", "latency_ms": 1.0},
    {"from": "fog-home", "to": "fog-edge", "latency_ms": 3.0},
    {"from": "fog-edge", "to": "cloud-har", "latency_ms": 10.0},
    {"from": "fog-home", "to": "cloud-har", "latency_ms": 15.0},
    {"from": "fog-home", "to": "bob-cloud", "latency_ms": 12.0},
    {"from": "cloud-har", "to": "bob-cloud", "latency_ms": 5.0}
  ],
  "source_node": "bob-sensor",
  "consumer_node": "cloud-har"
}
)";

constexpr char kScenarioJson[] = R"({
  "events": "events.jsonl",
  "topology": "topology.json",
  "policy": "policy.json",
  "queries": ["queries/take_medicine.query", "queries/walks.query"],
  "seed": 42,
  "epsilons": [0.1, 0.5, 1, 2, 5, 10],
  "taper_mode": "table",
  "trials": 10000,
  "slot_seconds": 60,
  "epsilon_range": [0.1, 10],
  "context": {"location": "home", "peer": "", "day": 1, "slot": 1}
}
)";

}  // namespace

std::vector<RawEventRecord> BobEventRecords() {
  std::vector<RawEventRecord> records;
  for (int day = 1; day <= 3; ++day) {
    for (int slot = 1; slot <= 7; ++slot) {
      RawEventRecord rec;
      rec.day = day;
      rec.slot = slot;
      rec.stream = kBobStream;
      rec.activity = kBobDays[day - 1][slot - 1];
      records.push_back(std::move(rec));
    }
  }
  return records;
}

StreamSchema BobStreamSchema() {
  return StreamSchema{kBobStream,
                      {{"ts", FieldType::kLong},
                       {"cnt_swallow", FieldType::kInt},
                       {"cnt_drink", FieldType::kInt},
                       {"cnt_layd", FieldType::kInt}}};
}

EventStream BobEventStream() {
  const auto records = BobEventRecords();
  return *IngestEvents(records, BobStreamSchema());
}

std::string BobPrivateQueryText() {
  return "define stream TakeMedicineStr (ts long, cnt_swallow int,\n"
         "cnt_drink int, cnt_layd int);\n"
         "from every e1=TakeMedicineStr[ user_activity == 'swallow' ]\n"
         "     -> e2=TakeMedicineStr[ user_activity == 'drink' ]\n"
         "     -> e3=TakeMedicineStr[ user_activity == 'lay down' ]\n"
         "    within 2 min\n"
         "select e3.ts, count(e1.user_activity) as cnt_swallow,\n"
         "count(e2.user_activity) as cnt_drink,\n"
         "count(e3.user_activity) as cnt_layd\n"
         "insert into TakeMedicinePattern;\n";
}

std::string BobPublicQueryText() {
  return "define stream TakeMedicineStr (ts long, cnt_swallow int, cnt_drink int, "
         "cnt_layd int);\n"
         "from every e1=TakeMedicineStr[ user_activity == 'walk' ]\n"
         "    within 1 min\n"
         "select e1.ts\n"
         "insert into BobWalks;\n";
}

std::vector<std::pair<std::string, std::string>> GenerateBobFixture() {
  return {
      {"events.jsonl", FormatEventsJsonl(BobEventStream())},
      {"queries/take_medicine.query", BobPrivateQueryText()},
      {"queries/walks.query", BobPublicQueryText()},
      {"policy.json", kPolicyJson},
      {"topology.json", kTopologyJson},
      {"scenario.json", kScenarioJson},
  };
}

absl::Status WriteFixtureFiles(
    const std::string& dir,
    const std::vector<std::pair<std::string, std::string>>& files) {
  namespace fs = std::filesystem;
  for (const auto& [rel, contents] : files) {
    const fs::path path = fs::path(dir) / rel;
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    out << contents;
    if (ec || !out) {
      return MakeError(absl::StatusCode::kInternal, "IoError",
                       StrCat("cannot write ", path.string()));
    }
  }
  return absl::OkStatus();
}

std::vector<FeatureWindow> GenerateSyntheticAttributes(const SyntheticAttributeSpec& spec,
                                                       uint64_t seed) {
  Rng rng(seed);
  std::vector<FeatureWindow> out;
  for (int g = 0; g < spec.groups; ++g) {
    for (int i = 0; i < spec.windows_per_group; ++i) {
      const int activity = i % spec.activity_classes;
      FeatureWindow w;
      w.window_id = StrCat("g", g, "-w", i);
      w.group = StrCat("g", g);
      w.activity = StrCat("a", activity);
      w.features.resize(spec.dims);
      for (int d = 0; d < spec.dims; ++d) {
        double mean = g * spec.mean_shift_sigmas;
        if (d == activity % spec.dims) mean += spec.activity_separation;
        w.features[d] = mean + rng.Normal();
      }
      out.push_back(std::move(w));
    }
  }
  return out;
}

EventStream RandomActivityStream(Rng& rng, int length,
                                 const std::vector<std::string>& alphabet, int day) {
  std::vector<Event> events;
  for (int slot = 1; slot <= length; ++slot) {
    Event e;
    e.stream_name = "S";
    e.ts = {day, slot};
    e.activity = alphabet[rng.UniformInt(0, static_cast<int64_t>(alphabet.size()) - 1)];
    events.push_back(std::move(e));
  }
  return MakeDerivedStream(StreamSchema{"S", {}}, std::move(events));
}

Topology RandomTopology(Rng& rng, int n_nodes, int max_latency) {
  Topology topo;
  for (int i = 0; i < n_nodes; ++i) {
    TopologyNode node;
    node.id = StrCat("n", i);
    node.layer = i == 0 ? Layer::kSensor : (i == n_nodes - 1 ? Layer::kCloud : Layer::kFog);
    node.trusted = rng.Bernoulli(0.5);
    node.capacity = static_cast<int>(rng.UniformInt(1, 3));
    topo.nodes.push_back(std::move(node));
  }
  // Random spanning tree, then a few extra links.
  for (int i = 1; i < n_nodes; ++i) {
    const int parent = static_cast<int>(rng.UniformInt(0, i - 1));
    topo.links.push_back({topo.nodes[parent].id, topo.nodes[i].id,
                          static_cast<double>(rng.UniformInt(0, max_latency))});
  }
  const int extra = static_cast<int>(rng.UniformInt(0, n_nodes));
  for (int k = 0; k < extra && n_nodes > 1; ++k) {
    const int a = static_cast<int>(rng.UniformInt(0, n_nodes - 1));
    const int b = static_cast<int>(rng.UniformInt(0, n_nodes - 1));
    if (a == b) continue;
    topo.links.push_back({topo.nodes[a].id, topo.nodes[b].id,
                          static_cast<double>(rng.UniformInt(0, max_latency))});
  }
  topo.source_node = topo.nodes.front().id;
  topo.consumer_node = topo.nodes.back().id;
  return topo;
}

std::pair<ScheduleConfig, int> RandomScheduleConfig(Rng& rng, int max_horizon,
                                                    int max_w) {
  ScheduleConfig config;
  const int horizon = static_cast<int>(rng.UniformInt(1, max_horizon));
  config.w = static_cast<int>(rng.UniformInt(1, max_w));
  config.epsilon = 0.05 + 10.0 * rng.UniformOpen01();
  config.n_days = static_cast<int>(rng.UniformInt(1, 5));
  config.taper_mode = TaperMode::kStrict;
  int t = 1;
  while (t <= horizon) {
    const int gap = static_cast<int>(rng.UniformInt(0, 6));
    const int start = t + gap;
    if (start > horizon) break;
    const int end = std::min<int>(horizon, start + static_cast<int>(rng.UniformInt(0, 8)));
    config.relevance_intervals.push_back({start, end});
    // Leave at least one slot between intervals so they stay disjoint.
    t = end + 2;
  }
  return {config, horizon};
}

}  // namespace prisps
