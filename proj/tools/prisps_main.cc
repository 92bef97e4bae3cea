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

// Command-line front end: runs a whole scenario or a single pipeline stage.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "prisps/errors.h"
#include "prisps/event_io.h"
#include "prisps/fixtures.h"
#include "prisps/json_formats.h"
#include "prisps/placement.h"
#include "prisps/policy.h"
#include "prisps/query.h"
#include "prisps/scenario.h"

namespace {

using prisps::kExitIoError;
using prisps::kExitOk;

void SetupLogging() {
  auto logger = spdlog::stderr_color_mt("prisps");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::info);
  if (const char* level = std::getenv("PRISPS_LOG")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
}

int Report(const absl::Status& status) {
  spdlog::error("{}", std::string(status.message()));
  return prisps::ExitCodeFor(status);
}

absl::StatusOr<prisps::QueryAst> LoadQuery(const std::string& path) {
  PRISPS_ASSIGN_OR_RETURN(std::string text, prisps::ReadTextFile(path));
  PRISPS_ASSIGN_OR_RETURN(prisps::QueryAst ast, prisps::ParseQuery(text));
  PRISPS_RETURN_IF_ERROR(prisps::ValidateQuery(ast));
  return ast;
}

absl::StatusOr<prisps::PrivacyPolicy> LoadPolicy(const std::string& path) {
  PRISPS_ASSIGN_OR_RETURN(std::string text, prisps::ReadTextFile(path));
  return prisps::ParsePolicyJson(text);
}

std::vector<double> ParseEpsList(const std::string& list) {
  std::vector<double> out;
  size_t start = 0;
  while (start <= list.size()) {
    const size_t comma = list.find(',', start);
    const std::string piece =
        list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!piece.empty()) out.push_back(std::stod(piece));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

struct ContextFlags {
  std::string location;
  std::string peer;
  int day = 1;
  int slot = 1;

  void Add(CLI::App* app) {
    app->add_option("--location", location, "Context location for dynamic rules");
    app->add_option("--peer", peer, "Context peer for dynamic rules");
    app->add_option("--day", day, "Context day");
    app->add_option("--slot", slot, "Context slot");
  }
  prisps::Context Get() const { return {location, {day, slot}, peer}; }
};

}  // namespace

int main(int argc, char** argv) {
  SetupLogging();
  CLI::App app{"Privacy-preserving stream processing toolkit"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run a scenario end to end");
  std::string scenario_path;
  std::string out_dir;
  std::optional<uint64_t> seed;
  std::string taper;
  std::string eps_list;
  std::optional<int> trials;
  run->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--seed", seed, "RNG seed (overrides the scenario)");
  run->add_option("--taper", taper, "Taper mode")
      ->check(CLI::IsMember({"table", "strict", "none"}));
  run->add_option("--eps", eps_list, "Comma-separated epsilon sweep");
  run->add_option("--trials", trials, "Noise draws per metric");

  // rewrite
  auto* rewrite = app.add_subcommand("rewrite", "Rewrite a query under a policy");
  std::string query_path;
  std::string policy_path;
  ContextFlags ctx_flags;
  rewrite->add_option("--query", query_path, "Query file")->required();
  rewrite->add_option("--policy", policy_path, "Policy JSON file")->required();
  ctx_flags.Add(rewrite);

  // sanitize
  auto* sanitize = app.add_subcommand("sanitize", "Sanitize a query's count series");
  std::string events_path;
  std::string config_path;
  uint64_t sanitize_seed = 0;
  int slot_seconds = 60;
  sanitize->add_option("--events", events_path, "Events JSONL file")->required();
  sanitize->add_option("--query", query_path, "Count query file")->required();
  sanitize->add_option("--config", config_path, "Schedule config JSON file")->required();
  sanitize->add_option("--seed", sanitize_seed, "RNG seed")->required();
  sanitize->add_option("--slot-seconds", slot_seconds, "Seconds per slot");

  // place
  auto* place = app.add_subcommand("place", "Place a query's operators");
  std::string topology_path;
  bool trusted_only = false;
  place->add_option("--query", query_path, "Query file")->required();
  place->add_option("--topology", topology_path, "Topology JSON file")->required();
  place->add_option("--policy", policy_path, "Policy JSON file (rewrite and trust)");
  place->add_flag("--trusted-only", trusted_only, "Restrict free operators to trusted nodes");
  ctx_flags.Add(place);

  // fixture
  auto* fixture = app.add_subcommand("fixture", "Write bundled fixtures");
  std::string fixture_name;
  uint64_t fixture_seed = 42;
  fixture->add_option("name", fixture_name, "bob | synthetic")
      ->required()
      ->check(CLI::IsMember({"bob", "synthetic"}));
  fixture->add_option("--out", out_dir, "Output directory")->required();
  fixture->add_option("--seed", fixture_seed, "Seed for synthetic data");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    auto scenario = prisps::LoadScenarioFile(scenario_path);
    if (!scenario.ok()) return Report(scenario.status());
    if (seed) scenario->seed = *seed;
    if (!taper.empty()) scenario->taper_mode = *prisps::ParseTaperMode(taper);
    if (!eps_list.empty()) {
      try {
        scenario->epsilons = ParseEpsList(eps_list);
      } catch (const std::exception&) {
        spdlog::error("--eps must be a comma-separated list of numbers");
        return kExitIoError;
      }
    }
    if (trials) scenario->trials = *trials;
    const prisps::RunResult result = prisps::RunScenario(
        *scenario, out_dir, [](std::string_view line) { spdlog::info("{}", line); });
    if (result.exit_code != kExitOk) spdlog::error("{}", result.message);
    return result.exit_code;
  }

  if (rewrite->parsed()) {
    auto ast = LoadQuery(query_path);
    if (!ast.ok()) return Report(ast.status());
    auto policy = LoadPolicy(policy_path);
    if (!policy.ok()) return Report(policy.status());
    auto outcome = prisps::RewriteWithPolicy(*ast, *policy, ctx_flags.Get());
    if (!outcome.ok()) return Report(outcome.status());
    for (const auto& entry : outcome->log) {
      spdlog::info("rule {} ({}) on {}: {}", entry.rule_id, entry.action, entry.signature_id,
                   entry.detail);
    }
    std::cout << prisps::PrintQuery(*outcome->query);
    return kExitOk;
  }

  if (sanitize->parsed()) {
    auto ast = LoadQuery(query_path);
    if (!ast.ok()) return Report(ast.status());
    auto events_text = prisps::ReadTextFile(events_path);
    if (!events_text.ok()) return Report(events_text.status());
    auto records = prisps::ParseEventsJsonl(*events_text);
    if (!records.ok()) return Report(records.status());
    const prisps::StreamSchema* schema =
        ast->FindStream(ast->pattern.bindings.front().stream);
    if (schema == nullptr) {
      spdlog::error("query does not define its input stream");
      return kExitIoError;
    }
    auto stream = prisps::IngestEvents(*records, *schema);
    if (!stream.ok()) return Report(stream.status());
    auto config_text = prisps::ReadTextFile(config_path);
    if (!config_text.ok()) return Report(config_text.status());
    auto config = prisps::ParseScheduleConfigJson(*config_text);
    if (!config.ok()) return Report(config.status());
    auto csv = prisps::SanitizeQueryCounts(*stream, *ast, config->first, config->second,
                                           sanitize_seed, slot_seconds);
    if (!csv.ok()) return Report(csv.status());
    std::cout << *csv;
    return kExitOk;
  }

  if (place->parsed()) {
    auto ast = LoadQuery(query_path);
    if (!ast.ok()) return Report(ast.status());
    auto topo_text = prisps::ReadTextFile(topology_path);
    if (!topo_text.ok()) return Report(topo_text.status());
    auto topology = prisps::ParseTopologyJson(*topo_text);
    if (!topology.ok()) return Report(topology.status());
    prisps::QueryAst deployed = *ast;
    prisps::Topology topo = *topology;
    if (!policy_path.empty()) {
      auto policy = LoadPolicy(policy_path);
      if (!policy.ok()) return Report(policy.status());
      auto outcome = prisps::RewriteWithPolicy(*ast, *policy, ctx_flags.Get());
      if (!outcome.ok()) return Report(outcome.status());
      deployed = *outcome->query;
      auto custom = prisps::CustomizeFromPolicy(*policy, ctx_flags.Get(), topo.NodeIds(), 1,
                                                prisps::TaperMode::kTable);
      if (!custom.ok()) return Report(custom.status());
      if (custom->trusted_nodes) topo = prisps::WithTrustedNodes(topo, *custom->trusted_nodes);
    }
    auto graph = prisps::BuildOperatorGraph(deployed);
    if (!graph.ok()) return Report(graph.status());
    auto placement = prisps::PlaceOperators(*graph, topo, trusted_only);
    if (!placement.ok()) return Report(placement.status());
    const std::string name = std::filesystem::path(query_path).stem().string();
    std::cout << prisps::FormatPlacementJson({{name, *placement}});
    return kExitOk;
  }

  if (fixture->parsed()) {
    absl::Status st;
    if (fixture_name == "bob") {
      st = prisps::WriteFixtureFiles(out_dir, prisps::GenerateBobFixture());
    } else {
      prisps::SyntheticAttributeSpec spec;
      st = prisps::WriteFixtureFiles(
          out_dir, {{"windows.jsonl", prisps::FormatFeatureWindowsJsonl(
                                          prisps::GenerateSyntheticAttributes(spec, fixture_seed))}});
    }
    if (!st.ok()) return Report(st);
    return kExitOk;
  }
  return kExitOk;
}
