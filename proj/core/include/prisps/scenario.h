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

#ifndef PRISPS_SCENARIO_H_
#define PRISPS_SCENARIO_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "prisps/access_control.h"
#include "prisps/cep.h"
#include "prisps/dp.h"
#include "prisps/json_formats.h"
#include "prisps/placement.h"
#include "prisps/policy.h"

namespace prisps {

// Exit codes of the scenario runner and the CLI subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIoError = 1;
inline constexpr int kExitPolicyError = 2;
inline constexpr int kExitInfeasiblePlacement = 3;

// Scenario file (JSON); paths are relative to the file's directory.
// {"events", "topology", "policy", "queries": [...], "seed"?, "epsilons"?,
//  "taper_mode"?, "trials"?, "slot_seconds"?, "epsilon_range"?: [min, max],
//  "horizon"?, "context"?: {"location", "peer", "day", "slot"}}
struct Scenario {
  std::string events_path;
  std::string topology_path;
  std::string policy_path;
  std::vector<std::string> query_paths;
  std::optional<uint64_t> seed;  // required before running
  std::vector<double> epsilons = {0.1, 1.0, 10.0};
  TaperMode taper_mode = TaperMode::kTable;
  int trials = 10000;
  int slot_seconds = 60;
  double epsilon_min = 0.1;
  double epsilon_max = 10.0;
  std::optional<int> horizon;  // default: largest slot in the events
  Context context;
};

absl::StatusOr<Scenario> ParseScenarioJson(std::string_view text,
                                           const std::string& base_dir);
absl::StatusOr<Scenario> LoadScenarioFile(const std::string& path);

absl::StatusOr<std::string> ReadTextFile(const std::string& path);
absl::Status WriteTextFile(const std::string& path, std::string_view contents);

using LogSink = std::function<void(std::string_view line)>;

struct RunResult {
  int exit_code = kExitOk;
  std::string message;
  std::vector<std::string> log;  // also written to run.log
};

// Runs load -> validate -> resolve -> rewrite -> customize -> place ->
// evaluate -> sanitize -> report and writes metrics.csv, schedule.csv,
// released.csv, placement.json, put_report.json, rewritten-queries/*.txt and
// run.log into `out_dir`. Outputs depend only on the scenario files and seed.
RunResult RunScenario(const Scenario& scenario, const std::string& out_dir,
                      const LogSink& log_sink = {});

// ---- Single stages, shared by the CLI subcommands -------------------------

// Effective rules under `ctx` mapped to mechanism settings; node ids are
// checked when `node_ids` is non-empty.
absl::StatusOr<PpmCustomization> CustomizeFromPolicy(
    const PrivacyPolicy& policy, const Context& ctx,
    const std::vector<std::string>& node_ids, int n_days, TaperMode taper_mode,
    double epsilon_min = 0.1, double epsilon_max = 10.0);

// Rewrites `ast` under the policy in force. Rejected queries yield a
// "QueryDenied" error.
absl::StatusOr<RewriteOutcome> RewriteWithPolicy(const QueryAst& ast,
                                                 const PrivacyPolicy& policy,
                                                 const Context& ctx,
                                                 int slot_seconds = 60);

// "slot,count,sanitized" with empty cells for undefined slots.
std::string FormatReleaseCsv(const CountSeries& truth, const SanitizedSeries& released);

// Count series of the sequence in `ast` over `stream`, then sanitized with a
// schedule allocated from `config` over `horizon` (0 = largest slot).
absl::StatusOr<std::string> SanitizeQueryCounts(const EventStream& stream,
                                                const QueryAst& ast,
                                                const ScheduleConfig& config,
                                                int horizon, uint64_t seed,
                                                int slot_seconds = 60);

// Maps a status to the exit code convention above.
int ExitCodeFor(const absl::Status& status);

}  // namespace prisps

#endif  // PRISPS_SCENARIO_H_
