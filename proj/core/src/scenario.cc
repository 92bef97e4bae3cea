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

#include "prisps/scenario.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "prisps/adversary.h"
#include "prisps/errors.h"
#include "prisps/event_io.h"
#include "str_util.h"

namespace prisps {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

std::string Fixed(double v) { return fmt::format("{:.6f}", v); }

std::string Resolve(const std::string& base_dir, const std::string& path) {
  if (path.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(base_dir) / path).lexically_normal().string();
}

// Collects stage lines; mirrors them to the optional sink.
class RunLog {
 public:
  explicit RunLog(const LogSink& sink) : sink_(sink) {}

  template <typename... Args>
  void Line(const Args&... args) {
    lines_.push_back(StrCat(args...));
    if (sink_) sink_(lines_.back());
  }
  std::vector<std::string>& lines() { return lines_; }

 private:
  const LogSink& sink_;
  std::vector<std::string> lines_;
};

struct MetricsRow {
  std::string ppm_id;
  std::optional<double> epsilon;
  double privacy = 0.0;
  double mae = 0.0;
  double accuracy = 1.0;
  double latency = 0.0;
};

std::string FormatMetricsCsv(const std::vector<MetricsRow>& rows) {
  std::string out = "ppm_id,epsilon,privacy_metric,count_mae,public_event_accuracy,latency_ms\n";
  for (const auto& r : rows) {
    StrAppend(&out, r.ppm_id, ",", r.epsilon ? Fixed(*r.epsilon) : "", ",",
              Fixed(r.privacy), ",", Fixed(r.mae), ",", Fixed(r.accuracy), ",",
              Fixed(r.latency), "\n");
  }
  return out;
}

struct LoadedQuery {
  std::string name;  // file stem
  QueryAst ast;
};

struct Failure {
  int exit_code;
  absl::Status status;
};

}  // namespace

absl::StatusOr<std::string> ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return MakeError(absl::StatusCode::kNotFound, "IoError",
                     StrCat("cannot open ", path));
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

absl::Status WriteTextFile(const std::string& path, std::string_view contents) {
  std::error_code ec;
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent, ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (ec || !out) {
    return MakeError(absl::StatusCode::kInternal, "IoError", StrCat("cannot write ", path));
  }
  return absl::OkStatus();
}

absl::StatusOr<Scenario> ParseScenarioJson(std::string_view text,
                                           const std::string& base_dir) {
  Json doc = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) {
    return MakeError(absl::StatusCode::kInvalidArgument, "ParseError",
                     "scenario is not a JSON object");
  }
  static const std::set<std::string> kKeys = {
      "events", "topology",     "policy",        "queries", "seed",    "epsilons",
      "taper_mode", "trials", "slot_seconds", "epsilon_range", "horizon", "context"};
  for (const auto& [key, value] : doc.items()) {
    if (!kKeys.count(key)) {
      return MakeError(absl::StatusCode::kInvalidArgument, "SchemaMismatch",
                       StrCat("unknown scenario key '", key, "'"));
    }
  }
  Scenario sc;
  try {
    sc.events_path = Resolve(base_dir, doc.at("events").get<std::string>());
    sc.topology_path = Resolve(base_dir, doc.at("topology").get<std::string>());
    sc.policy_path = Resolve(base_dir, doc.at("policy").get<std::string>());
    for (const auto& q : doc.at("queries")) {
      sc.query_paths.push_back(Resolve(base_dir, q.get<std::string>()));
    }
    if (doc.contains("seed")) sc.seed = doc["seed"].get<uint64_t>();
    if (doc.contains("epsilons")) sc.epsilons = doc["epsilons"].get<std::vector<double>>();
    if (doc.contains("taper_mode")) {
      const auto mode = ParseTaperMode(doc["taper_mode"].get<std::string>());
      if (!mode) {
        return MakeError(absl::StatusCode::kInvalidArgument, "SchemaMismatch",
                         "unknown taper_mode");
      }
      sc.taper_mode = *mode;
    }
    if (doc.contains("trials")) sc.trials = doc["trials"].get<int>();
    if (doc.contains("slot_seconds")) sc.slot_seconds = doc["slot_seconds"].get<int>();
    if (doc.contains("epsilon_range")) {
      const auto range = doc["epsilon_range"].get<std::vector<double>>();
      if (range.size() != 2 || !(range[0] > 0.0) || range[1] < range[0]) {
        return MakeError(absl::StatusCode::kInvalidArgument, "SchemaMismatch",
                         "epsilon_range must be [min > 0, max >= min]");
      }
      sc.epsilon_min = range[0];
      sc.epsilon_max = range[1];
    }
    if (doc.contains("horizon")) sc.horizon = doc["horizon"].get<int>();
    if (doc.contains("context")) {
      const Json& ctx = doc["context"];
      if (ctx.contains("location")) sc.context.location = ctx["location"].get<std::string>();
      if (ctx.contains("peer")) sc.context.peer = ctx["peer"].get<std::string>();
      if (ctx.contains("day")) sc.context.time.day = ctx["day"].get<int>();
      if (ctx.contains("slot")) sc.context.time.slot = ctx["slot"].get<int>();
    }
  } catch (const Json::exception& e) {
    return MakeError(absl::StatusCode::kInvalidArgument, "SchemaMismatch", e.what());
  }
  if (sc.trials <= 0 || sc.slot_seconds <= 0) {
    return MakeError(absl::StatusCode::kInvalidArgument, "SchemaMismatch",
                     "trials and slot_seconds must be positive");
  }
  for (double eps : sc.epsilons) {
    if (!(eps > 0.0)) {
      return MakeError(absl::StatusCode::kInvalidArgument, "SchemaMismatch",
                       "epsilons must be positive");
    }
  }
  return sc;
}

absl::StatusOr<Scenario> LoadScenarioFile(const std::string& path) {
  PRISPS_ASSIGN_OR_RETURN(std::string text, ReadTextFile(path));
  return ParseScenarioJson(text, fs::path(path).parent_path().string());
}

int ExitCodeFor(const absl::Status& status) {
  if (status.ok()) return kExitOk;
  static const std::set<std::string_view> kPolicyKinds = {
      "PolicyInvalid", "UnknownPattern", "UnknownNode", "ConflictingRules",
      "InvalidConfig", "QueryDenied"};
  const std::string_view kind = ErrorKind(status);
  if (kind == "NoFeasiblePlacement") return kExitInfeasiblePlacement;
  if (kPolicyKinds.count(kind)) return kExitPolicyError;
  return kExitIoError;
}

absl::StatusOr<PpmCustomization> CustomizeFromPolicy(
    const PrivacyPolicy& policy, const Context& ctx,
    const std::vector<std::string>& node_ids, int n_days, TaperMode taper_mode,
    double epsilon_min, double epsilon_max) {
  ScenarioConfig config;
  config.signatures = policy.patterns;
  config.node_ids = node_ids;
  config.epsilon_min = epsilon_min;
  config.epsilon_max = epsilon_max;
  config.n_days = std::max(n_days, 1);
  config.taper_mode = taper_mode;
  return DerivePpmConfig(EvaluatePolicy(policy, ctx), config);
}

absl::StatusOr<RewriteOutcome> RewriteWithPolicy(const QueryAst& ast,
                                                 const PrivacyPolicy& policy,
                                                 const Context& ctx, int slot_seconds) {
  PRISPS_ASSIGN_OR_RETURN(PpmCustomization custom,
                          CustomizeFromPolicy(policy, ctx, {}, 1, TaperMode::kTable));
  PRISPS_ASSIGN_OR_RETURN(
      RewriteOutcome outcome,
      RewriteQuery(ast, custom.action_rules, policy.patterns, slot_seconds));
  if (outcome.rejected()) {
    return MakeError(absl::StatusCode::kPermissionDenied, "QueryDenied",
                     "query matches a private pattern the policy denies");
  }
  return outcome;
}

std::string FormatReleaseCsv(const CountSeries& truth, const SanitizedSeries& released) {
  std::string out = "slot,count,sanitized\n";
  for (int t = 1; t <= truth.horizon(); ++t) {
    const auto& q = truth.at(t);
    const auto& m = released.at(t);
    StrAppend(&out, t, ",", q ? StrCat(*q) : "", ",", m ? Fixed(*m) : "", "\n");
  }
  return out;
}

absl::StatusOr<std::string> SanitizeQueryCounts(const EventStream& stream,
                                                const QueryAst& ast,
                                                const ScheduleConfig& config,
                                                int horizon, uint64_t seed,
                                                int slot_seconds) {
  EvaluationOptions options;
  options.slot_seconds = slot_seconds;
  PRISPS_ASSIGN_OR_RETURN(SequencePattern pattern, PatternFromQuery(ast, options));
  const CountSeries truth = CountPatternCompletions(stream, pattern, horizon);
  PRISPS_ASSIGN_OR_RETURN(NoiseSchedule schedule,
                          AllocateBudget(config, truth.horizon()));
  PRISPS_ASSIGN_OR_RETURN(SanitizedSeries released, Sanitize(truth, schedule, seed));
  return FormatReleaseCsv(truth, released);
}

RunResult RunScenario(const Scenario& sc, const std::string& out_dir,
                      const LogSink& log_sink) {
  RunLog log(log_sink);
  RunResult result;
  const auto finish = [&](int code, const absl::Status& status) {
    result.exit_code = code;
    result.message = status.ok() ? "ok" : std::string(status.message());
    log.Line("exit code=", code, status.ok() ? "" : StrCat(" error=", result.message));
    result.log = log.lines();
    std::string text;
    for (const auto& line : result.log) StrAppend(&text, line, "\n");
    if (absl::Status st = WriteTextFile((fs::path(out_dir) / "run.log").string(), text);
        !st.ok() && result.exit_code == kExitOk) {
      result.exit_code = kExitIoError;
      result.message = std::string(st.message());
    }
    return result;
  };
  const auto fail = [&](const absl::Status& status, int code = -1) {
    return finish(code < 0 ? ExitCodeFor(status) : code, status);
  };

  // ---- load
  log.Line("stage=load");
  if (!sc.seed.has_value()) {
    return fail(MakeError(absl::StatusCode::kInvalidArgument, "MissingSeed",
                          "a seed is required"),
                kExitIoError);
  }
  const uint64_t seed = *sc.seed;
  std::vector<LoadedQuery> queries;
  std::map<std::string, StreamSchema> schemas;
  for (const std::string& path : sc.query_paths) {
    auto text = ReadTextFile(path);
    if (!text.ok()) return fail(text.status(), kExitIoError);
    auto ast = ParseQuery(*text);
    if (!ast.ok()) return fail(ast.status(), kExitIoError);
    if (absl::Status st = ValidateQuery(*ast); !st.ok()) return fail(st, kExitIoError);
    for (const auto& def : ast->stream_defs) schemas.emplace(def.name, def);
    queries.push_back({fs::path(path).stem().string(), *std::move(ast)});
  }
  auto events_text = ReadTextFile(sc.events_path);
  if (!events_text.ok()) return fail(events_text.status(), kExitIoError);
  auto records = ParseEventsJsonl(*events_text);
  if (!records.ok()) return fail(records.status(), kExitIoError);
  std::map<std::string, std::vector<RawEventRecord>> by_stream;
  for (auto& rec : *records) by_stream[rec.stream.value_or("")].push_back(std::move(rec));
  std::map<std::string, EventStream> streams;
  for (auto& [name, recs] : by_stream) {
    const auto it = schemas.find(name);
    if (it == schemas.end()) {
      return fail(MakeError(absl::StatusCode::kInvalidArgument, "SchemaMismatch",
                            StrCat("no query defines stream '", name, "'")),
                  kExitIoError);
    }
    auto stream = IngestEvents(recs, it->second);
    if (!stream.ok()) return fail(stream.status(), kExitIoError);
    streams.emplace(name, *std::move(stream));
  }
  auto topo_text = ReadTextFile(sc.topology_path);
  if (!topo_text.ok()) return fail(topo_text.status(), kExitIoError);
  auto topology = ParseTopologyJson(*topo_text);
  if (!topology.ok()) return fail(topology.status(), kExitIoError);
  auto policy_text = ReadTextFile(sc.policy_path);
  if (!policy_text.ok()) return fail(policy_text.status(), kExitIoError);
  auto policy = ParsePolicyJson(*policy_text);
  if (!policy.ok()) return fail(policy.status(), kExitIoError);

  int n_days = 1;
  int max_slot = 0;
  for (const auto& [name, stream] : streams) {
    n_days = std::max(n_days, static_cast<int>(stream.Days().size()));
    max_slot = std::max(max_slot, stream.MaxSlot());
  }
  const int horizon = sc.horizon.value_or(max_slot);
  log.Line("loaded events=", (*records).size(), " streams=", streams.size(),
           " queries=", queries.size(), " nodes=", topology->nodes.size(),
           " days=", n_days, " horizon=", horizon);

  // ---- validate
  log.Line("stage=validate");
  ValidationContext vctx;
  vctx.known_attributes.emplace_back(kActivityField);
  for (const auto& [name, schema] : schemas) {
    for (const auto& f : schema.fields) vctx.known_attributes.push_back(f.name);
  }
  vctx.known_nodes = topology->NodeIds();
  const auto diagnostics = ValidatePolicy(*policy, vctx);
  for (const auto& d : diagnostics) {
    log.Line(d.severity == PolicyDiagnostic::Severity::kError ? "policy-error " : "policy-advisory ",
             d.code, d.rule_id.empty() ? "" : StrCat(" rule=", d.rule_id), ": ", d.message);
  }
  if (HasErrors(diagnostics)) {
    return fail(MakeError(absl::StatusCode::kInvalidArgument, "PolicyInvalid",
                          "policy validation failed"),
                kExitPolicyError);
  }

  // ---- resolve
  log.Line("stage=resolve");
  const std::vector<StaticRule> effective = EvaluatePolicy(*policy, sc.context);
  for (const auto& rule : effective) {
    log.Line("effective-rule ", rule.id, " ", TriggerName(rule.trigger));
  }
  ScenarioConfig scfg;
  scfg.signatures = policy->patterns;
  scfg.node_ids = topology->NodeIds();
  scfg.epsilon_min = sc.epsilon_min;
  scfg.epsilon_max = sc.epsilon_max;
  scfg.n_days = n_days;
  scfg.taper_mode = sc.taper_mode;
  auto custom = DerivePpmConfig(effective, scfg);
  if (!custom.ok()) return fail(custom.status(), kExitPolicyError);

  // ---- rewrite
  log.Line("stage=rewrite");
  std::vector<std::optional<QueryAst>> rewritten;
  bool any_sink_rewrite = false;
  for (const auto& q : queries) {
    auto outcome = RewriteQuery(q.ast, custom->action_rules, policy->patterns,
                                sc.slot_seconds);
    if (!outcome.ok()) return fail(outcome.status(), kExitPolicyError);
    for (const auto& entry : outcome->log) {
      log.Line("rewrite query=", q.name, " rule=", entry.rule_id, " action=", entry.action,
               " ", entry.detail);
      if (entry.action == "rewrite_sink") any_sink_rewrite = true;
    }
    const std::string file =
        (fs::path(out_dir) / "rewritten-queries" / StrCat(q.name, ".txt")).string();
    const std::string body = outcome->query ? PrintQuery(*outcome->query)
                                            : std::string("-- denied by policy\n");
    if (absl::Status st = WriteTextFile(file, body); !st.ok()) return fail(st, kExitIoError);
    rewritten.push_back(outcome->query);
  }

  // ---- customize
  log.Line("stage=customize");
  if (custom->schedule) {
    std::string intervals;
    for (const auto& r : custom->schedule->relevance_intervals) {
      StrAppend(&intervals, intervals.empty() ? "" : ";", r.start, "-", r.end);
    }
    log.Line("dp epsilon=", Fixed(custom->schedule->epsilon), " w=", custom->schedule->w,
             " intervals=", intervals, " taper=", TaperModeName(sc.taper_mode));
  }
  if (custom->trusted_nodes) {
    log.Line("trusted-nodes ", StrJoin(*custom->trusted_nodes, ","));
  }

  // ---- place
  log.Line("stage=place");
  const Topology trusted_topo = custom->trusted_nodes
                                    ? WithTrustedNodes(*topology, *custom->trusted_nodes)
                                    : *topology;
  double baseline_latency = 0.0;
  double rewritten_latency = 0.0;
  double deployed_latency = 0.0;
  int free_ops = 0;
  int untrusted_free_ops = 0;
  std::vector<NamedPlacement> deployed;
  for (size_t i = 0; i < queries.size(); ++i) {
    auto original_graph = BuildOperatorGraph(queries[i].ast);
    if (!original_graph.ok()) return fail(original_graph.status(), kExitIoError);
    auto base = PlaceOperators(*original_graph, *topology, /*trusted_only=*/false);
    if (!base.ok()) return fail(base.status());
    baseline_latency += base->total_latency_ms;
    if (!rewritten[i]) continue;

    auto graph = BuildOperatorGraph(*rewritten[i]);
    if (!graph.ok()) return fail(graph.status(), kExitIoError);
    auto open = PlaceOperators(*graph, *topology, /*trusted_only=*/false);
    if (!open.ok()) return fail(open.status());
    rewritten_latency += open->total_latency_ms;

    auto placed = PlaceOperators(*graph, trusted_topo,
                                 /*trusted_only=*/custom->trusted_nodes.has_value());
    if (!placed.ok()) return fail(placed.status());
    deployed_latency += placed->total_latency_ms;
    for (size_t k = 1; k + 1 < placed->assignment.size(); ++k) {
      ++free_ops;
      const auto idx = trusted_topo.NodeIndex(placed->assignment[k]);
      if (!trusted_topo.nodes[*idx].trusted) ++untrusted_free_ops;
    }
    log.Line("placed query=", queries[i].name, " latency_ms=", Fixed(placed->total_latency_ms),
             " nodes=", StrJoin(placed->assignment, ">"));
    deployed.push_back({queries[i].name, *std::move(placed)});
  }
  if (absl::Status st = WriteTextFile((fs::path(out_dir) / "placement.json").string(),
                                      FormatPlacementJson(deployed));
      !st.ok()) {
    return fail(st, kExitIoError);
  }

  // ---- evaluate
  log.Line("stage=evaluate");
  EvaluationOptions eval_options;
  eval_options.slot_seconds = sc.slot_seconds;
  for (size_t i = 0; i < queries.size(); ++i) {
    if (!rewritten[i]) continue;
    auto output = EvaluateQuery(*rewritten[i], streams, eval_options);
    if (!output.ok()) return fail(output.status(), kExitIoError);
    log.Line("evaluated query=", queries[i].name, " results=", output->size());
  }
  // The protected pattern is the one named by the first effective
  // protect_pattern rule.
  std::optional<PrivatePatternSignature> protected_sig;
  for (const auto& rule : effective) {
    if (const auto* p = std::get_if<ProtectPattern>(&rule.trigger)) {
      for (const auto& sig : policy->patterns) {
        if (sig.id == p->pattern_id) protected_sig = sig;
      }
      break;
    }
  }
  CountSeries truth;
  truth.values.assign(horizon, std::optional<int64_t>());
  if (protected_sig) {
    const EventStream* source = nullptr;
    for (const auto& q : queries) {
      if (!DetectPrivatePatternQuery(q.ast, {*protected_sig}, sc.slot_seconds).empty()) {
        const auto it = streams.find(q.ast.pattern.bindings.front().stream);
        if (it != streams.end()) source = &it->second;
        break;
      }
    }
    if (source == nullptr && !streams.empty()) source = &streams.begin()->second;
    auto pattern = SequencePattern::FromActivities(protected_sig->steps,
                                                   protected_sig->max_within);
    if (!pattern.ok()) return fail(pattern.status(), kExitPolicyError);
    if (source != nullptr) truth = CountPatternCompletions(*source, *pattern, horizon);
    std::string values;
    for (int t = 1; t <= truth.horizon(); ++t) {
      StrAppend(&values, t > 1 ? "," : "", truth.at(t) ? StrCat(*truth.at(t)) : "-");
    }
    log.Line("counts pattern=", protected_sig->id, " values=[", values, "]");
  }

  // ---- sanitize
  log.Line("stage=sanitize");
  NoiseSchedule policy_schedule = NoiseSchedule::NoNoise(horizon);
  if (custom->schedule) {
    auto schedule = AllocateBudget(*custom->schedule, horizon);
    if (!schedule.ok()) return fail(schedule.status(), kExitPolicyError);
    policy_schedule = *std::move(schedule);
  }
  auto released = Sanitize(truth, policy_schedule, seed);
  if (!released.ok()) return fail(released.status(), kExitIoError);
  for (const auto& [file, body] :
       {std::pair<std::string, std::string>{"schedule.csv", FormatScheduleCsv(policy_schedule)},
        {"released.csv", FormatReleaseCsv(truth, *released)}}) {
    if (absl::Status st = WriteTextFile((fs::path(out_dir) / file).string(), body); !st.ok()) {
      return fail(st, kExitIoError);
    }
  }

  // ---- report
  log.Line("stage=report");
  std::vector<MetricsRow> rows;
  std::vector<PutReport> reports;
  const auto add_report = [&](const PutReport& report, std::optional<double> eps) {
    rows.push_back({report.ppm_id, eps, report.privacy.value,
                    *report.Utility(kCountMaeMetric),
                    *report.Utility(kPublicAccuracyMetric), *report.Utility(kLatencyMetric)});
    reports.push_back(report);
  };
  PutInputs inputs;
  inputs.baseline = truth;
  inputs.trials = sc.trials;
  inputs.seed = seed;
  inputs.run.ppm_id = "none";
  inputs.run.latency_ms = baseline_latency;
  auto none = ComputePut(inputs);
  if (!none.ok()) return fail(none.status(), kExitIoError);
  add_report(*none, std::nullopt);

  if (custom->schedule) {
    inputs.protected_intervals = custom->schedule->relevance_intervals;
    for (double eps : sc.epsilons) {
      ScheduleConfig cfg = *custom->schedule;
      cfg.epsilon = eps;
      auto schedule = AllocateBudget(cfg, horizon);
      if (!schedule.ok()) return fail(schedule.status(), kExitPolicyError);
      inputs.run = PpmRun{};
      inputs.run.ppm_id = StrCat("dp-", TaperModeName(cfg.taper_mode));
      inputs.run.schedule = *schedule;
      inputs.run.latency_ms = baseline_latency;
      inputs.run.config = {{"epsilon", Fixed(eps)},
                           {"w", StrCat(cfg.w)},
                           {"taper_mode", std::string(TaperModeName(cfg.taper_mode))}};
      auto report = ComputePut(inputs);
      if (!report.ok()) return fail(report.status(), kExitIoError);
      add_report(*report, eps);
    }
  }
  if (any_sink_rewrite) {
    inputs.run = PpmRun{};
    inputs.run.ppm_id = "ac-rewrite-sink";
    inputs.run.delivered = false;
    inputs.run.latency_ms = rewritten_latency;
    auto report = ComputePut(inputs);
    if (!report.ok()) return fail(report.status(), kExitIoError);
    add_report(*report, std::nullopt);
  }
  if (custom->trusted_nodes) {
    PutReport report;
    report.ppm_id = "trusted-placement";
    report.privacy = {"untrusted_operator_share",
                      free_ops > 0 ? static_cast<double>(untrusted_free_ops) / free_ops : 0.0};
    report.utility = {{std::string(kPublicAccuracyMetric), 1.0},
                      {std::string(kCountMaeMetric), 0.0},
                      {std::string(kLatencyMetric), deployed_latency}};
    report.config = {{"trusted_nodes", StrJoin(*custom->trusted_nodes, ",")}};
    add_report(report, std::nullopt);
  }
  for (const auto& [file, body] :
       {std::pair<std::string, std::string>{"metrics.csv", FormatMetricsCsv(rows)},
        {"put_report.json", FormatPutReportJson(reports)}}) {
    if (absl::Status st = WriteTextFile((fs::path(out_dir) / file).string(), body); !st.ok()) {
      return fail(st, kExitIoError);
    }
  }
  return finish(kExitOk, absl::OkStatus());
}

}  // namespace prisps
