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

#include "prisps/json_formats.h"

#include <cmath>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "prisps/errors.h"
#include "str_util.h"

namespace prisps {
namespace {

using Json = nlohmann::ordered_json;

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] void Fail(const std::string& path, std::string_view what) {
  throw SchemaError(StrCat(path.empty() ? "<root>" : path, ": ", what));
}

// Reads an object's keys, tracking which were consumed so leftovers can be
// rejected.
class Reader {
 public:
  Reader(const Json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) Fail(path_, "expected an object");
  }
  ~Reader() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (const auto& [key, value] : obj_.items()) {
      if (!used_.count(key)) Fail(path_, StrCat("unknown key '", key, "'"));
    }
  }

  bool Has(const std::string& key) const { return obj_.contains(key); }
  std::string Path(const std::string& key) const {
    return path_.empty() ? key : StrCat(path_, ".", key);
  }

  const Json& Get(const std::string& key) {
    if (!obj_.contains(key)) Fail(path_, StrCat("missing key '", key, "'"));
    used_.insert(key);
    return obj_.at(key);
  }

  std::string String(const std::string& key) {
    const Json& v = Get(key);
    if (!v.is_string()) Fail(Path(key), "expected a string");
    return v.get<std::string>();
  }
  std::optional<std::string> OptString(const std::string& key) {
    if (!Has(key)) return std::nullopt;
    return String(key);
  }
  double Number(const std::string& key) {
    const Json& v = Get(key);
    if (!v.is_number()) Fail(Path(key), "expected a number");
    return v.get<double>();
  }
  int64_t Integer(const std::string& key) {
    const Json& v = Get(key);
    if (!v.is_number_integer()) Fail(Path(key), "expected an integer");
    return v.get<int64_t>();
  }
  bool Bool(const std::string& key) {
    const Json& v = Get(key);
    if (!v.is_boolean()) Fail(Path(key), "expected a boolean");
    return v.get<bool>();
  }
  const Json& Array(const std::string& key) {
    const Json& v = Get(key);
    if (!v.is_array()) Fail(Path(key), "expected an array");
    return v;
  }
  std::vector<std::string> Strings(const std::string& key) {
    std::vector<std::string> out;
    const Json& arr = Array(key);
    for (size_t i = 0; i < arr.size(); ++i) {
      if (!arr[i].is_string()) Fail(StrCat(Path(key), "[", i, "]"), "expected a string");
      out.push_back(arr[i].get<std::string>());
    }
    return out;
  }

 private:
  const Json& obj_;
  std::string path_;
  std::set<std::string> used_;
};

template <typename Fn>
auto Guarded(std::string_view text, Fn fn) -> absl::StatusOr<decltype(fn(Json()))> {
  Json doc = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    return MakeError(absl::StatusCode::kInvalidArgument, "ParseError",
                     "input is not valid JSON");
  }
  try {
    return fn(doc);
  } catch (const SchemaError& e) {
    return MakeError(absl::StatusCode::kInvalidArgument, "SchemaMismatch", e.what());
  } catch (const Json::exception& e) {
    return MakeError(absl::StatusCode::kInvalidArgument, "SchemaMismatch", e.what());
  }
}

std::vector<SlotRange> ParseRanges(const Json& arr, const std::string& path) {
  std::vector<SlotRange> out;
  for (size_t i = 0; i < arr.size(); ++i) {
    const Json& r = arr[i];
    if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() ||
        !r[1].is_number_integer()) {
      Fail(StrCat(path, "[", i, "]"), "expected [start, end]");
    }
    out.push_back({r[0].get<int>(), r[1].get<int>()});
  }
  return out;
}

Json RangesToJson(const std::vector<SlotRange>& ranges) {
  Json arr = Json::array();
  for (const auto& r : ranges) arr.push_back(Json::array({r.start, r.end}));
  return arr;
}

RuleTrigger ParseTrigger(const Json& obj, const std::string& path) {
  Reader r(obj, path);
  const std::string type = r.String("type");
  if (type == "conceal_attribute") return ConcealAttribute{r.String("attribute")};
  if (type == "protect_pattern") {
    ProtectPattern p;
    p.pattern_id = r.String("pattern");
    p.occurrence_windows =
        ParseRanges(r.Array("occurrence_windows"), r.Path("occurrence_windows"));
    return p;
  }
  if (type == "restrict_sink") return RestrictSink{r.String("pattern"), r.String("publisher")};
  if (type == "trust_nodes") return TrustNodes{r.Strings("nodes")};
  Fail(r.Path("type"), StrCat("unknown trigger type '", type, "'"));
}

Json TriggerToJson(const RuleTrigger& trigger) {
  Json obj;
  obj["type"] = std::string(TriggerName(trigger));
  if (const auto* c = std::get_if<ConcealAttribute>(&trigger)) {
    obj["attribute"] = c->attribute;
  } else if (const auto* p = std::get_if<ProtectPattern>(&trigger)) {
    obj["pattern"] = p->pattern_id;
    obj["occurrence_windows"] = RangesToJson(p->occurrence_windows);
  } else if (const auto* s = std::get_if<RestrictSink>(&trigger)) {
    obj["pattern"] = s->pattern_id;
    obj["publisher"] = s->publisher;
  } else if (const auto* t = std::get_if<TrustNodes>(&trigger)) {
    obj["nodes"] = t->node_ids;
  }
  return obj;
}

CompareOp ParseOp(const std::string& symbol, const std::string& path) {
  for (CompareOp op : {CompareOp::kEq, CompareOp::kNe, CompareOp::kLt, CompareOp::kLe,
                       CompareOp::kGt, CompareOp::kGe}) {
    if (CompareOpSymbol(op) == symbol) return op;
  }
  Fail(path, StrCat("unknown operator '", symbol, "'"));
}

Scalar ParseScalar(const Json& v, const std::string& path) {
  if (v.is_number_integer()) return v.get<int64_t>();
  if (v.is_number_float()) return v.get<double>();
  if (v.is_string()) return v.get<std::string>();
  Fail(path, "expected a number or string");
}

Json ScalarJson(const Scalar& value) {
  if (const auto* i = std::get_if<int64_t>(&value)) return Json(*i);
  if (const auto* d = std::get_if<double>(&value)) return Json(*d);
  return Json(std::get<std::string>(value));
}

}  // namespace

absl::StatusOr<Topology> ParseTopologyJson(std::string_view text) {
  auto parsed = Guarded(text, [](const Json& doc) {
    Reader r(doc, "");
    Topology topo;
    const Json& nodes = r.Array("nodes");
    for (size_t i = 0; i < nodes.size(); ++i) {
      Reader n(nodes[i], StrCat("nodes[", i, "]"));
      TopologyNode node;
      node.id = n.String("id");
      const std::string layer = n.String("layer");
      const auto parsed_layer = ParseLayer(layer);
      if (!parsed_layer) Fail(n.Path("layer"), StrCat("unknown layer '", layer, "'"));
      node.layer = *parsed_layer;
      node.trusted = n.Bool("trusted");
      node.capacity = static_cast<int>(n.Integer("capacity"));
      node.owner = n.OptString("owner");
      topo.nodes.push_back(std::move(node));
    }
    const Json& links = r.Array("links");
    for (size_t i = 0; i < links.size(); ++i) {
      Reader l(links[i], StrCat("links[", i, "]"));
      topo.links.push_back({l.String("from"), l.String("to"), l.Number("latency_ms")});
    }
    topo.source_node = r.String("source_node");
    topo.consumer_node = r.String("consumer_node");
    return topo;
  });
  if (!parsed.ok()) return parsed.status();
  PRISPS_RETURN_IF_ERROR(parsed->Validate());
  return parsed;
}

std::string FormatTopologyJson(const Topology& topo) {
  Json doc;
  Json nodes = Json::array();
  for (const auto& n : topo.nodes) {
    Json obj;
    obj["id"] = n.id;
    obj["layer"] = std::string(LayerName(n.layer));
    obj["trusted"] = n.trusted;
    obj["capacity"] = n.capacity;
    if (n.owner) obj["owner"] = *n.owner;
    nodes.push_back(std::move(obj));
  }
  Json links = Json::array();
  for (const auto& l : topo.links) {
    links.push_back(Json{{"from", l.from}, {"to", l.to}, {"latency_ms", l.latency_ms}});
  }
  doc["nodes"] = std::move(nodes);
  doc["links"] = std::move(links);
  doc["source_node"] = topo.source_node;
  doc["consumer_node"] = topo.consumer_node;
  return doc.dump(2) + "\n";
}

absl::StatusOr<PrivacyPolicy> ParsePolicyJson(std::string_view text) {
  return Guarded(text, [](const Json& doc) {
    Reader r(doc, "");
    PrivacyPolicy policy;
    policy.user = r.String("user");
    policy.purpose_statements = r.Strings("purpose_statements");
    if (r.Has("patterns")) {
      const Json& patterns = r.Array("patterns");
      for (size_t i = 0; i < patterns.size(); ++i) {
        Reader p(patterns[i], StrCat("patterns[", i, "]"));
        PrivatePatternSignature sig;
        sig.id = p.String("id");
        sig.steps = p.Strings("steps");
        sig.max_within = static_cast<int>(p.Integer("max_within"));
        policy.patterns.push_back(std::move(sig));
      }
    }
    if (r.Has("static_rules")) {
      const Json& rules = r.Array("static_rules");
      for (size_t i = 0; i < rules.size(); ++i) {
        Reader s(rules[i], StrCat("static_rules[", i, "]"));
        StaticRule rule;
        rule.id = s.String("id");
        rule.trigger = ParseTrigger(s.Get("trigger"), s.Path("trigger"));
        rule.put_knob = s.Number("put_knob");
        policy.static_rules.push_back(std::move(rule));
      }
    }
    if (r.Has("dynamic_rules")) {
      const Json& rules = r.Array("dynamic_rules");
      for (size_t i = 0; i < rules.size(); ++i) {
        Reader d(rules[i], StrCat("dynamic_rules[", i, "]"));
        DynamicRule rule;
        rule.id = d.String("id");
        rule.overrides = d.String("overrides");
        const Json& when = d.Array("when");
        for (size_t j = 0; j < when.size(); ++j) {
          Reader c(when[j], StrCat(d.Path("when"), "[", j, "]"));
          ContextCondition cond;
          const std::string field = c.String("field");
          const auto parsed_field = ParseContextField(field);
          if (!parsed_field) Fail(c.Path("field"), StrCat("unknown field '", field, "'"));
          cond.field = *parsed_field;
          cond.op = ParseOp(c.String("op"), c.Path("op"));
          cond.value = ParseScalar(c.Get("value"), c.Path("value"));
          rule.when.push_back(std::move(cond));
        }
        const Json& repl = d.Get("replacement");
        if (repl.is_string()) {
          if (repl.get<std::string>() != "suspend") {
            Fail(d.Path("replacement"), "expected \"suspend\" or a rule body");
          }
          rule.replacement = Suspend{};
        } else {
          Reader b(repl, d.Path("replacement"));
          rule.replacement = RuleBody{ParseTrigger(b.Get("trigger"), b.Path("trigger")),
                                      b.Number("put_knob")};
        }
        policy.dynamic_rules.push_back(std::move(rule));
      }
    }
    return policy;
  });
}

std::string FormatPolicyJson(const PrivacyPolicy& policy) {
  Json doc;
  doc["user"] = policy.user;
  doc["purpose_statements"] = policy.purpose_statements;
  Json patterns = Json::array();
  for (const auto& sig : policy.patterns) {
    patterns.push_back(
        Json{{"id", sig.id}, {"steps", sig.steps}, {"max_within", sig.max_within}});
  }
  doc["patterns"] = std::move(patterns);
  Json statics = Json::array();
  for (const auto& rule : policy.static_rules) {
    statics.push_back(Json{{"id", rule.id},
                           {"trigger", TriggerToJson(rule.trigger)},
                           {"put_knob", rule.put_knob}});
  }
  doc["static_rules"] = std::move(statics);
  Json dynamics = Json::array();
  for (const auto& rule : policy.dynamic_rules) {
    Json obj;
    obj["id"] = rule.id;
    Json when = Json::array();
    for (const auto& c : rule.when) {
      when.push_back(Json{{"field", std::string(ContextFieldName(c.field))},
                          {"op", std::string(CompareOpSymbol(c.op))},
                          {"value", ScalarJson(c.value)}});
    }
    obj["when"] = std::move(when);
    obj["overrides"] = rule.overrides;
    if (const auto* body = std::get_if<RuleBody>(&rule.replacement)) {
      obj["replacement"] =
          Json{{"trigger", TriggerToJson(body->trigger)}, {"put_knob", body->put_knob}};
    } else {
      obj["replacement"] = "suspend";
    }
    dynamics.push_back(std::move(obj));
  }
  doc["dynamic_rules"] = std::move(dynamics);
  return doc.dump(2) + "\n";
}

absl::StatusOr<std::pair<ScheduleConfig, int>> ParseScheduleConfigJson(
    std::string_view text) {
  auto parsed = Guarded(text, [](const Json& doc) {
    Reader r(doc, "");
    ScheduleConfig config;
    config.epsilon = r.Number("epsilon");
    config.w = static_cast<int>(r.Integer("w"));
    if (r.Has("sensitivity")) config.sensitivity = r.Number("sensitivity");
    config.relevance_intervals =
        ParseRanges(r.Array("relevance_intervals"), "relevance_intervals");
    if (r.Has("n_days")) config.n_days = static_cast<int>(r.Integer("n_days"));
    if (r.Has("taper_mode")) {
      const std::string mode = r.String("taper_mode");
      const auto parsed_mode = ParseTaperMode(mode);
      if (!parsed_mode) Fail("taper_mode", StrCat("unknown taper mode '", mode, "'"));
      config.taper_mode = *parsed_mode;
    }
    const int horizon = r.Has("horizon") ? static_cast<int>(r.Integer("horizon")) : 0;
    return std::make_pair(config, horizon);
  });
  if (!parsed.ok()) return parsed.status();
  PRISPS_RETURN_IF_ERROR(parsed->first.Validate());
  return parsed;
}

std::string FormatPlacementJson(const std::vector<NamedPlacement>& placements) {
  Json doc = Json::array();
  for (const auto& [query, p] : placements) {
    Json ops = Json::array();
    for (size_t i = 0; i < p.operators.size(); ++i) {
      ops.push_back(Json{{"operator", p.operators[i].label},
                         {"kind", std::string(OperatorKindName(p.operators[i].kind))},
                         {"node", p.assignment[i]}});
    }
    doc.push_back(Json{{"query", query},
                       {"optimal", p.optimal},
                       {"total_latency_ms", p.total_latency_ms},
                       {"operators", std::move(ops)}});
  }
  return doc.dump(2) + "\n";
}

std::string FormatPutReportJson(const std::vector<PutReport>& reports) {
  Json doc = Json::array();
  for (const auto& report : reports) {
    Json utility = Json::array();
    for (const auto& m : report.utility) {
      utility.push_back(Json{{"name", m.name}, {"value", m.value}});
    }
    Json config = Json::object();
    for (const auto& [k, v] : report.config) config[k] = v;
    doc.push_back(Json{{"ppm_id", report.ppm_id},
                       {"privacy_metric",
                        Json{{"name", report.privacy.name}, {"value", report.privacy.value}}},
                       {"utility_metrics", std::move(utility)},
                       {"config", std::move(config)}});
  }
  return doc.dump(2) + "\n";
}

absl::StatusOr<std::vector<FeatureWindow>> ParseFeatureWindowsJsonl(
    std::string_view text) {
  std::vector<FeatureWindow> out;
  size_t line_no = 0;
  for (std::string_view line : SplitView(text, '\n')) {
    ++line_no;
    line = StripWhitespace(line);
    if (line.empty()) continue;
    auto parsed = Guarded(line, [&](const Json& doc) {
      Reader r(doc, StrCat("line ", line_no));
      FeatureWindow w;
      w.window_id = r.String("window_id");
      const Json& features = r.Array("features");
      for (const Json& f : features) {
        if (!f.is_number()) Fail(r.Path("features"), "expected numbers");
        w.features.push_back(f.get<double>());
      }
      w.group = r.String("group");
      w.activity = r.String("activity");
      return w;
    });
    if (!parsed.ok()) {
      if (ErrorKind(parsed.status()) == "ParseError") {
        return MakeError(absl::StatusCode::kInvalidArgument, "ParseError",
                         StrCat("line ", line_no, ": not a JSON object"));
      }
      return parsed.status();
    }
    out.push_back(*std::move(parsed));
  }
  return out;
}

std::string FormatFeatureWindowsJsonl(const std::vector<FeatureWindow>& windows) {
  std::string out;
  for (const auto& w : windows) {
    Json obj;
    obj["window_id"] = w.window_id;
    obj["features"] = w.features;
    obj["group"] = w.group;
    obj["activity"] = w.activity;
    StrAppend(&out, obj.dump(), "\n");
  }
  return out;
}

}  // namespace prisps
