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

#include "prisps/placement.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <set>

#include "prisps/access_control.h"
#include "prisps/errors.h"
#include "str_util.h"

namespace prisps {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool IsActivityDispatch(const Comparison& c) {
  return c.field == kActivityField && c.op == CompareOp::kEq &&
         std::holds_alternative<std::string>(c.value);
}

absl::Status NoFeasible(std::string_view detail) {
  return MakeError(absl::StatusCode::kFailedPrecondition, "NoFeasiblePlacement",
                   detail);
}

struct SearchState {
  const std::vector<std::vector<double>>* dist;
  std::vector<size_t> candidates;
  std::vector<int> remaining;  // capacity left per node
  size_t source = 0;
  size_t sink = 0;
  size_t free_count = 0;

  std::vector<size_t> current;
  std::vector<size_t> best;
  double best_latency = kInf;
};

void Search(SearchState& s, size_t depth, size_t prev, double partial) {
  const auto& dist = *s.dist;
  if (depth == s.free_count) {
    const double total = partial + dist[prev][s.sink];
    if (total < s.best_latency) {
      s.best_latency = total;
      s.best = s.current;
    }
    return;
  }
  for (size_t node : s.candidates) {
    if (s.remaining[node] <= 0) continue;
    const double step = dist[prev][node];
    if (step == kInf) continue;
    const double next = partial + step;
    // Latencies are non-negative, so a prefix at or above the best cannot win.
    if (next >= s.best_latency) continue;
    --s.remaining[node];
    s.current[depth] = node;
    Search(s, depth + 1, node, next);
    ++s.remaining[node];
  }
}

}  // namespace

std::string_view LayerName(Layer layer) {
  switch (layer) {
    case Layer::kSensor:
      return "sensor";
    case Layer::kFog:
      return "fog";
    case Layer::kCloud:
      return "cloud";
  }
  return "fog";
}

std::optional<Layer> ParseLayer(std::string_view name) {
  if (name == "sensor") return Layer::kSensor;
  if (name == "fog") return Layer::kFog;
  if (name == "cloud") return Layer::kCloud;
  return std::nullopt;
}

std::optional<size_t> Topology::NodeIndex(std::string_view id) const {
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id == id) return i;
  }
  return std::nullopt;
}

std::vector<std::string> Topology::NodeIds() const {
  std::vector<std::string> ids;
  ids.reserve(nodes.size());
  for (const auto& n : nodes) ids.push_back(n.id);
  return ids;
}

absl::Status Topology::Validate() const {
  const auto invalid = [](std::string detail) {
    return MakeError(absl::StatusCode::kInvalidArgument, "InvalidTopology", detail);
  };
  std::set<std::string> ids;
  for (const auto& n : nodes) {
    if (n.id.empty()) return invalid("empty node id");
    if (!ids.insert(n.id).second) return invalid(StrCat("duplicate node id '", n.id, "'"));
    if (n.capacity < 0) return invalid(StrCat("negative capacity on '", n.id, "'"));
  }
  for (const auto& l : links) {
    if (!ids.count(l.from) || !ids.count(l.to)) {
      return invalid(StrCat("link ", l.from, " - ", l.to, " names an unknown node"));
    }
    if (!(l.latency_ms >= 0.0) || !std::isfinite(l.latency_ms)) {
      return invalid(StrCat("link ", l.from, " - ", l.to, " has invalid latency"));
    }
  }
  const auto src = NodeIndex(source_node);
  const auto dst = NodeIndex(consumer_node);
  if (!src) return invalid(StrCat("unknown source node '", source_node, "'"));
  if (!dst) return invalid(StrCat("unknown consumer node '", consumer_node, "'"));
  if (ShortestPathLatencies(*this)[*src][*dst] == kInf) {
    return invalid("consumer is not reachable from source");
  }
  return absl::OkStatus();
}

Topology WithTrustedNodes(const Topology& topo,
                          const std::vector<std::string>& trusted_ids) {
  Topology out = topo;
  for (auto& n : out.nodes) {
    n.trusted = std::find(trusted_ids.begin(), trusted_ids.end(), n.id) !=
                trusted_ids.end();
  }
  return out;
}

std::vector<std::vector<double>> ShortestPathLatencies(const Topology& topo) {
  const size_t n = topo.nodes.size();
  std::vector<std::vector<std::pair<size_t, double>>> adj(n);
  for (const auto& l : topo.links) {
    const auto a = topo.NodeIndex(l.from);
    const auto b = topo.NodeIndex(l.to);
    if (!a || !b) continue;
    adj[*a].emplace_back(*b, l.latency_ms);
    adj[*b].emplace_back(*a, l.latency_ms);
  }
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, kInf));
  using Item = std::pair<double, size_t>;
  for (size_t s = 0; s < n; ++s) {
    auto& d = dist[s];
    d[s] = 0.0;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    pq.emplace(0.0, s);
    while (!pq.empty()) {
      const auto [du, u] = pq.top();
      pq.pop();
      if (du > d[u]) continue;
      for (const auto& [v, w] : adj[u]) {
        if (du + w < d[v]) {
          d[v] = du + w;
          pq.emplace(d[v], v);
        }
      }
    }
  }
  return dist;
}

std::string_view OperatorKindName(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::kSource:
      return "Source";
    case OperatorKind::kFilter:
      return "Filter";
    case OperatorKind::kSequenceMatcher:
      return "SequenceMatcher";
    case OperatorKind::kAggregate:
      return "Aggregate";
    case OperatorKind::kSink:
      return "Sink";
  }
  return "Source";
}

std::vector<OperatorKind> OperatorGraph::Kinds() const {
  std::vector<OperatorKind> kinds;
  for (const auto& op : operators) kinds.push_back(op.kind);
  return kinds;
}

absl::StatusOr<OperatorGraph> BuildOperatorGraph(const QueryAst& ast) {
  const auto& bindings = ast.pattern.bindings;
  if (bindings.empty()) {
    return MakeError(absl::StatusCode::kInvalidArgument, "UnsupportedQueryShape",
                     "query has no pattern bindings");
  }
  for (const auto& b : bindings) {
    if (b.stream != bindings.front().stream) {
      return MakeError(absl::StatusCode::kInvalidArgument, "UnsupportedQueryShape",
                       StrCat("query reads streams '", bindings.front().stream,
                              "' and '", b.stream, "'; only one input is supported"));
    }
  }
  OperatorGraph graph;
  graph.operators.push_back({OperatorKind::kSource, "source"});
  for (const auto& b : bindings) {
    const bool needs_filter =
        std::any_of(b.filter.terms.begin(), b.filter.terms.end(),
                    [](const Comparison& c) { return !IsActivityDispatch(c); });
    if (needs_filter) graph.operators.push_back({OperatorKind::kFilter, StrCat("filter:", b.name)});
  }
  if (bindings.size() >= 2) {
    graph.operators.push_back({OperatorKind::kSequenceMatcher, "sequence"});
  }
  const bool has_count =
      std::any_of(ast.select.begin(), ast.select.end(), [](const SelectItem& s) {
        return s.kind == SelectItem::Kind::kCount;
      });
  if (has_count) graph.operators.push_back({OperatorKind::kAggregate, "aggregate"});
  graph.operators.push_back({OperatorKind::kSink, "sink"});
  graph.sink_publisher = SinkPublisher(ast);
  graph.allowed_nodes = RestrictedNodes(ast);
  return graph;
}

absl::StatusOr<double> EndToEndLatency(const std::vector<std::string>& assignment,
                                       const Topology& topo) {
  const auto dist = ShortestPathLatencies(topo);
  double total = 0.0;
  for (size_t i = 0; i + 1 < assignment.size(); ++i) {
    const auto a = topo.NodeIndex(assignment[i]);
    const auto b = topo.NodeIndex(assignment[i + 1]);
    if (!a || !b) {
      return MakeError(absl::StatusCode::kNotFound, "UnknownNode",
                       StrCat("placement names unknown node '",
                              a ? assignment[i + 1] : assignment[i], "'"));
    }
    if (dist[*a][*b] == kInf) {
      return MakeError(absl::StatusCode::kFailedPrecondition, "UnreachablePair",
                       StrCat("no path from '", assignment[i], "' to '",
                              assignment[i + 1], "'"));
    }
    total += dist[*a][*b];
  }
  return total;
}

absl::StatusOr<Placement> PlaceOperators(const OperatorGraph& graph,
                                         const Topology& topo,
                                         const PlacementOptions& options) {
  PRISPS_RETURN_IF_ERROR(topo.Validate());
  const auto& ops = graph.operators;
  if (ops.size() < 2 || ops.front().kind != OperatorKind::kSource ||
      ops.back().kind != OperatorKind::kSink) {
    return MakeError(absl::StatusCode::kInvalidArgument, "UnsupportedQueryShape",
                     "operator graph must start with Source and end with Sink");
  }

  const size_t source = *topo.NodeIndex(topo.source_node);
  size_t sink = *topo.NodeIndex(topo.consumer_node);
  if (graph.sink_publisher.has_value()) {
    std::optional<size_t> owned;
    for (size_t i = 0; i < topo.nodes.size(); ++i) {
      if (topo.nodes[i].owner == graph.sink_publisher) {
        owned = i;
        break;
      }
    }
    if (!owned) {
      return NoFeasible(StrCat("no node is owned by sink publisher '",
                               *graph.sink_publisher, "'"));
    }
    sink = *owned;
  }

  SearchState s;
  const auto dist = ShortestPathLatencies(topo);
  s.dist = &dist;
  s.source = source;
  s.sink = sink;
  s.free_count = ops.size() - 2;
  s.remaining.resize(topo.nodes.size());
  for (size_t i = 0; i < topo.nodes.size(); ++i) s.remaining[i] = topo.nodes[i].capacity;
  if (--s.remaining[source] < 0 || --s.remaining[sink] < 0) {
    return NoFeasible("pinned Source/Sink exceed node capacity");
  }
  if (dist[source][sink] == kInf) return NoFeasible("sink unreachable from source");

  for (size_t i = 0; i < topo.nodes.size(); ++i) {
    const auto& node = topo.nodes[i];
    if (options.trusted_only) {
      if (!node.trusted) continue;
      if (graph.allowed_nodes.has_value() &&
          std::find(graph.allowed_nodes->begin(), graph.allowed_nodes->end(),
                    node.id) == graph.allowed_nodes->end()) {
        continue;
      }
    }
    if (topo.nodes[i].capacity > 0) s.candidates.push_back(i);
  }

  s.current.assign(s.free_count, 0);
  bool optimal = true;
  if (s.free_count > 0) {
    if (s.candidates.empty()) return NoFeasible("no candidate node for free operators");
    double combos = 1.0;
    for (size_t i = 0; i < s.free_count; ++i) combos *= static_cast<double>(s.candidates.size());
    if (combos <= static_cast<double>(options.exhaustive_limit)) {
      Search(s, 0, source, 0.0);
    } else {
      // Greedy chain: nearest feasible candidate to the predecessor, keeping
      // the sink reachable.
      optimal = false;
      size_t prev = source;
      double total = 0.0;
      for (size_t d = 0; d < s.free_count; ++d) {
        std::optional<size_t> pick;
        for (size_t node : s.candidates) {
          if (s.remaining[node] <= 0 || dist[prev][node] == kInf ||
              dist[node][sink] == kInf) {
            continue;
          }
          if (!pick || dist[prev][node] < dist[prev][*pick]) pick = node;
        }
        if (!pick) break;
        --s.remaining[*pick];
        s.current[d] = *pick;
        total += dist[prev][*pick];
        prev = *pick;
        if (d + 1 == s.free_count) {
          s.best = s.current;
          s.best_latency = total + dist[prev][sink];
        }
      }
    }
  } else {
    s.best_latency = dist[source][sink];
  }
  if (s.best_latency == kInf) {
    return NoFeasible(options.trusted_only
                          ? "trust and capacity constraints cannot be satisfied"
                          : "capacity constraints cannot be satisfied");
  }

  Placement placement;
  placement.operators = ops;
  placement.assignment.push_back(topo.nodes[source].id);
  for (size_t node : s.best) placement.assignment.push_back(topo.nodes[node].id);
  placement.assignment.push_back(topo.nodes[sink].id);
  placement.total_latency_ms = s.best_latency;
  placement.optimal = optimal;
  placement.trusted_only = options.trusted_only;
  return placement;
}

absl::StatusOr<Placement> PlaceOperators(const OperatorGraph& graph,
                                         const Topology& topo, bool trusted_only) {
  PlacementOptions options;
  options.trusted_only = trusted_only;
  return PlaceOperators(graph, topo, options);
}

}  // namespace prisps
