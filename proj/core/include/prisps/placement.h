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

#ifndef PRISPS_PLACEMENT_H_
#define PRISPS_PLACEMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "prisps/query.h"

namespace prisps {

enum class Layer { kSensor, kFog, kCloud };

std::string_view LayerName(Layer layer);
std::optional<Layer> ParseLayer(std::string_view name);

struct TopologyNode {
  std::string id;
  Layer layer = Layer::kFog;
  bool trusted = false;
  int capacity = 1;  // max operators hosted
  // Publisher that owns the node; a rewritten sink is pinned here.
  std::optional<std::string> owner;

  friend bool operator==(const TopologyNode&, const TopologyNode&) = default;
};

// Undirected link.
struct TopologyLink {
  std::string from;
  std::string to;
  double latency_ms = 0.0;

  friend bool operator==(const TopologyLink&, const TopologyLink&) = default;
};

struct Topology {
  std::vector<TopologyNode> nodes;
  std::vector<TopologyLink> links;
  std::string source_node;
  std::string consumer_node;

  // Unique ids, known link endpoints, non-negative latencies, capacities >= 0,
  // consumer reachable from source. Error kind: InvalidTopology.
  absl::Status Validate() const;
  std::optional<size_t> NodeIndex(std::string_view id) const;
  std::vector<std::string> NodeIds() const;

  friend bool operator==(const Topology&, const Topology&) = default;
};

// Copy of `topo` whose trust flags are exactly membership in `trusted_ids`.
Topology WithTrustedNodes(const Topology& topo,
                          const std::vector<std::string>& trusted_ids);

// All-pairs shortest path latencies (Dijkstra from every node); unreachable
// pairs are +infinity. Indexed by node declaration order.
std::vector<std::vector<double>> ShortestPathLatencies(const Topology& topo);

enum class OperatorKind { kSource, kFilter, kSequenceMatcher, kAggregate, kSink };

std::string_view OperatorKindName(OperatorKind kind);

struct Operator {
  OperatorKind kind = OperatorKind::kSource;
  std::string label;  // e.g. "filter:e2"

  friend bool operator==(const Operator&, const Operator&) = default;
};

// Linear pipeline Source -> Filter* -> SequenceMatcher? -> Aggregate? -> Sink.
struct OperatorGraph {
  std::vector<Operator> operators;
  std::optional<std::string> sink_publisher;               // from @sink
  std::optional<std::vector<std::string>> allowed_nodes;  // from @restrict

  std::vector<OperatorKind> Kinds() const;
  friend bool operator==(const OperatorGraph&, const OperatorGraph&) = default;
};

// One Filter per binding whose predicate has terms beyond the activity
// equality dispatch, a SequenceMatcher for patterns of two or more bindings,
// an Aggregate iff count() is selected. Queries over more than one stream are
// rejected with UnsupportedQueryShape.
absl::StatusOr<OperatorGraph> BuildOperatorGraph(const QueryAst& ast);

struct Placement {
  std::vector<Operator> operators;
  std::vector<std::string> assignment;  // node id per operator
  double total_latency_ms = 0.0;
  bool optimal = true;  // false when the greedy fallback was used
  bool trusted_only = false;

  friend bool operator==(const Placement&, const Placement&) = default;
};

struct PlacementOptions {
  bool trusted_only = false;
  // Exhaustive search runs when candidates^free_operators is at most this.
  uint64_t exhaustive_limit = 1'000'000;
};

// Latency-minimal placement. Source is pinned to the source node, Sink to the
// consumer node or to the node owned by the sink publisher. With
// trusted_only, free operators only go to trusted nodes (further restricted by
// the graph's allowed nodes). Ties resolve to the lexicographically smallest
// assignment by node declaration order. Error: NoFeasiblePlacement.
absl::StatusOr<Placement> PlaceOperators(const OperatorGraph& graph,
                                         const Topology& topo,
                                         const PlacementOptions& options);
absl::StatusOr<Placement> PlaceOperators(const OperatorGraph& graph,
                                         const Topology& topo, bool trusted_only);

// Sum of shortest-path latencies between consecutive operators' nodes.
// Errors: UnknownNode, UnreachablePair.
absl::StatusOr<double> EndToEndLatency(const std::vector<std::string>& assignment,
                                       const Topology& topo);

}  // namespace prisps

#endif  // PRISPS_PLACEMENT_H_
