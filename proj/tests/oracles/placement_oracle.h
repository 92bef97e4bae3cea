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

#ifndef PRISPS_TESTS_ORACLES_PLACEMENT_ORACLE_H_
#define PRISPS_TESTS_ORACLES_PLACEMENT_ORACLE_H_

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "prisps/placement.h"

namespace prisps::oracle {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

// Floyd-Warshall over the undirected links; parallel links keep the cheapest.
inline std::vector<std::vector<double>> FloydWarshall(const Topology& topo) {
  const size_t n = topo.nodes.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, kUnreachable));
  for (size_t i = 0; i < n; ++i) d[i][i] = 0.0;
  for (const TopologyLink& l : topo.links) {
    const size_t a = *topo.NodeIndex(l.from);
    const size_t b = *topo.NodeIndex(l.to);
    d[a][b] = std::min(d[a][b], l.latency_ms);
    d[b][a] = std::min(d[b][a], l.latency_ms);
  }
  for (size_t k = 0; k < n; ++k) {
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
      }
    }
  }
  return d;
}

struct OracleResult {
  double latency = kUnreachable;  // kUnreachable when infeasible
  std::vector<std::string> assignment;
};

// Odometer over every assignment of the free operators to candidate nodes,
// first operator most significant, candidates in declaration order. Keeps the
// first strictly cheaper assignment, which is the lexicographically smallest
// among the optima.
inline OracleResult ExhaustivePlacement(const OperatorGraph& graph,
                                        const Topology& topo, bool trusted_only) {
  OracleResult result;
  const size_t n = topo.nodes.size();
  const size_t source = *topo.NodeIndex(topo.source_node);
  size_t sink = *topo.NodeIndex(topo.consumer_node);
  if (graph.sink_publisher) {
    std::optional<size_t> owned;
    for (size_t i = 0; i < n && !owned; ++i) {
      if (topo.nodes[i].owner == graph.sink_publisher) owned = i;
    }
    if (!owned) return result;
    sink = *owned;
  }
  std::vector<size_t> cand;
  for (size_t i = 0; i < n; ++i) {
    const TopologyNode& node = topo.nodes[i];
    if (node.capacity <= 0) continue;
    if (trusted_only) {
      if (!node.trusted) continue;
      if (graph.allowed_nodes &&
          std::find(graph.allowed_nodes->begin(), graph.allowed_nodes->end(), node.id) ==
              graph.allowed_nodes->end()) {
        continue;
      }
    }
    cand.push_back(i);
  }
  const auto d = FloydWarshall(topo);
  const size_t m = graph.operators.size() - 2;
  if (m > 0 && cand.empty()) return result;

  std::vector<size_t> digits(m, 0);
  while (true) {
    std::vector<size_t> nodes{source};
    for (size_t j = 0; j < m; ++j) nodes.push_back(cand[digits[j]]);
    nodes.push_back(sink);
    std::vector<int> load(n, 0);
    bool fits = true;
    for (size_t v : nodes) {
      if (++load[v] > topo.nodes[v].capacity) fits = false;
    }
    if (fits) {
      double total = 0.0;
      for (size_t j = 0; j + 1 < nodes.size(); ++j) total += d[nodes[j]][nodes[j + 1]];
      if (total < result.latency) {
        result.latency = total;
        result.assignment.clear();
        for (size_t v : nodes) result.assignment.push_back(topo.nodes[v].id);
      }
    }
    // Advance the odometer; the last digit spins fastest.
    size_t pos = m;
    while (pos > 0) {
      --pos;
      if (++digits[pos] < cand.size()) break;
      digits[pos] = 0;
      if (pos == 0) return result;
    }
    if (m == 0) return result;
  }
}

}  // namespace prisps::oracle

#endif  // PRISPS_TESTS_ORACLES_PLACEMENT_ORACLE_H_
