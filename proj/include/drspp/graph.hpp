// Copyright 2026 The drspp Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DRSPP_GRAPH_HPP
#define DRSPP_GRAPH_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "drspp/errors.hpp"

namespace drspp {

using NodeId = int;
using ArcId = int;

struct Arc {
  ArcId id;
  NodeId tail;
  NodeId head;
};

// Immutable directed graph with dense node and arc ids.  Arc ids must be
// 0..|A|-1 and self-loops are rejected.  Safe to share read-only across
// threads.
class DirectedGraph {
 public:
  DirectedGraph(int node_count, std::vector<Arc> arcs);

  int node_count() const { return node_count_; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const Arc& arc(ArcId id) const { return arcs_[static_cast<size_t>(id)]; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  // Out-arcs of a node, sorted by arc id.
  const std::vector<ArcId>& out_arcs(NodeId v) const {
    return out_[static_cast<size_t>(v)];
  }
  const std::vector<ArcId>& in_arcs(NodeId v) const {
    return in_[static_cast<size_t>(v)];
  }

 private:
  int node_count_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<ArcId>> out_;
  std::vector<std::vector<ArcId>> in_;
};

// A simple s-t path: the ordered arc sequence plus its 0/1 incidence vector
// over all arcs of the graph it was built on.
struct Path {
  std::vector<ArcId> arc_ids;
  std::vector<std::uint8_t> incidence;

  // Validates that `arcs` chain head-to-tail without repeating a node and
  // fills the incidence vector.
  static Path from_arcs(const DirectedGraph& graph, std::vector<ArcId> arcs);

  NodeId first_tail(const DirectedGraph& graph) const {
    return graph.arc(arc_ids.front()).tail;
  }
  NodeId last_head(const DirectedGraph& graph) const {
    return graph.arc(arc_ids.back()).head;
  }
  double cost(std::span<const double> arc_costs) const;

  bool operator==(const Path& other) const { return arc_ids == other.arc_ids; }
};

// Node-arc incidence system: matrix * incidence == rhs for every s-t path.
// Each arc column carries +1 at its tail row and -1 at its head row; the rhs
// is +1 at the source, -1 at the destination and 0 elsewhere.
struct FlowSystem {
  int rows = 0;
  int cols = 0;
  std::vector<double> node_arc_matrix;  // row-major, rows x cols
  std::vector<double> rhs;

  double at(int row, int col) const {
    return node_arc_matrix[static_cast<size_t>(row) * cols + col];
  }
};

struct ShortestPathResult {
  Path path;
  double cost = 0.0;
};

// Minimum-cost simple s-t path.  Nonnegative costs run Dijkstra; if any cost
// is negative the graph must be acyclic and a topological-order relaxation is
// used instead (NegativeCycleError otherwise).  Ties between optimal paths
// are broken toward the lexicographically smallest arc-id sequence.
ShortestPathResult shortest_path(const DirectedGraph& graph,
                                 std::span<const double> costs, NodeId s,
                                 NodeId t);

FlowSystem flow_system(const DirectedGraph& graph, NodeId s, NodeId t);

// The shortest path P* plus, for every arc a of P*, the shortest path of the
// graph with a removed (skipped when the removal disconnects s from t).
// Deduplicated; P* comes first.
std::vector<Path> near_optimal_paths(const DirectedGraph& graph,
                                     std::span<const double> costs, NodeId s,
                                     NodeId t);

// All simple s-t paths in lexicographic arc-id order.  Throws
// CapExceededError as soon as more than `cap` paths exist.
std::vector<Path> enumerate_paths(const DirectedGraph& graph, NodeId s,
                                  NodeId t, int cap);

// Number of simple s-t paths, counting stops at cap + 1.
int count_paths(const DirectedGraph& graph, NodeId s, NodeId t, int cap);

}  // namespace drspp

#endif  // DRSPP_GRAPH_HPP
