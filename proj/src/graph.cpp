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

#include "drspp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

namespace drspp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

DirectedGraph::DirectedGraph(int node_count, std::vector<Arc> arcs)
    : node_count_(node_count), arcs_(std::move(arcs)) {
  if (node_count <= 0) {
    throw std::invalid_argument("graph needs at least one node");
  }
  out_.resize(static_cast<size_t>(node_count));
  in_.resize(static_cast<size_t>(node_count));
  for (size_t i = 0; i < arcs_.size(); ++i) {
    const Arc& a = arcs_[i];
    if (a.id != static_cast<ArcId>(i)) {
      throw std::invalid_argument("arc ids must be dense 0..|A|-1");
    }
    if (a.tail == a.head) {
      throw std::invalid_argument("self-loops are not allowed");
    }
    if (a.tail < 0 || a.tail >= node_count || a.head < 0 ||
        a.head >= node_count) {
      throw std::invalid_argument("arc endpoint out of range");
    }
    out_[static_cast<size_t>(a.tail)].push_back(a.id);
    in_[static_cast<size_t>(a.head)].push_back(a.id);
  }
}

Path Path::from_arcs(const DirectedGraph& graph, std::vector<ArcId> arcs) {
  if (arcs.empty()) {
    throw std::invalid_argument("path must contain at least one arc");
  }
  Path p;
  p.arc_ids = std::move(arcs);
  p.incidence.assign(static_cast<size_t>(graph.arc_count()), 0);
  std::vector<std::uint8_t> seen(static_cast<size_t>(graph.node_count()), 0);
  seen[static_cast<size_t>(graph.arc(p.arc_ids.front()).tail)] = 1;
  NodeId at = graph.arc(p.arc_ids.front()).tail;
  for (ArcId id : p.arc_ids) {
    const Arc& a = graph.arc(id);
    if (a.tail != at) {
      throw std::invalid_argument("arcs do not chain head-to-tail");
    }
    if (seen[static_cast<size_t>(a.head)]) {
      throw std::invalid_argument("path revisits a node");
    }
    seen[static_cast<size_t>(a.head)] = 1;
    p.incidence[static_cast<size_t>(id)] = 1;
    at = a.head;
  }
  return p;
}

double Path::cost(std::span<const double> arc_costs) const {
  double total = 0.0;
  for (ArcId id : arc_ids) total += arc_costs[static_cast<size_t>(id)];
  return total;
}

namespace {

// Cost-to-go dist[v] = min cost of a v->t walk.  Dijkstra on the reverse
// graph for nonnegative costs, reverse-topological relaxation otherwise.
std::vector<double> cost_to_go(const DirectedGraph& graph,
                               std::span<const double> costs, NodeId t,
                               ArcId banned_arc) {
  const size_t n = static_cast<size_t>(graph.node_count());
  std::vector<double> dist(n, kInf);
  bool negative = false;
  for (size_t i = 0; i < costs.size(); ++i) {
    if (costs[i] < 0.0 && static_cast<ArcId>(i) != banned_arc) {
      negative = true;
      break;
    }
  }

  if (!negative) {
    dist[static_cast<size_t>(t)] = 0.0;
    using Item = std::pair<double, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    heap.emplace(0.0, t);
    while (!heap.empty()) {
      auto [d, v] = heap.top();
      heap.pop();
      if (d > dist[static_cast<size_t>(v)]) continue;
      for (ArcId id : graph.in_arcs(v)) {
        if (id == banned_arc) continue;
        const Arc& a = graph.arc(id);
        const double nd = d + costs[static_cast<size_t>(id)];
        if (nd < dist[static_cast<size_t>(a.tail)]) {
          dist[static_cast<size_t>(a.tail)] = nd;
          heap.emplace(nd, a.tail);
        }
      }
    }
    return dist;
  }

  // Kahn topological order; a leftover node means a cycle.
  std::vector<int> indeg(n, 0);
  for (const Arc& a : graph.arcs()) {
    if (a.id == banned_arc) continue;
    ++indeg[static_cast<size_t>(a.head)];
  }
  std::vector<NodeId> order;
  order.reserve(n);
  for (size_t v = 0; v < n; ++v) {
    if (indeg[v] == 0) order.push_back(static_cast<NodeId>(v));
  }
  for (size_t k = 0; k < order.size(); ++k) {
    for (ArcId id : graph.out_arcs(order[k])) {
      if (id == banned_arc) continue;
      const Arc& a = graph.arc(id);
      if (--indeg[static_cast<size_t>(a.head)] == 0) order.push_back(a.head);
    }
  }
  if (order.size() != n) {
    throw NegativeCycleError(
        "negative costs require an acyclic graph; cycle detected");
  }
  dist[static_cast<size_t>(t)] = 0.0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    for (ArcId id : graph.out_arcs(*it)) {
      if (id == banned_arc) continue;
      const Arc& a = graph.arc(id);
      const double via = costs[static_cast<size_t>(id)] +
                         dist[static_cast<size_t>(a.head)];
      if (via < dist[static_cast<size_t>(*it)]) {
        dist[static_cast<size_t>(*it)] = via;
      }
    }
  }
  return dist;
}

// Lexicographically smallest optimal simple path, built forward from s.  At
// each node the smallest-id arc that stays on an optimal continuation is
// tried first; dead ends (possible only with zero-cost cycles) backtrack.
bool lex_reconstruct(const DirectedGraph& graph, std::span<const double> costs,
                     const std::vector<double>& dist, NodeId s, NodeId t,
                     ArcId banned_arc, std::vector<std::uint8_t>& on_path,
                     std::vector<ArcId>& arcs, NodeId at) {
  if (at == t) return true;
  const double here = dist[static_cast<size_t>(at)];
  const double tol = 1e-9 * (1.0 + std::abs(here));
  for (ArcId id : graph.out_arcs(at)) {
    if (id == banned_arc) continue;
    const Arc& a = graph.arc(id);
    if (on_path[static_cast<size_t>(a.head)]) continue;
    if (costs[static_cast<size_t>(id)] + dist[static_cast<size_t>(a.head)] >
        here + tol) {
      continue;
    }
    on_path[static_cast<size_t>(a.head)] = 1;
    arcs.push_back(id);
    if (lex_reconstruct(graph, costs, dist, s, t, banned_arc, on_path, arcs,
                        a.head)) {
      return true;
    }
    arcs.pop_back();
    on_path[static_cast<size_t>(a.head)] = 0;
  }
  return false;
}

ShortestPathResult shortest_path_impl(const DirectedGraph& graph,
                                      std::span<const double> costs, NodeId s,
                                      NodeId t, ArcId banned_arc) {
  if (s == t) {
    throw std::invalid_argument("source and destination must differ");
  }
  if (static_cast<int>(costs.size()) != graph.arc_count()) {
    throw std::invalid_argument("cost vector size mismatch");
  }
  const std::vector<double> dist = cost_to_go(graph, costs, t, banned_arc);
  if (!(dist[static_cast<size_t>(s)] < kInf)) {
    throw NoPathError("destination unreachable from source");
  }
  std::vector<std::uint8_t> on_path(static_cast<size_t>(graph.node_count()),
                                    0);
  on_path[static_cast<size_t>(s)] = 1;
  std::vector<ArcId> arcs;
  if (!lex_reconstruct(graph, costs, dist, s, t, banned_arc, on_path, arcs,
                       s)) {
    throw NoPathError("no simple optimal path found");
  }
  ShortestPathResult result;
  result.path = Path::from_arcs(graph, std::move(arcs));
  result.cost = result.path.cost(costs);
  return result;
}

}  // namespace

ShortestPathResult shortest_path(const DirectedGraph& graph,
                                 std::span<const double> costs, NodeId s,
                                 NodeId t) {
  return shortest_path_impl(graph, costs, s, t, -1);
}

FlowSystem flow_system(const DirectedGraph& graph, NodeId s, NodeId t) {
  if (s == t) {
    throw std::invalid_argument("source and destination must differ");
  }
  FlowSystem fs;
  fs.rows = graph.node_count();
  fs.cols = graph.arc_count();
  fs.node_arc_matrix.assign(
      static_cast<size_t>(fs.rows) * static_cast<size_t>(fs.cols), 0.0);
  fs.rhs.assign(static_cast<size_t>(fs.rows), 0.0);
  for (const Arc& a : graph.arcs()) {
    fs.node_arc_matrix[static_cast<size_t>(a.tail) * fs.cols + a.id] = 1.0;
    fs.node_arc_matrix[static_cast<size_t>(a.head) * fs.cols + a.id] = -1.0;
  }
  fs.rhs[static_cast<size_t>(s)] = 1.0;
  fs.rhs[static_cast<size_t>(t)] = -1.0;
  return fs;
}

std::vector<Path> near_optimal_paths(const DirectedGraph& graph,
                                     std::span<const double> costs, NodeId s,
                                     NodeId t) {
  const ShortestPathResult best = shortest_path(graph, costs, s, t);
  std::vector<Path> paths;
  paths.push_back(best.path);
  for (ArcId removed : best.path.arc_ids) {
    try {
      ShortestPathResult alt = shortest_path_impl(graph, costs, s, t, removed);
      const bool duplicate =
          std::any_of(paths.begin(), paths.end(),
                      [&](const Path& p) { return p == alt.path; });
      if (!duplicate) paths.push_back(std::move(alt.path));
    } catch (const NoPathError&) {
      // Removing this arc disconnects s from t; skip.
    }
  }
  return paths;
}

namespace {

void enumerate_dfs(const DirectedGraph& graph, NodeId t, int cap,
                   std::vector<std::uint8_t>& visited,
                   std::vector<ArcId>& stack, std::vector<Path>* out,
                   int& count, NodeId at) {
  if (at == t) {
    if (++count > cap) {
      throw CapExceededError("more than " + std::to_string(cap) +
                             " simple paths");
    }
    if (out != nullptr) out->push_back(Path::from_arcs(graph, stack));
    return;
  }
  for (ArcId id : graph.out_arcs(at)) {
    const Arc& a = graph.arc(id);
    if (visited[static_cast<size_t>(a.head)]) continue;
    visited[static_cast<size_t>(a.head)] = 1;
    stack.push_back(id);
    enumerate_dfs(graph, t, cap, visited, stack, out, count, a.head);
    stack.pop_back();
    visited[static_cast<size_t>(a.head)] = 0;
  }
}

}  // namespace

std::vector<Path> enumerate_paths(const DirectedGraph& graph, NodeId s,
                                  NodeId t, int cap) {
  if (cap < 1) throw std::invalid_argument("cap must be >= 1");
  std::vector<Path> out;
  std::vector<std::uint8_t> visited(static_cast<size_t>(graph.node_count()),
                                    0);
  visited[static_cast<size_t>(s)] = 1;
  std::vector<ArcId> stack;
  int count = 0;
  enumerate_dfs(graph, t, cap, visited, stack, &out, count, s);
  return out;
}

int count_paths(const DirectedGraph& graph, NodeId s, NodeId t, int cap) {
  std::vector<std::uint8_t> visited(static_cast<size_t>(graph.node_count()),
                                    0);
  visited[static_cast<size_t>(s)] = 1;
  std::vector<ArcId> stack;
  int count = 0;
  try {
    enumerate_dfs(graph, t, cap, visited, stack, nullptr, count, s);
  } catch (const CapExceededError&) {
    return cap + 1;
  }
  return count;
}

}  // namespace drspp
