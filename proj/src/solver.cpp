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

#include "drspp/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <set>

namespace drspp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

constexpr double kValueTol = 1e-9;
constexpr double kIntegralityTol = 1e-6;

void check_instance(const DrsppInstance& inst) {
  if (static_cast<int>(inst.ambiguity.per_arc.size()) !=
      inst.graph.arc_count()) {
    throw std::invalid_argument("ambiguity must cover every arc");
  }
}

LinearProgram scenario_lp(const DrsppInstance& inst, const CostBounds& bounds,
                          const Path* path) {
  const int na = inst.graph.arc_count();
  LinearProgram lp(na, Sense::kMaximize);
  lp.lower = bounds.c_min;
  lp.upper = bounds.c_max;
  if (path != nullptr) {
    for (ArcId a : path->arc_ids) lp.objective[static_cast<size_t>(a)] = 1.0;
  }
  for (const ExpectationConstraint& row : inst.ambiguity.expectation_rows) {
    std::vector<double> coeffs(static_cast<size_t>(na), 0.0);
    for (const auto& [arc, value] : row.coefficients) {
      coeffs[static_cast<size_t>(arc)] = value;
    }
    lp.add_row(std::move(coeffs), Relation::kLessEqual, row.rhs);
  }
  return lp;
}

// Arcs carrying a nonzero coefficient in some expectation row.
std::vector<ArcId> coupled_arcs(const AmbiguitySet& ambiguity) {
  std::set<ArcId> arcs;
  for (const ExpectationConstraint& row : ambiguity.expectation_rows) {
    for (const auto& [arc, value] : row.coefficients) {
      if (value != 0.0) arcs.insert(arc);
    }
  }
  return {arcs.begin(), arcs.end()};
}

// Node relaxation of the MIP.  For an arc outside every expectation row the
// dual pair (mu_a, nu_a) minimizes out analytically to the term c_max_a y_a,
// so only coupled arcs keep explicit duals and coupling rows.  The optimal
// value matches the relaxation of the full model for any y-bound box; the
// unit test suite checks that equivalence against build_mip directly.
struct NodeLpBuilder {
  const DrsppInstance* inst = nullptr;
  const CostBounds* bounds = nullptr;
  std::vector<ArcId> coupled;
  std::vector<int> coupled_index;  // arc id -> position in `coupled`, or -1
  LinearProgram base;

  NodeLpBuilder(const DrsppInstance& instance, const CostBounds& b)
      : inst(&instance), bounds(&b) {
    const int na = instance.graph.arc_count();
    const int d0 =
        static_cast<int>(instance.ambiguity.expectation_rows.size());
    coupled = coupled_arcs(instance.ambiguity);
    coupled_index.assign(static_cast<size_t>(na), -1);
    for (size_t k = 0; k < coupled.size(); ++k) {
      coupled_index[static_cast<size_t>(coupled[k])] = static_cast<int>(k);
    }
    const int ne = static_cast<int>(coupled.size());

    // Variables: y | lambda | nu_E | mu_E.
    base = LinearProgram(na + d0 + 2 * ne, Sense::kMinimize);
    for (int a = 0; a < na; ++a) {
      base.lower[static_cast<size_t>(a)] = 0.0;
      base.upper[static_cast<size_t>(a)] = 1.0;
      if (coupled_index[static_cast<size_t>(a)] < 0) {
        base.objective[static_cast<size_t>(a)] = b.c_max[static_cast<size_t>(a)];
      }
    }
    for (int d = 0; d < d0; ++d) {
      base.objective[static_cast<size_t>(na + d)] =
          instance.ambiguity.expectation_rows[static_cast<size_t>(d)].rhs;
    }
    for (int k = 0; k < ne; ++k) {
      const ArcId a = coupled[static_cast<size_t>(k)];
      base.objective[static_cast<size_t>(na + d0 + k)] =
          b.c_max[static_cast<size_t>(a)];
      base.objective[static_cast<size_t>(na + d0 + ne + k)] =
          -b.c_min[static_cast<size_t>(a)];
    }

    // Coupling rows for coupled arcs: -y_a + (B^T lambda)_a + nu_a - mu_a = 0.
    for (int k = 0; k < ne; ++k) {
      const ArcId a = coupled[static_cast<size_t>(k)];
      std::vector<double> row(base.objective.size(), 0.0);
      row[static_cast<size_t>(a)] = -1.0;
      for (int d = 0; d < d0; ++d) {
        const ExpectationConstraint& ec =
            instance.ambiguity.expectation_rows[static_cast<size_t>(d)];
        for (const auto& [arc, value] : ec.coefficients) {
          if (arc == a) row[static_cast<size_t>(na + d)] = value;
        }
      }
      row[static_cast<size_t>(na + d0 + k)] = 1.0;
      row[static_cast<size_t>(na + d0 + ne + k)] = -1.0;
      base.add_row(std::move(row), Relation::kEqual, 0.0);
    }

    const FlowSystem fs =
        flow_system(instance.graph, instance.source, instance.sink);
    for (int i = 0; i < fs.rows; ++i) {
      std::vector<double> row(base.objective.size(), 0.0);
      for (int a = 0; a < fs.cols; ++a) {
        row[static_cast<size_t>(a)] = fs.at(i, a);
      }
      base.add_row(std::move(row), Relation::kEqual,
                   fs.rhs[static_cast<size_t>(i)]);
    }
  }

  LpSolution solve(const std::vector<std::uint8_t>& y_lo,
                   const std::vector<std::uint8_t>& y_hi) {
    const int na = inst->graph.arc_count();
    for (int a = 0; a < na; ++a) {
      base.lower[static_cast<size_t>(a)] = y_lo[static_cast<size_t>(a)];
      base.upper[static_cast<size_t>(a)] = y_hi[static_cast<size_t>(a)];
    }
    return solve_lp(base);
  }
};

struct SearchNode {
  double bound = 0.0;
  long id = 0;
  std::vector<std::uint8_t> y_lo, y_hi;
  std::vector<double> y;  // relaxation values at creation

  bool operator<(const SearchNode& other) const {
    // Best bound first; ties by node id for determinism.
    return bound > other.bound || (bound == other.bound && id > other.id);
  }
};

// Splits the support of an integral y into the s-t path and leftover cycle
// arcs.
bool decompose_integral(const DirectedGraph& graph, NodeId s, NodeId t,
                        const std::vector<double>& y,
                        std::vector<ArcId>* path_arcs,
                        std::vector<ArcId>* cycle_arcs) {
  std::vector<ArcId> used;
  for (int a = 0; a < graph.arc_count(); ++a) {
    if (y[static_cast<size_t>(a)] > 0.5) used.push_back(a);
  }
  std::vector<char> taken(used.size(), 0);
  path_arcs->clear();
  cycle_arcs->clear();
  NodeId at = s;
  std::vector<std::uint8_t> seen(static_cast<size_t>(graph.node_count()), 0);
  seen[static_cast<size_t>(at)] = 1;
  while (at != t) {
    bool advanced = false;
    for (size_t k = 0; k < used.size(); ++k) {
      if (taken[k]) continue;
      const Arc& arc = graph.arc(used[k]);
      if (arc.tail != at) continue;
      if (seen[static_cast<size_t>(arc.head)]) continue;
      taken[k] = 1;
      path_arcs->push_back(used[k]);
      seen[static_cast<size_t>(arc.head)] = 1;
      at = arc.head;
      advanced = true;
      break;
    }
    if (!advanced) return false;
  }
  for (size_t k = 0; k < used.size(); ++k) {
    if (!taken[k]) cycle_arcs->push_back(used[k]);
  }
  return true;
}

}  // namespace

ScenarioResult worst_case_scenario(const DrsppInstance& inst,
                                   const CostBounds& bounds,
                                   const Path& path) {
  const LinearProgram lp = scenario_lp(inst, bounds, &path);
  const LpSolution sol = solve_lp(lp);
  if (sol.status == LpStatus::kInfeasible) {
    throw AmbiguityInfeasibleError(
        "expectation rows contradict the per-arc cost bounds (S is empty)");
  }
  if (sol.status != LpStatus::kOptimal) {
    throw LpNumericalFailure("scenario LP did not reach optimality");
  }
  return ScenarioResult{sol.x, sol.objective_value};
}

DrsppSolution solve_no_expectation(const DrsppInstance& inst) {
  check_instance(inst);
  if (inst.ambiguity.has_expectation_rows()) {
    throw RequiresMipError(
        "instance has expectation rows; use solve_mip instead");
  }
  const auto start = Clock::now();
  const CostBounds bounds = bounds_all(inst.ambiguity);
  const double bounds_time = seconds_since(start);

  const ShortestPathResult sp =
      shortest_path(inst.graph, bounds.c_max, inst.source, inst.sink);

  DrsppSolution solution;
  solution.path = sp.path;
  solution.objective = sp.cost;
  solution.worst_case_costs = bounds.c_max;
  solution.stats.lp_solves = 2 * inst.graph.arc_count();
  solution.stats.bounds_time_s = bounds_time;
  solution.stats.best_bound = sp.cost;
  solution.stats.wall_time_s = seconds_since(start);
  return solution;
}

MipModel build_mip(const DrsppInstance& inst, const CostBounds& bounds) {
  check_instance(inst);
  const int na = inst.graph.arc_count();
  const int d0 = static_cast<int>(inst.ambiguity.expectation_rows.size());

  MipModel model;
  model.num_arcs = na;
  model.num_expectation_rows = d0;
  model.y_offset = 0;
  model.lambda_offset = na;
  model.mu_offset = na + d0;
  model.nu_offset = na + d0 + na;

  model.lp = LinearProgram(2 * na + d0 + na, Sense::kMinimize);
  for (int a = 0; a < na; ++a) {
    model.lp.lower[static_cast<size_t>(a)] = 0.0;
    model.lp.upper[static_cast<size_t>(a)] = 1.0;
    model.integer_vars.push_back(a);
    model.lp.objective[static_cast<size_t>(model.nu_offset + a)] =
        bounds.c_max[static_cast<size_t>(a)];
    model.lp.objective[static_cast<size_t>(model.mu_offset + a)] =
        -bounds.c_min[static_cast<size_t>(a)];
  }
  for (int d = 0; d < d0; ++d) {
    model.lp.objective[static_cast<size_t>(model.lambda_offset + d)] =
        inst.ambiguity.expectation_rows[static_cast<size_t>(d)].rhs;
  }

  for (int a = 0; a < na; ++a) {
    std::vector<double> row(model.lp.objective.size(), 0.0);
    row[static_cast<size_t>(model.y_offset + a)] = -1.0;
    for (int d = 0; d < d0; ++d) {
      const ExpectationConstraint& ec =
          inst.ambiguity.expectation_rows[static_cast<size_t>(d)];
      for (const auto& [arc, value] : ec.coefficients) {
        if (arc == a) row[static_cast<size_t>(model.lambda_offset + d)] = value;
      }
    }
    row[static_cast<size_t>(model.nu_offset + a)] = 1.0;
    row[static_cast<size_t>(model.mu_offset + a)] = -1.0;
    model.lp.add_row(std::move(row), Relation::kEqual, 0.0);
  }
  const FlowSystem fs = flow_system(inst.graph, inst.source, inst.sink);
  for (int i = 0; i < fs.rows; ++i) {
    std::vector<double> row(model.lp.objective.size(), 0.0);
    for (int a = 0; a < fs.cols; ++a) {
      row[static_cast<size_t>(a)] = fs.at(i, a);
    }
    model.lp.add_row(std::move(row), Relation::kEqual,
                     fs.rhs[static_cast<size_t>(i)]);
  }
  return model;
}

double mip_relaxation_bound(const DrsppInstance& inst,
                            const CostBounds& bounds) {
  NodeLpBuilder builder(inst, bounds);
  const size_t na = static_cast<size_t>(inst.graph.arc_count());
  const LpSolution sol = builder.solve(std::vector<std::uint8_t>(na, 0),
                                       std::vector<std::uint8_t>(na, 1));
  if (sol.status != LpStatus::kOptimal) {
    throw LpNumericalFailure("relaxation did not reach optimality");
  }
  return sol.objective_value;
}

DrsppSolution solve_mip(const DrsppInstance& inst,
                        const SolveOptions& options) {
  check_instance(inst);
  const auto start = Clock::now();
  long lp_solves = 0;

  const CostBounds bounds = bounds_all(inst.ambiguity);
  lp_solves += 2 * inst.graph.arc_count();
  const double bounds_time = seconds_since(start);
  const auto search_start = Clock::now();

  // One feasibility LP up front separates contradictory expectation rows
  // from genuine solver failures.
  {
    const LinearProgram feas = scenario_lp(inst, bounds, nullptr);
    ++lp_solves;
    if (solve_lp(feas).status == LpStatus::kInfeasible) {
      throw AmbiguityInfeasibleError(
          "expectation rows contradict the per-arc cost bounds (S is empty)");
    }
  }

  // Warm incumbent: the no-expectation path evaluated at its worst case.
  const ShortestPathResult warm =
      shortest_path(inst.graph, bounds.c_max, inst.source, inst.sink);
  ScenarioResult incumbent_cert = worst_case_scenario(inst, bounds, warm.path);
  ++lp_solves;
  Path incumbent_path = warm.path;
  double incumbent = incumbent_cert.value;

  NodeLpBuilder builder(inst, bounds);
  const int na = inst.graph.arc_count();

  std::priority_queue<SearchNode> open;
  long next_id = 0;
  long nodes_explored = 0;
  double best_bound_closed = incumbent;

  {
    SearchNode root;
    root.y_lo.assign(static_cast<size_t>(na), 0);
    root.y_hi.assign(static_cast<size_t>(na), 1);
    root.id = next_id++;
    const LpSolution sol = builder.solve(root.y_lo, root.y_hi);
    ++lp_solves;
    ++nodes_explored;
    if (sol.status == LpStatus::kOptimal) {
      root.bound = sol.objective_value;
      root.y.assign(sol.x.begin(), sol.x.begin() + na);
      open.push(std::move(root));
    } else if (sol.status != LpStatus::kInfeasible) {
      throw LpNumericalFailure("root relaxation did not solve");
    }
  }

  while (!open.empty()) {
    SearchNode node = std::move(const_cast<SearchNode&>(open.top()));
    open.pop();
    if (node.bound >= incumbent - kValueTol) {
      best_bound_closed = std::min(incumbent, node.bound);
      break;
    }

    // Fractional variable closest to 1/2; -1 when integral.
    int branch_arc = -1;
    double best_frac = kIntegralityTol;
    for (int a = 0; a < na; ++a) {
      const double v = node.y[static_cast<size_t>(a)];
      const double frac = std::min(v, 1.0 - v);
      if (frac > best_frac) {
        best_frac = frac;
        branch_arc = a;
      }
    }

    if (branch_arc < 0) {
      std::vector<ArcId> path_arcs, cycle_arcs;
      if (decompose_integral(inst.graph, inst.source, inst.sink, node.y,
                             &path_arcs, &cycle_arcs)) {
        Path candidate = Path::from_arcs(inst.graph, path_arcs);
        ScenarioResult cert = worst_case_scenario(inst, bounds, candidate);
        ++lp_solves;
        bool fathom = true;
        if (!cycle_arcs.empty()) {
          double cycle_cost = 0.0;
          for (ArcId a : cycle_arcs) {
            cycle_cost += cert.costs[static_cast<size_t>(a)];
          }
          // Dropping the cycles is only safe when they cannot pay for
          // themselves; with nonnegative supports they never can.
          fathom = cycle_cost >= -kValueTol;
        }
        if (cert.value < incumbent - kValueTol) {
          incumbent = cert.value;
          incumbent_path = std::move(candidate);
          incumbent_cert = std::move(cert);
        }
        if (fathom) continue;
        branch_arc = cycle_arcs.front();
      } else {
        // No s-t chain in the support; force a decision on its first arc.
        for (int a = 0; a < na; ++a) {
          if (node.y[static_cast<size_t>(a)] > 0.5) {
            branch_arc = a;
            break;
          }
        }
        if (branch_arc < 0) continue;
      }
    }

    for (int side = 0; side < 2; ++side) {
      if (nodes_explored >= options.node_limit) {
        throw NodeLimitError("branch-and-bound node limit reached (" +
                             std::to_string(options.node_limit) + ")");
      }
      SearchNode child;
      child.y_lo = node.y_lo;
      child.y_hi = node.y_hi;
      if (side == 0) {
        child.y_hi[static_cast<size_t>(branch_arc)] = 0;
      } else {
        child.y_lo[static_cast<size_t>(branch_arc)] = 1;
      }
      child.id = next_id++;
      const LpSolution sol = builder.solve(child.y_lo, child.y_hi);
      ++lp_solves;
      ++nodes_explored;
      if (sol.status != LpStatus::kOptimal) continue;
      if (sol.objective_value >= incumbent - kValueTol) continue;
      child.bound = sol.objective_value;
      child.y.assign(sol.x.begin(), sol.x.begin() + na);
      open.push(std::move(child));
    }
  }
  if (open.empty()) best_bound_closed = incumbent;

  // Deterministic tie policy: on instances small enough to enumerate, return
  // the lexicographically smallest path attaining the optimum.
  if (count_paths(inst.graph, inst.source, inst.sink,
                  options.lex_polish_cap) <= options.lex_polish_cap) {
    for (const Path& p : enumerate_paths(inst.graph, inst.source, inst.sink,
                                         options.lex_polish_cap)) {
      ScenarioResult cert = worst_case_scenario(inst, bounds, p);
      ++lp_solves;
      if (cert.value <= incumbent + kValueTol) {
        incumbent_path = p;
        incumbent = cert.value;
        incumbent_cert = std::move(cert);
        break;
      }
    }
  }

  DrsppSolution solution;
  solution.path = std::move(incumbent_path);
  solution.objective = incumbent;
  solution.worst_case_costs = std::move(incumbent_cert.costs);
  solution.stats.nodes_explored = nodes_explored;
  solution.stats.lp_solves = lp_solves;
  solution.stats.bounds_time_s = bounds_time;
  solution.stats.search_time_s = seconds_since(search_start);
  solution.stats.best_bound = best_bound_closed;
  solution.stats.wall_time_s = seconds_since(start);
  return solution;
}

DrsppSolution oracle_solve(const DrsppInstance& inst, int cap) {
  check_instance(inst);
  const auto start = Clock::now();
  const CostBounds bounds = bounds_all(inst.ambiguity);
  const double bounds_time = seconds_since(start);

  const std::vector<Path> paths =
      enumerate_paths(inst.graph, inst.source, inst.sink, cap);
  long lp_solves = 2 * inst.graph.arc_count();

  DrsppSolution best;
  bool have = false;
  for (const Path& p : paths) {
    ScenarioResult cert = worst_case_scenario(inst, bounds, p);
    ++lp_solves;
    if (!have || cert.value < best.objective - kValueTol) {
      best.path = p;
      best.objective = cert.value;
      best.worst_case_costs = std::move(cert.costs);
      have = true;
    }
  }
  best.stats.lp_solves = lp_solves;
  best.stats.bounds_time_s = bounds_time;
  best.stats.best_bound = best.objective;
  best.stats.wall_time_s = seconds_since(start);
  return best;
}

}  // namespace drspp
