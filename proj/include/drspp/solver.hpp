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

#ifndef DRSPP_SOLVER_HPP
#define DRSPP_SOLVER_HPP

#include <vector>

#include "drspp/ambiguity.hpp"
#include "drspp/graph.hpp"
#include "drspp/lp.hpp"
#include "drspp/moment.hpp"

namespace drspp {

struct DrsppInstance {
  DirectedGraph graph;
  NodeId source = 0;
  NodeId sink = 0;
  AmbiguitySet ambiguity;
};

struct SolverStats {
  long nodes_explored = 0;
  long lp_solves = 0;
  double wall_time_s = 0.0;
  double bounds_time_s = 0.0;   // stage (i): per-arc cost bounds
  double search_time_s = 0.0;   // stage (ii): branch-and-bound
  double best_bound = 0.0;
};

struct DrsppSolution {
  Path path;
  double objective = 0.0;
  // The cost vector in S attaining the path's worst-case expected cost,
  // certified by re-solving the inner LP at the returned path.
  std::vector<double> worst_case_costs;
  SolverStats stats;
};

// The single-level mixed-integer reformulation: variables (y, lambda, mu,
// nu), coupling rows -y + B^T lambda + nu = mu followed by the flow rows
// G y = g, objective b^T lambda + c_max^T nu - c_min^T mu.
struct MipModel {
  LinearProgram lp;
  std::vector<int> integer_vars;  // the y block
  int num_arcs = 0;
  int num_expectation_rows = 0;
  int y_offset = 0;
  int lambda_offset = 0;
  int mu_offset = 0;
  int nu_offset = 0;
};

struct SolveOptions {
  long node_limit = 1000000;
  int workers = 1;  // accepted for interface parity; search runs one worker
  // When the instance has at most this many s-t paths, the final answer is
  // canonicalized to the lexicographically smallest optimal path.
  int lex_polish_cap = 512;
};

struct ScenarioResult {
  std::vector<double> costs;
  double value = 0.0;
};

// Polynomial route for instances without expectation rows: per-arc
// worst-case costs, then one deterministic shortest path.
DrsppSolution solve_no_expectation(const DrsppInstance& instance);

MipModel build_mip(const DrsppInstance& instance, const CostBounds& bounds);

// Exact optimum by best-bound branch-and-bound on the y variables with LP
// relaxation bounds.  Branches on the most fractional variable; the root
// incumbent is the no-expectation path evaluated at its worst-case scenario.
DrsppSolution solve_mip(const DrsppInstance& instance,
                        const SolveOptions& options = {});

// Worst-case expected cost of a fixed path: max c^T y over
// S = {c_min <= c <= c_max, B c <= b}.
ScenarioResult worst_case_scenario(const DrsppInstance& instance,
                                   const CostBounds& bounds, const Path& path);

// Value of the root LP relaxation as the branch-and-bound computes it (the
// per-arc duals of uncoupled arcs minimized out analytically).  Equals the
// relaxation value of the full build_mip model.
double mip_relaxation_bound(const DrsppInstance& instance,
                            const CostBounds& bounds);

// Exact-by-exhaustion reference: minimum of worst_case_scenario over every
// simple path (CapExceededError past `cap`).
DrsppSolution oracle_solve(const DrsppInstance& instance, int cap = 10000);

}  // namespace drspp

#endif  // DRSPP_SOLVER_HPP
