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

#ifndef DRSPP_LP_HPP
#define DRSPP_LP_HPP

#include <limits>
#include <string>
#include <vector>

#include "drspp/errors.hpp"

namespace drspp {

inline constexpr double kLpInfinity = std::numeric_limits<double>::infinity();

enum class Sense { kMinimize, kMaximize };
enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct LpRow {
  std::vector<double> coeffs;
  Relation rel = Relation::kLessEqual;
  double rhs = 0.0;
};

// Dense linear program over bounded variables.  Bounds may be +-infinity.
struct LinearProgram {
  Sense sense = Sense::kMinimize;
  std::vector<double> objective;
  std::vector<LpRow> rows;
  std::vector<double> lower;
  std::vector<double> upper;

  explicit LinearProgram(int num_vars = 0, Sense s = Sense::kMinimize)
      : sense(s),
        objective(static_cast<size_t>(num_vars), 0.0),
        lower(static_cast<size_t>(num_vars), 0.0),
        upper(static_cast<size_t>(num_vars), kLpInfinity) {}

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  void add_row(std::vector<double> coeffs, Relation rel, double rhs) {
    rows.push_back(LpRow{std::move(coeffs), rel, rhs});
  }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

// `duals[i]` is the marginal change of the optimal objective (in the
// program's own sense) per unit increase of `rows[i].rhs`.
struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double objective_value = 0.0;
  std::vector<double> duals;
  int pivots = 0;
};

struct LpOptions {
  double feas_tol = 1e-9;
  double opt_tol = 1e-9;
  int max_pivots = 100000;
  // Consecutive non-improving pivots before Bland's rule engages.
  int bland_stall = 64;
  bool log_tableau = false;
};

// Raised when the pivot budget is exhausted (cycling or ill-conditioning).
class LpNumericalFailure : public DrsppError {
 public:
  using DrsppError::DrsppError;
};

// Two-phase dense primal simplex with native bound handling.  On kOptimal the
// solution satisfies primal feasibility, complementary slackness and a
// primal-dual objective gap within the configured tolerances.
LpSolution solve_lp(const LinearProgram& lp, const LpOptions& options = {});

// Dual objective value recomputed from the returned duals, in the program's
// own sense.  Equals the primal objective within opt_tol at optimality.
double dual_objective(const LinearProgram& lp, const LpSolution& solution);

// Largest primal feasibility violation of x over rows and bounds.
double feasibility_residual(const LinearProgram& lp,
                            const std::vector<double>& x);

// Largest complementary-slackness violation: |dual| of a slack row and
// |reduced cost| of a variable strictly inside its bounds.
double complementary_slackness_residual(const LinearProgram& lp,
                                        const LpSolution& solution);

}  // namespace drspp

#endif  // DRSPP_LP_HPP
