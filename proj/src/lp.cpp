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
//
// Two-phase primal simplex on the full dense tableau, with variable bounds
// handled natively (nonbasic variables rest at a bound and may flip to the
// opposite bound without a basis change).  Every row carries a unit
// "artificial" column; the artificials that are not needed by the crash
// basis stay fixed at zero and exist only so that B^-1 is available
// column-wise, which is how the duals are read off at the end.

#include "drspp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

namespace drspp {

namespace {

constexpr double kInf = kLpInfinity;
constexpr double kPivotTol = 1e-10;

enum class ColStatus : unsigned char { kBasic, kAtLower, kAtUpper, kFree };

struct Tableau {
  int m = 0;       // rows
  int ncols = 0;   // structural + slack + artificial
  int nstruct = 0;
  std::vector<double> t;        // m x ncols, row-major
  std::vector<double> d1, d2;   // phase-1 / phase-2 reduced-cost rows
  std::vector<double> lo, up, val;  // per column; val for nonbasic columns
  std::vector<ColStatus> status;
  std::vector<int> basis_col;   // per row
  std::vector<double> x_basic;  // per row
  double z1 = 0.0, z2 = 0.0;

  double* row(int i) { return t.data() + static_cast<size_t>(i) * ncols; }
};

struct RowInfo {
  int orig_index;   // index into lp.rows
  int slack_col;    // -1 for equality rows
  int art_col;
  double art_coeff;
};

void eliminate(std::vector<double>& target, const double* pivot_row, int ncols,
               double factor) {
  if (factor == 0.0) return;
  double* tgt = target.data();
  for (int j = 0; j < ncols; ++j) tgt[j] -= factor * pivot_row[j];
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const LpOptions& options) {
  const int n = lp.num_vars();
  if (static_cast<int>(lp.lower.size()) != n ||
      static_cast<int>(lp.upper.size()) != n) {
    throw std::invalid_argument("bound vectors must match objective size");
  }
  for (int j = 0; j < n; ++j) {
    if (lp.lower[j] > lp.upper[j]) {
      throw std::invalid_argument("variable lower bound exceeds upper bound");
    }
    if (!std::isfinite(lp.objective[j])) {
      throw std::invalid_argument("objective coefficients must be finite");
    }
  }

  const bool maximize = lp.sense == Sense::kMaximize;
  std::vector<double> cost(lp.objective);
  if (maximize) {
    for (double& c : cost) c = -c;
  }

  // Presolve: drop rows with no coefficients; an inconsistent empty row means
  // the program is infeasible outright.
  std::vector<int> kept_rows;
  double rhs_scale = 1.0;
  for (int i = 0; i < lp.num_rows(); ++i) {
    const LpRow& r = lp.rows[i];
    if (static_cast<int>(r.coeffs.size()) != n) {
      throw std::invalid_argument("row width does not match objective");
    }
    bool empty = true;
    for (double a : r.coeffs) {
      if (!std::isfinite(a)) {
        throw std::invalid_argument("row coefficients must be finite");
      }
      if (a != 0.0) empty = false;
    }
    rhs_scale = std::max(rhs_scale, std::abs(r.rhs));
    if (empty) {
      const bool ok = (r.rel == Relation::kLessEqual && 0.0 <= r.rhs) ||
                      (r.rel == Relation::kGreaterEqual && 0.0 >= r.rhs) ||
                      (r.rel == Relation::kEqual && r.rhs == 0.0);
      if (!ok) {
        LpSolution sol;
        sol.status = LpStatus::kInfeasible;
        sol.duals.assign(lp.rows.size(), 0.0);
        return sol;
      }
    } else {
      kept_rows.push_back(i);
    }
  }

  const int m = static_cast<int>(kept_rows.size());
  int nslack = 0;
  for (int k : kept_rows) {
    if (lp.rows[k].rel != Relation::kEqual) ++nslack;
  }

  Tableau tab;
  tab.m = m;
  tab.nstruct = n;
  tab.ncols = n + nslack + m;
  tab.t.assign(static_cast<size_t>(m) * tab.ncols, 0.0);
  tab.lo.assign(tab.ncols, 0.0);
  tab.up.assign(tab.ncols, 0.0);
  tab.val.assign(tab.ncols, 0.0);
  tab.status.assign(tab.ncols, ColStatus::kAtLower);
  tab.basis_col.assign(m, -1);
  tab.x_basic.assign(m, 0.0);

  // Structural columns start at a finite bound (lower preferred), free
  // variables at zero.
  for (int j = 0; j < n; ++j) {
    tab.lo[j] = lp.lower[j];
    tab.up[j] = lp.upper[j];
    if (std::isfinite(tab.lo[j])) {
      tab.val[j] = tab.lo[j];
      tab.status[j] = ColStatus::kAtLower;
    } else if (std::isfinite(tab.up[j])) {
      tab.val[j] = tab.up[j];
      tab.status[j] = ColStatus::kAtUpper;
    } else {
      tab.val[j] = 0.0;
      tab.status[j] = ColStatus::kFree;
    }
  }

  std::vector<RowInfo> rows(m);
  std::vector<int> col_nnz(static_cast<size_t>(n) + nslack, 0);
  {
    int slack_at = n;
    for (int i = 0; i < m; ++i) {
      const LpRow& r = lp.rows[kept_rows[i]];
      rows[i].orig_index = kept_rows[i];
      rows[i].art_col = n + nslack + i;
      if (r.rel == Relation::kEqual) {
        rows[i].slack_col = -1;
      } else {
        rows[i].slack_col = slack_at++;
        // a.x + s = rhs with s >= 0 for <= rows, s <= 0 for >= rows.
        if (r.rel == Relation::kLessEqual) {
          tab.lo[rows[i].slack_col] = 0.0;
          tab.up[rows[i].slack_col] = kInf;
        } else {
          tab.lo[rows[i].slack_col] = -kInf;
          tab.up[rows[i].slack_col] = 0.0;
        }
        tab.val[rows[i].slack_col] = 0.0;
        tab.status[rows[i].slack_col] = r.rel == Relation::kLessEqual
                                            ? ColStatus::kAtLower
                                            : ColStatus::kAtUpper;
        col_nnz[rows[i].slack_col] = 1;
      }
      for (int j = 0; j < n; ++j) {
        if (r.coeffs[j] != 0.0) ++col_nnz[j];
      }
    }
  }

  const double feas_tol = options.feas_tol * (1.0 + rhs_scale);

  // Build raw rows, crash a basis from singleton columns, scale rows so the
  // basic coefficient becomes one.  Rows without a usable singleton get their
  // artificial; unused artificials stay fixed at zero.
  std::vector<char> art_basic(m, 0);
  for (int i = 0; i < m; ++i) {
    const LpRow& r = lp.rows[rows[i].orig_index];
    double* trow = tab.row(i);
    for (int j = 0; j < n; ++j) trow[j] = r.coeffs[j];
    if (rows[i].slack_col >= 0) trow[rows[i].slack_col] = 1.0;

    double residual = r.rhs;
    for (int j = 0; j < n; ++j) residual -= trow[j] * tab.val[j];
    // Slacks start at zero, no residual contribution.

    int crash_col = -1;
    if (rows[i].slack_col >= 0) {
      const int sc = rows[i].slack_col;
      const double v = residual;  // coefficient is 1
      if (v >= tab.lo[sc] && v <= tab.up[sc]) crash_col = sc;
    }
    if (crash_col < 0) {
      for (int j = 0; j < n && crash_col < 0; ++j) {
        if (trow[j] == 0.0 || col_nnz[j] != 1) continue;
        const double v = tab.val[j] + residual / trow[j];
        if (v >= tab.lo[j] && v <= tab.up[j]) crash_col = j;
      }
    }

    const int art = rows[i].art_col;
    if (crash_col >= 0) {
      rows[i].art_coeff = 1.0;
      trow[art] = 1.0;
      tab.lo[art] = tab.up[art] = 0.0;
      tab.val[art] = 0.0;
      const double scale = trow[crash_col];
      if (scale != 1.0) {
        for (int j = 0; j < tab.ncols; ++j) trow[j] /= scale;
      }
      tab.basis_col[i] = crash_col;
      tab.x_basic[i] = crash_col < n ? tab.val[crash_col] + residual / scale
                                     : residual;
      tab.status[crash_col] = ColStatus::kBasic;
    } else {
      rows[i].art_coeff = residual >= 0.0 ? 1.0 : -1.0;
      trow[art] = rows[i].art_coeff;
      tab.lo[art] = 0.0;
      tab.up[art] = kInf;
      if (rows[i].art_coeff < 0.0) {
        for (int j = 0; j < tab.ncols; ++j) trow[j] = -trow[j];
      }
      tab.basis_col[i] = art;
      tab.x_basic[i] = std::abs(residual);
      tab.status[art] = ColStatus::kBasic;
      art_basic[i] = 1;
    }
  }

  // Rebuild rhs column interpretation: x_basic holds the basic values.
  // Reduced-cost rows for both phases from the crash basis.
  tab.d1.assign(tab.ncols, 0.0);
  tab.d2.assign(tab.ncols, 0.0);
  for (int j = 0; j < n; ++j) tab.d2[j] = cost[j];
  tab.z1 = 0.0;
  tab.z2 = 0.0;
  for (int j = 0; j < n; ++j) {
    if (tab.status[j] != ColStatus::kBasic) tab.z2 += cost[j] * tab.val[j];
  }
  for (int i = 0; i < m; ++i) {
    if (art_basic[i]) {
      tab.d1[rows[i].art_col] = 1.0;
    }
  }
  for (int i = 0; i < m; ++i) {
    if (art_basic[i]) {
      eliminate(tab.d1, tab.row(i), tab.ncols, 1.0);
      tab.z1 += tab.x_basic[i];
    }
    const int bc = tab.basis_col[i];
    if (bc < n && cost[bc] != 0.0) {
      eliminate(tab.d2, tab.row(i), tab.ncols, cost[bc]);
      tab.z2 += cost[bc] * tab.x_basic[i];
    }
  }

  LpSolution sol;
  sol.duals.assign(lp.rows.size(), 0.0);

  int pivots = 0;
  bool bland = false;
  int stall = 0;
  std::vector<double> alpha(static_cast<size_t>(m));

  for (int phase = 1; phase <= 2; ++phase) {
    std::vector<double>& d = phase == 1 ? tab.d1 : tab.d2;
    double& z = phase == 1 ? tab.z1 : tab.z2;
    bland = false;
    stall = 0;

    for (;;) {
      if (pivots >= options.max_pivots) {
        throw LpNumericalFailure("simplex exceeded max pivots (" +
                                 std::to_string(options.max_pivots) + ")");
      }

      // Entering column: Dantzig by default, Bland while stalled.
      int q = -1;
      double best = options.opt_tol;
      for (int j = 0; j < tab.ncols; ++j) {
        if (tab.status[j] == ColStatus::kBasic) continue;
        if (tab.lo[j] == tab.up[j]) continue;  // fixed, incl. idle artificials
        const double dj = d[j];
        double viol = 0.0;
        if (tab.status[j] == ColStatus::kAtLower && dj < -options.opt_tol) {
          viol = -dj;
        } else if (tab.status[j] == ColStatus::kAtUpper &&
                   dj > options.opt_tol) {
          viol = dj;
        } else if (tab.status[j] == ColStatus::kFree &&
                   std::abs(dj) > options.opt_tol) {
          viol = std::abs(dj);
        }
        if (viol > best) {
          best = viol;
          q = j;
          if (bland) break;  // first eligible column wins under Bland
        }
      }
      if (q < 0) break;  // phase optimal

      const double dq = d[q];
      const double sigma =
          tab.status[q] == ColStatus::kAtUpper
              ? -1.0
              : (tab.status[q] == ColStatus::kFree && dq > 0.0 ? -1.0 : 1.0);

      for (int i = 0; i < m; ++i) alpha[i] = tab.row(i)[q];

      // Ratio test: the entering variable moves by t >= 0 in direction
      // sigma; basic variable i changes at rate -sigma * alpha[i].
      double t_max = kInf;
      int leave = -1;
      bool leave_at_upper = false;
      double leave_abs_alpha = 0.0;
      for (int i = 0; i < m; ++i) {
        const double rate = -sigma * alpha[i];
        if (std::abs(rate) <= kPivotTol) continue;
        const int bc = tab.basis_col[i];
        double limit;
        bool at_upper;
        if (rate > 0.0) {
          if (tab.up[bc] == kInf) continue;
          limit = (tab.up[bc] - tab.x_basic[i]) / rate;
          at_upper = true;
        } else {
          if (tab.lo[bc] == -kInf) continue;
          limit = (tab.lo[bc] - tab.x_basic[i]) / rate;
          at_upper = false;
        }
        if (limit < 0.0) limit = 0.0;
        bool take;
        if (leave < 0) {
          take = true;
        } else if (limit < t_max - 1e-12) {
          take = true;
        } else if (limit <= t_max + 1e-12) {
          take = bland ? bc < tab.basis_col[leave]
                       : std::abs(alpha[i]) > leave_abs_alpha;
        } else {
          take = false;
        }
        if (take) {
          t_max = leave < 0 ? limit : std::min(t_max, limit);
          leave = i;
          leave_at_upper = at_upper;
          leave_abs_alpha = std::abs(alpha[i]);
        }
      }

      const double t_flip =
          (tab.lo[q] != -kInf && tab.up[q] != kInf) ? tab.up[q] - tab.lo[q]
                                                    : kInf;

      if (t_max == kInf && t_flip == kInf) {
        if (phase == 1) {
          throw LpNumericalFailure("phase-1 objective unbounded");
        }
        sol.status = LpStatus::kUnbounded;
        sol.pivots = pivots;
        return sol;
      }

      ++pivots;
      const double step = std::min(t_max, t_flip);
      const double dz1 = tab.d1[q] * sigma * step;
      const double dz2 = tab.d2[q] * sigma * step;

      if (t_flip < t_max || leave < 0) {
        // Bound flip: no basis change.
        for (int i = 0; i < m; ++i) {
          tab.x_basic[i] -= sigma * step * alpha[i];
        }
        tab.val[q] = tab.status[q] == ColStatus::kAtLower ? tab.up[q]
                                                          : tab.lo[q];
        tab.status[q] = tab.status[q] == ColStatus::kAtLower
                            ? ColStatus::kAtUpper
                            : ColStatus::kAtLower;
      } else {
        const int out_col = tab.basis_col[leave];
        const double enter_val = tab.val[q] + sigma * step;
        for (int i = 0; i < m; ++i) {
          if (i != leave) tab.x_basic[i] -= sigma * step * alpha[i];
        }
        // Eliminate column q from every other row and the objective rows.
        double* prow = tab.row(leave);
        const double pivot = prow[q];
        const double inv = 1.0 / pivot;
        for (int j = 0; j < tab.ncols; ++j) prow[j] *= inv;
        prow[q] = 1.0;
        for (int i = 0; i < m; ++i) {
          if (i == leave) continue;
          double* r = tab.row(i);
          const double f = r[q];
          if (f == 0.0) continue;
          for (int j = 0; j < tab.ncols; ++j) r[j] -= f * prow[j];
          r[q] = 0.0;
        }
        eliminate(tab.d1, prow, tab.ncols, tab.d1[q]);
        tab.d1[q] = 0.0;
        eliminate(tab.d2, prow, tab.ncols, tab.d2[q]);
        tab.d2[q] = 0.0;

        tab.val[out_col] = leave_at_upper ? tab.up[out_col] : tab.lo[out_col];
        tab.status[out_col] =
            leave_at_upper ? ColStatus::kAtUpper : ColStatus::kAtLower;
        if (tab.lo[out_col] == -kInf && tab.up[out_col] == kInf) {
          tab.status[out_col] = ColStatus::kFree;
          tab.val[out_col] = 0.0;
        }
        tab.basis_col[leave] = q;
        tab.x_basic[leave] = enter_val;
        tab.status[q] = ColStatus::kBasic;
      }

      tab.z1 += dz1;
      tab.z2 += dz2;

      if (options.log_tableau && tab.ncols <= 32) {
        std::fprintf(stderr, "pivot %d: z1=%.12g z2=%.12g\n", pivots, tab.z1,
                     tab.z2);
      }

      const double improve = phase == 1 ? -dz1 : -dz2;
      if (improve > 1e-12 * (1.0 + std::abs(z))) {
        stall = 0;
        bland = false;
      } else if (++stall >= options.bland_stall) {
        bland = true;
      }
    }

    if (phase == 1) {
      // Recompute the infeasibility sum from the basic values; the
      // incremental z1 can drift over long runs.
      double infeasibility = 0.0;
      for (int i = 0; i < m; ++i) {
        if (tab.basis_col[i] >= n + nslack) {
          infeasibility += std::max(0.0, tab.x_basic[i]);
        }
      }
      if (infeasibility > feas_tol) {
        sol.status = LpStatus::kInfeasible;
        sol.pivots = pivots;
        return sol;
      }
      // Freeze artificials for phase 2; basic ones that linger at zero can
      // only leave the basis from here on.
      for (int i = 0; i < m; ++i) {
        const int art = rows[i].art_col;
        tab.lo[art] = tab.up[art] = 0.0;
      }
    }
  }

  // Assemble the primal point and read the duals off the artificial columns:
  // the reduced cost of the unit column of row i is -y_i (times the sign the
  // artificial was created with).
  sol.status = LpStatus::kOptimal;
  sol.pivots = pivots;
  sol.x.assign(static_cast<size_t>(n), 0.0);
  for (int j = 0; j < n; ++j) {
    sol.x[j] = tab.status[j] == ColStatus::kBasic ? 0.0 : tab.val[j];
  }
  for (int i = 0; i < m; ++i) {
    if (tab.basis_col[i] < n) sol.x[tab.basis_col[i]] = tab.x_basic[i];
  }
  double obj = 0.0;
  for (int j = 0; j < n; ++j) obj += lp.objective[j] * sol.x[j];
  sol.objective_value = obj;
  for (int i = 0; i < m; ++i) {
    const double y = -tab.d2[rows[i].art_col] * rows[i].art_coeff;
    sol.duals[rows[i].orig_index] = maximize ? -y : y;
  }
  return sol;
}

double dual_objective(const LinearProgram& lp, const LpSolution& solution) {
  const int n = lp.num_vars();
  const bool maximize = lp.sense == Sense::kMaximize;
  const double flip = maximize ? -1.0 : 1.0;

  // Reduced costs in minimization form.
  std::vector<double> d(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) d[j] = flip * lp.objective[j];
  double value = 0.0;
  for (int i = 0; i < lp.num_rows(); ++i) {
    const double y = flip * solution.duals[i];
    value += y * lp.rows[i].rhs;
    if (y == 0.0) continue;
    for (int j = 0; j < n; ++j) d[j] -= y * lp.rows[i].coeffs[j];
  }
  for (int j = 0; j < n; ++j) {
    const double tol = 1e-9 * (1.0 + std::abs(lp.objective[j]));
    if (d[j] > tol && std::isfinite(lp.lower[j])) {
      value += d[j] * lp.lower[j];
    } else if (d[j] < -tol && std::isfinite(lp.upper[j])) {
      value += d[j] * lp.upper[j];
    }
  }
  return flip * value;
}

double feasibility_residual(const LinearProgram& lp,
                            const std::vector<double>& x) {
  double worst = 0.0;
  for (int j = 0; j < lp.num_vars(); ++j) {
    worst = std::max(worst, lp.lower[j] - x[j]);
    worst = std::max(worst, x[j] - lp.upper[j]);
  }
  for (const LpRow& r : lp.rows) {
    double ax = 0.0;
    for (int j = 0; j < lp.num_vars(); ++j) ax += r.coeffs[j] * x[j];
    switch (r.rel) {
      case Relation::kLessEqual:
        worst = std::max(worst, ax - r.rhs);
        break;
      case Relation::kGreaterEqual:
        worst = std::max(worst, r.rhs - ax);
        break;
      case Relation::kEqual:
        worst = std::max(worst, std::abs(ax - r.rhs));
        break;
    }
  }
  return worst;
}

double complementary_slackness_residual(const LinearProgram& lp,
                                        const LpSolution& solution) {
  const int n = lp.num_vars();
  const bool maximize = lp.sense == Sense::kMaximize;
  const double flip = maximize ? -1.0 : 1.0;
  double worst = 0.0;

  std::vector<double> d(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) d[j] = flip * lp.objective[j];
  for (int i = 0; i < lp.num_rows(); ++i) {
    const LpRow& r = lp.rows[i];
    const double y = flip * solution.duals[i];
    for (int j = 0; j < n; ++j) d[j] -= y * r.coeffs[j];
    if (r.rel == Relation::kEqual) continue;
    double ax = 0.0;
    for (int j = 0; j < n; ++j) ax += r.coeffs[j] * solution.x[j];
    worst = std::max(worst, std::abs(y * (ax - r.rhs)));
  }
  for (int j = 0; j < n; ++j) {
    const double to_lo = std::isfinite(lp.lower[j])
                             ? solution.x[j] - lp.lower[j]
                             : kLpInfinity;
    const double to_up = std::isfinite(lp.upper[j])
                             ? lp.upper[j] - solution.x[j]
                             : kLpInfinity;
    const double interior = std::min(to_lo, to_up);
    if (std::isfinite(interior)) {
      worst = std::max(worst, std::abs(d[j]) * std::max(interior, 0.0));
    } else {
      worst = std::max(worst, std::abs(d[j]));
    }
  }
  return worst;
}

}  // namespace drspp
