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

#include "drspp/ambiguity.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "drspp/lp.hpp"

namespace drspp {

ArcAmbiguity ArcAmbiguity::support_only(double lo, double hi) {
  if (!(0.0 <= lo && lo <= hi) || !std::isfinite(hi)) {
    throw std::invalid_argument("support must satisfy 0 <= lo <= hi < inf");
  }
  ArcAmbiguity arc;
  arc.baselines.push_back(QuantileConstraint{lo, hi, 1.0, 1.0});
  return arc;
}

void ArcAmbiguity::add_quantile(double lo, double hi, double q_lo,
                                double q_hi) {
  if (!(lo <= hi)) {
    throw std::invalid_argument("subinterval needs lo <= hi");
  }
  if (lo < support_lo() || hi > support_hi()) {
    throw std::invalid_argument("subinterval must lie inside the support");
  }
  if (!(0.0 <= q_lo && q_lo <= q_hi && q_hi <= 1.0)) {
    throw std::invalid_argument("quantile range needs 0 <= q_lo <= q_hi <= 1");
  }
  baselines.push_back(QuantileConstraint{lo, hi, q_lo, q_hi});
}

ElementaryPartition elementary_partition(const ArcAmbiguity& arc) {
  std::vector<double> endpoints;
  endpoints.reserve(2 * arc.baselines.size());
  for (const QuantileConstraint& q : arc.baselines) {
    endpoints.push_back(q.lo);
    endpoints.push_back(q.hi);
  }
  std::sort(endpoints.begin(), endpoints.end());
  endpoints.erase(std::unique(endpoints.begin(), endpoints.end()),
                  endpoints.end());

  ElementaryPartition part;
  if (endpoints.size() == 1) {
    // Degenerate support [l, l]: one point region.
    part.bounds.emplace_back(endpoints[0], endpoints[0]);
  } else {
    for (size_t k = 0; k + 1 < endpoints.size(); ++k) {
      part.bounds.emplace_back(endpoints[k], endpoints[k + 1]);
    }
  }

  const int d = arc.baseline_count();
  const int w = part.size();
  part.baseline_to_elementary.assign(static_cast<size_t>(d), {});
  part.elementary_to_baseline.assign(static_cast<size_t>(w), {});
  for (int j = 0; j < w; ++j) {
    for (int i = 0; i < d; ++i) {
      const QuantileConstraint& q = arc.baselines[static_cast<size_t>(i)];
      if (q.lo <= part.bounds[static_cast<size_t>(j)].first &&
          part.bounds[static_cast<size_t>(j)].second <= q.hi) {
        part.baseline_to_elementary[static_cast<size_t>(i)].push_back(j);
        part.elementary_to_baseline[static_cast<size_t>(j)].push_back(i);
      }
    }
  }
  return part;
}

std::string ValidationReport::describe() const {
  std::ostringstream os;
  if (ok()) {
    os << "ok (A1 slack " << a1_slack << ")";
    return os.str();
  }
  for (const A2Clash& c : a2_clashes) {
    os << "A2 violation at endpoint " << c.endpoint << " (baselines "
       << c.baseline_with_lo << " and " << c.baseline_with_hi << "); ";
  }
  if (!a1_feasible) os << "A1 infeasible";
  return os.str();
}

ValidationReport validate(const ArcAmbiguity& arc) {
  ValidationReport report;

  // A2: no left endpoint may coincide with a right endpoint, over all
  // ordered baseline pairs including a baseline against itself (a point
  // interval is exactly the discontinuity the dual argument cannot handle).
  const int d = arc.baseline_count();
  for (int i1 = 0; i1 < d; ++i1) {
    for (int i2 = 0; i2 < d; ++i2) {
      const double lo1 = arc.baselines[static_cast<size_t>(i1)].lo;
      const double hi2 = arc.baselines[static_cast<size_t>(i2)].hi;
      if (lo1 == hi2) {
        report.a2_clashes.push_back(A2Clash{lo1, i1, i2});
      }
    }
  }
  if (!report.a2_clashes.empty()) {
    report.a1_feasible = false;
    return report;
  }

  // A1 as a slack-maximization LP over the elementary partition: find masses
  // delta >= 0 with every non-degenerate quantile range satisfied with slack
  // sigma on both sides and every degenerate range met exactly.  A positive
  // optimum certifies the strict interiority A1 asks for.
  const ElementaryPartition part = elementary_partition(arc);
  const int w = part.size();
  LinearProgram lp(w + 1, Sense::kMaximize);
  const int sigma = w;
  lp.objective[sigma] = 1.0;
  lp.upper[sigma] = 1.0;
  for (int i = 0; i < d; ++i) {
    const QuantileConstraint& q = arc.baselines[static_cast<size_t>(i)];
    std::vector<double> coeffs(static_cast<size_t>(w) + 1, 0.0);
    for (int j : part.baseline_to_elementary[static_cast<size_t>(i)]) {
      coeffs[static_cast<size_t>(j)] = 1.0;
    }
    if (q.q_lo == q.q_hi) {
      lp.add_row(coeffs, Relation::kEqual, q.q_lo);
    } else {
      std::vector<double> upper_row = coeffs;
      upper_row[static_cast<size_t>(sigma)] = 1.0;
      lp.add_row(std::move(upper_row), Relation::kLessEqual, q.q_hi);
      coeffs[static_cast<size_t>(sigma)] = -1.0;
      lp.add_row(std::move(coeffs), Relation::kGreaterEqual, q.q_lo);
    }
  }

  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal || sol.objective_value < 1e-9) {
    report.a1_feasible = false;
    report.a1_slack = sol.status == LpStatus::kOptimal ? sol.objective_value
                                                       : 0.0;
  } else {
    report.a1_feasible = true;
    report.a1_slack = sol.objective_value;
  }
  return report;
}

void require_valid(const ArcAmbiguity& arc) {
  const ValidationReport report = validate(arc);
  if (!report.a2_clashes.empty()) {
    throw A2ViolationError(report.describe(), report.a2_clashes);
  }
  if (!report.a1_feasible) {
    throw A1InfeasibleError(report.describe());
  }
}

ArcAmbiguity repair_a2(const ArcAmbiguity& arc, double delta) {
  const double width = arc.support_hi() - arc.support_lo();
  if (delta <= 0.0) delta = 1e-6 * width;
  if (width <= 0.0) {
    throw A2ViolationError("degenerate support cannot be repaired",
                           {A2Clash{arc.support_lo(), 0, 0}});
  }

  ArcAmbiguity fixed = arc;
  for (int round = 0; round < 16; ++round) {
    const ValidationReport report = validate(fixed);
    if (report.a2_clashes.empty()) return fixed;
    for (const A2Clash& clash : report.a2_clashes) {
      // Move the non-support endpoint; prefer shrinking the left endpoint of
      // the lo-side baseline upward.
      if (clash.baseline_with_lo != 0) {
        QuantileConstraint& q =
            fixed.baselines[static_cast<size_t>(clash.baseline_with_lo)];
        q.lo = std::min(q.lo + delta, q.hi);
      } else if (clash.baseline_with_hi != 0) {
        QuantileConstraint& q =
            fixed.baselines[static_cast<size_t>(clash.baseline_with_hi)];
        q.hi = std::max(q.hi - delta, q.lo);
      }
    }
    delta *= 2.0;
  }
  const ValidationReport report = validate(fixed);
  if (!report.a2_clashes.empty()) {
    throw A2ViolationError("repair failed: " + report.describe(),
                           report.a2_clashes);
  }
  return fixed;
}

double hoeffding_epsilon(int r, double eta) {
  if (r < 1 || !(eta > 0.0 && eta < 1.0)) {
    throw std::invalid_argument("need r >= 1 and eta in (0, 1)");
  }
  return std::sqrt(std::log(2.0 / eta) / (2.0 * r));
}

QuantileConstraint quantile_from_samples(int hits, int r,
                                         std::pair<double, double> subinterval,
                                         double eta) {
  if (hits < 0 || hits > r) {
    throw std::invalid_argument("hits must lie in [0, r]");
  }
  const double eps = hoeffding_epsilon(r, eta);
  const double q_hat = static_cast<double>(hits) / r;
  QuantileConstraint q;
  q.lo = subinterval.first;
  q.hi = subinterval.second;
  q.q_lo = std::max(0.0, q_hat - eps);
  q.q_hi = std::min(1.0, q_hat + eps);
  return q;
}

std::pair<ExpectationConstraint, ExpectationConstraint>
expectation_from_samples(std::span<const double> totals,
                         std::vector<ArcId> arc_subset, double support_lo,
                         double support_hi, double eta) {
  if (totals.empty()) throw std::invalid_argument("totals must be nonempty");
  double mean = 0.0;
  for (double v : totals) {
    if (v < support_lo - 1e-9 || v > support_hi + 1e-9) {
      throw SampleOutOfSupportError(
          "observed total " + std::to_string(v) + " outside [" +
          std::to_string(support_lo) + ", " + std::to_string(support_hi) +
          "]");
    }
    mean += v;
  }
  mean /= static_cast<double>(totals.size());
  const double eps = (support_hi - support_lo) *
                     hoeffding_epsilon(static_cast<int>(totals.size()), eta);

  std::sort(arc_subset.begin(), arc_subset.end());
  ExpectationConstraint upper;
  ExpectationConstraint lower;
  for (ArcId a : arc_subset) {
    upper.coefficients.emplace_back(a, 1.0);
    lower.coefficients.emplace_back(a, -1.0);
  }
  upper.rhs = mean + eps;
  lower.rhs = -(mean - eps);
  return {upper, lower};
}

double bonferroni_eta(double eta0, int n1, int arc_count, int d0) {
  const int denom = n1 * arc_count + d0;
  if (denom <= 0) throw std::invalid_argument("no constraints to allocate to");
  return eta0 / static_cast<double>(denom);
}

}  // namespace drspp
