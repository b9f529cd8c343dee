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

#include "drspp/moment.hpp"

#include <sstream>

namespace drspp {

double DiscreteDistribution::mean() const {
  double m = 0.0;
  for (const Atom& a : atoms) m += a.value * a.mass;
  return m;
}

double DiscreteDistribution::total_mass() const {
  double m = 0.0;
  for (const Atom& a : atoms) m += a.mass;
  return m;
}

double DiscreteDistribution::probability(double lo, double hi) const {
  double p = 0.0;
  for (const Atom& a : atoms) {
    if (lo <= a.value && a.value <= hi) p += a.mass;
  }
  return p;
}

namespace {

// The moment problem is solved in the primal delta-space so the extremal
// distribution falls out of the solution vector directly.  `worst` selects
// right endpoints and maximization, otherwise left endpoints and
// minimization.
MomentResult extremal_cost(const ArcAmbiguity& arc, bool worst) {
  require_valid(arc);
  const ElementaryPartition part = elementary_partition(arc);
  const int w = part.size();

  MomentResult result;
  result.lp = LinearProgram(w, worst ? Sense::kMaximize : Sense::kMinimize);
  for (int j = 0; j < w; ++j) {
    result.lp.objective[static_cast<size_t>(j)] =
        worst ? part.bounds[static_cast<size_t>(j)].second
              : part.bounds[static_cast<size_t>(j)].first;
  }
  // Baseline 0 is the support: its mass row is the probability constraint.
  for (int i = 0; i < arc.baseline_count(); ++i) {
    const QuantileConstraint& q = arc.baselines[static_cast<size_t>(i)];
    std::vector<double> coeffs(static_cast<size_t>(w), 0.0);
    for (int j : part.baseline_to_elementary[static_cast<size_t>(i)]) {
      coeffs[static_cast<size_t>(j)] = 1.0;
    }
    if (i == 0) {
      result.lp.add_row(std::move(coeffs), Relation::kEqual, 1.0);
    } else {
      result.lp.add_row(coeffs, Relation::kLessEqual, q.q_hi);
      result.lp.add_row(std::move(coeffs), Relation::kGreaterEqual, q.q_lo);
    }
  }

  result.lp_solution = solve_lp(result.lp);
  if (result.lp_solution.status != LpStatus::kOptimal) {
    throw A1InfeasibleError("moment LP not optimal despite validation");
  }
  result.value = result.lp_solution.objective_value;
  for (int j = 0; j < w; ++j) {
    const double mass = result.lp_solution.x[static_cast<size_t>(j)];
    if (mass > 1e-12) {
      result.dist.atoms.push_back(DiscreteDistribution::Atom{
          worst ? part.bounds[static_cast<size_t>(j)].second
                : part.bounds[static_cast<size_t>(j)].first,
          mass});
    }
  }
  return result;
}

}  // namespace

MomentResult worst_case_cost(const ArcAmbiguity& arc) {
  return extremal_cost(arc, true);
}

MomentResult best_case_cost(const ArcAmbiguity& arc) {
  return extremal_cost(arc, false);
}

CostBounds bounds_all(const AmbiguitySet& ambiguity) {
  CostBounds bounds;
  bounds.c_min.reserve(ambiguity.per_arc.size());
  bounds.c_max.reserve(ambiguity.per_arc.size());
  std::vector<std::pair<ArcId, std::string>> failures;
  for (size_t a = 0; a < ambiguity.per_arc.size(); ++a) {
    try {
      bounds.c_max.push_back(worst_case_cost(ambiguity.per_arc[a]).value);
      bounds.c_min.push_back(best_case_cost(ambiguity.per_arc[a]).value);
    } catch (const DrsppError& e) {
      failures.emplace_back(static_cast<ArcId>(a), e.what());
      bounds.c_max.push_back(0.0);
      bounds.c_min.push_back(0.0);
    }
  }
  if (!failures.empty()) {
    std::ostringstream os;
    os << failures.size() << " arc(s) failed validation:";
    for (const auto& [arc, what] : failures) {
      os << " [arc " << arc << ": " << what << "]";
    }
    throw AmbiguityValidationError(os.str(), std::move(failures));
  }
  return bounds;
}

}  // namespace drspp
