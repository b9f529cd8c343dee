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

#ifndef DRSPP_MOMENT_HPP
#define DRSPP_MOMENT_HPP

#include <string>
#include <vector>

#include "drspp/ambiguity.hpp"
#include "drspp/lp.hpp"

namespace drspp {

// Extremal distribution of a per-arc moment problem.  Atoms sit at
// elementary-subinterval endpoints (right endpoints for the worst case, left
// endpoints for the best case).
struct DiscreteDistribution {
  struct Atom {
    double value = 0.0;
    double mass = 0.0;
  };
  std::vector<Atom> atoms;

  double mean() const;
  double total_mass() const;
  // Probability the distribution assigns to [lo, hi].
  double probability(double lo, double hi) const;
};

struct CostBounds {
  std::vector<double> c_min;
  std::vector<double> c_max;
};

struct MomentResult {
  double value = 0.0;
  DiscreteDistribution dist;
  LinearProgram lp;       // the moment LP that was solved
  LpSolution lp_solution; // kept for duality certificates
};

// Worst-case expected arc cost over the quantile ambiguity: the LP
// max sum_j U_j delta_j over nonnegative masses with sum 1 and every
// non-support baseline's mass inside its quantile range.
MomentResult worst_case_cost(const ArcAmbiguity& arc);

// Best-case counterpart: minimize with atoms at left endpoints.
MomentResult best_case_cost(const ArcAmbiguity& arc);

// Per-arc bounds for the whole ambiguity set; arcs are independent.  Raises
// AmbiguityValidationError listing every failing arc.
CostBounds bounds_all(const AmbiguitySet& ambiguity);

class AmbiguityValidationError : public DrsppError {
 public:
  AmbiguityValidationError(const std::string& what,
                           std::vector<std::pair<ArcId, std::string>> failures)
      : DrsppError(what), failures_(std::move(failures)) {}
  const std::vector<std::pair<ArcId, std::string>>& failures() const {
    return failures_;
  }

 private:
  std::vector<std::pair<ArcId, std::string>> failures_;
};

}  // namespace drspp

#endif  // DRSPP_MOMENT_HPP
