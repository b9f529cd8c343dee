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

#ifndef DRSPP_AMBIGUITY_HPP
#define DRSPP_AMBIGUITY_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "drspp/errors.hpp"
#include "drspp/graph.hpp"

namespace drspp {

// Bounds on the probability that an arc cost falls in [lo, hi].
struct QuantileConstraint {
  double lo = 0.0;
  double hi = 0.0;
  double q_lo = 0.0;
  double q_hi = 1.0;

  bool is_support() const { return q_lo == 1.0 && q_hi == 1.0; }
};

// Per-arc support and quantile constraints.  The support interval is stored
// as baseline 0 with probability pinned to one; all other baselines must lie
// inside it.
struct ArcAmbiguity {
  std::vector<QuantileConstraint> baselines;

  static ArcAmbiguity support_only(double lo, double hi);
  void add_quantile(double lo, double hi, double q_lo, double q_hi);

  double support_lo() const { return baselines.front().lo; }
  double support_hi() const { return baselines.front().hi; }
  int baseline_count() const { return static_cast<int>(baselines.size()); }
};

// One row of the linear expectation system B * E{c} <= b, sparse over arcs.
struct ExpectationConstraint {
  std::vector<std::pair<ArcId, double>> coefficients;  // sorted by arc id
  double rhs = 0.0;
};

// Partition of the support into elementary subintervals induced by the
// sorted distinct baseline endpoints.  `baseline_to_elementary[i]` lists the
// elementary subintervals contained in baseline i and
// `elementary_to_baseline[j]` lists the baselines containing elementary
// subinterval j; the two maps are mutually inverse.
struct ElementaryPartition {
  std::vector<std::pair<double, double>> bounds;
  std::vector<std::vector<int>> baseline_to_elementary;
  std::vector<std::vector<int>> elementary_to_baseline;

  int size() const { return static_cast<int>(bounds.size()); }
};

struct AmbiguitySet {
  std::vector<ArcAmbiguity> per_arc;  // indexed by arc id
  std::vector<ExpectationConstraint> expectation_rows;

  bool has_expectation_rows() const { return !expectation_rows.empty(); }
};

// A left endpoint of one baseline coinciding with a right endpoint of
// another (the configuration under which the worst-case expectation need not
// be attained).
struct A2Clash {
  double endpoint = 0.0;
  int baseline_with_lo = 0;
  int baseline_with_hi = 0;
};

struct ValidationReport {
  std::vector<A2Clash> a2_clashes;
  bool a1_feasible = false;
  double a1_slack = 0.0;

  bool ok() const { return a2_clashes.empty() && a1_feasible; }
  std::string describe() const;
};

class A2ViolationError : public DrsppError {
 public:
  A2ViolationError(const std::string& what, std::vector<A2Clash> clashes)
      : DrsppError(what), clashes_(std::move(clashes)) {}
  const std::vector<A2Clash>& clashes() const { return clashes_; }

 private:
  std::vector<A2Clash> clashes_;
};

class A1InfeasibleError : public DrsppError {
 public:
  using DrsppError::DrsppError;
};

ElementaryPartition elementary_partition(const ArcAmbiguity& arc);

// Checks endpoint separation (pairwise, support included) and the existence
// of a distribution satisfying every non-degenerate quantile range strictly,
// via a slack-maximization LP over the elementary partition.
ValidationReport validate(const ArcAmbiguity& arc);

// Throws A2ViolationError or A1InfeasibleError when validate fails.
void require_valid(const ArcAmbiguity& arc);

// Nudges clashing non-support endpoints apart by delta (default
// 1e-6 * support width).  The support itself never moves.
ArcAmbiguity repair_a2(const ArcAmbiguity& arc, double delta = -1.0);

// Two-sided Hoeffding half-width: eta = 2 exp(-2 r eps^2).
double hoeffding_epsilon(int r, double eta);

// Quantile range [hits/r - eps, hits/r + eps] clipped to [0, 1].
QuantileConstraint quantile_from_samples(int hits, int r,
                                         std::pair<double, double> subinterval,
                                         double eta);

// Two rows bracketing the expected total cost of `arc_subset`:
// mean - eps <= E{sum c_a} <= mean + eps with
// eps = (support_hi - support_lo) * hoeffding_epsilon(r, eta).  The lower
// bound is returned with negated coefficients so both rows read B c <= b.
std::pair<ExpectationConstraint, ExpectationConstraint> expectation_from_samples(
    std::span<const double> totals, std::vector<ArcId> arc_subset,
    double support_lo, double support_hi, double eta);

// Bonferroni split: eta0 / (n1 * arc_count + d0).
double bonferroni_eta(double eta0, int n1, int arc_count, int d0);

}  // namespace drspp

#endif  // DRSPP_AMBIGUITY_HPP
