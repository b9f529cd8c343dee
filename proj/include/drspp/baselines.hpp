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

#ifndef DRSPP_BASELINES_HPP
#define DRSPP_BASELINES_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "drspp/ambiguity.hpp"
#include "drspp/graph.hpp"

namespace drspp {

// Upper bounds on first and second moments per arc, plus the confidence
// widening applied to the mean estimate.
struct MomentEstimates {
  std::vector<double> mu_hat;
  std::vector<double> sigma2_hat;
  std::vector<double> eps;
};

struct BudgetParams {
  int gamma = 0;
};

struct BaselineResult {
  Path path;
  double value = 0.0;
  std::vector<double> arc_costs;
};

// Budgeted-uncertainty robust shortest path: at most gamma arc costs rise
// from l to u.  Solved exactly with |A|+1 shortest-path calls: for each
// threshold theta among the sorted deviations (and zero), minimize
// gamma*theta + SP(l + max(d - theta, 0)).
BaselineResult budgeted_robust_sp(const DirectedGraph& graph,
                                  std::span<const double> l,
                                  std::span<const double> u, int gamma,
                                  NodeId s, NodeId t);

// Marginal-moment model: the worst-case expected arc cost under support plus
// first/second-moment caps is min{mu_hat, sqrt(sigma2_hat)}, clamped to the
// support after truncation.
BaselineResult dr0_solve(const DirectedGraph& graph, NodeId s, NodeId t,
                         std::span<const double> support_lo,
                         std::span<const double> support_hi,
                         const MomentEstimates& estimates);

// Membership flags over an arc's baselines (index 0 is the support).
using CensoredSample = std::vector<std::uint8_t>;

// Interval-censored estimation of the moment caps.  Every sample is replaced
// by the largest value consistent with its membership flags; the mean of
// those maxima is widened by an eps solved by bisection from the Bonferroni
// allocation eta0 = 2 |A| sum_j exp(-2 r (eps / (W Xi_j))^2), then truncated
// to the support.  The second moment applies the identical machinery to the
// squared maxima.
MomentEstimates censored_moment_estimates(
    const std::vector<std::vector<CensoredSample>>& samples_per_arc,
    const std::vector<ArcAmbiguity>& arcs,
    const std::vector<ElementaryPartition>& partitions, double eta0,
    int arc_count);

// Largest value consistent with a set of membership flags; exposed for the
// tests' hand-checks.
double censored_max_value(const ArcAmbiguity& arc,
                          const CensoredSample& flags);

}  // namespace drspp

#endif  // DRSPP_BASELINES_HPP
