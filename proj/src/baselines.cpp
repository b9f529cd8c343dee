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

#include "drspp/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace drspp {

BaselineResult budgeted_robust_sp(const DirectedGraph& graph,
                                  std::span<const double> l,
                                  std::span<const double> u, int gamma,
                                  NodeId s, NodeId t) {
  const int na = graph.arc_count();
  if (static_cast<int>(l.size()) != na || static_cast<int>(u.size()) != na) {
    throw std::invalid_argument("bound vectors must cover every arc");
  }
  if (gamma < 0 || gamma > na) {
    throw std::invalid_argument("gamma must lie in [0, |A|]");
  }
  std::vector<double> deviations(static_cast<size_t>(na));
  for (int a = 0; a < na; ++a) {
    if (l[a] > u[a]) throw std::invalid_argument("need l <= u per arc");
    deviations[static_cast<size_t>(a)] = u[a] - l[a];
  }

  std::vector<double> thresholds = deviations;
  std::sort(thresholds.begin(), thresholds.end(), std::greater<double>());
  thresholds.push_back(0.0);

  BaselineResult best;
  bool have = false;
  std::vector<double> costs(static_cast<size_t>(na));
  double prev_theta = -1.0;
  for (double theta : thresholds) {
    if (theta == prev_theta) continue;
    prev_theta = theta;
    for (int a = 0; a < na; ++a) {
      costs[static_cast<size_t>(a)] =
          l[a] + std::max(deviations[static_cast<size_t>(a)] - theta, 0.0);
    }
    const ShortestPathResult sp = shortest_path(graph, costs, s, t);
    const double value = gamma * theta + sp.cost;
    if (!have || value < best.value - 1e-12) {
      best.path = sp.path;
      best.value = value;
      best.arc_costs = costs;
      have = true;
    }
  }
  return best;
}

BaselineResult dr0_solve(const DirectedGraph& graph, NodeId s, NodeId t,
                         std::span<const double> support_lo,
                         std::span<const double> support_hi,
                         const MomentEstimates& estimates) {
  const int na = graph.arc_count();
  std::vector<double> costs(static_cast<size_t>(na));
  for (int a = 0; a < na; ++a) {
    const double sigma_hat = std::sqrt(estimates.sigma2_hat[a]);
    const double cost = std::min(estimates.mu_hat[a], sigma_hat);
    costs[static_cast<size_t>(a)] =
        std::clamp(cost, support_lo[a], support_hi[a]);
  }
  const ShortestPathResult sp = shortest_path(graph, costs, s, t);
  return BaselineResult{sp.path, sp.cost, std::move(costs)};
}

namespace {

// Largest value consistent with the containing-baseline set `flagged`:
// the tightest flagged right endpoint u*, improved to the smallest
// non-flagged left endpoint whose baseline still contains u* (the sample is
// then known to lie below that left endpoint).
double censored_max_from_set(const ArcAmbiguity& arc,
                             const std::vector<int>& flagged) {
  double u_star = arc.support_hi();
  for (int i : flagged) {
    u_star = std::min(u_star, arc.baselines[static_cast<size_t>(i)].hi);
  }
  double best = u_star;
  bool found = false;
  for (int i = 0; i < arc.baseline_count(); ++i) {
    if (std::find(flagged.begin(), flagged.end(), i) != flagged.end()) {
      continue;
    }
    const QuantileConstraint& q = arc.baselines[static_cast<size_t>(i)];
    if (q.lo <= u_star && u_star <= q.hi) {
      if (!found || q.lo < best) best = q.lo;
      found = true;
    }
  }
  return best;
}

// Solves 2 * arc_count * sum_j exp(-2 r (eps / (W xi_j))^2) = eta0 for eps.
// The left side falls monotonically from 2 * arc_count * W, so the root is
// unique; the bracket [0, W * max xi] is widened if the tail has not dropped
// below eta0 yet (only possible for very small r).
double bisect_epsilon(const std::vector<double>& xi, double eta0,
                      int arc_count, int r) {
  const int w = static_cast<int>(xi.size());
  const double max_xi = *std::max_element(xi.begin(), xi.end());
  if (max_xi <= 0.0) return 0.0;

  const auto violation = [&](double eps) {
    double total = 0.0;
    for (double x : xi) {
      if (x <= 0.0) continue;  // a zero maximum carries no deviation mass
      const double z = eps / (w * x);
      total += std::exp(-2.0 * r * z * z);
    }
    return 2.0 * arc_count * total;
  };

  double hi = w * max_xi;
  for (int i = 0; i < 200 && violation(hi) > eta0; ++i) hi *= 2.0;
  double lo = 0.0;
  for (int i = 0; i < 200 && (hi - lo) > 1e-14 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (violation(mid) > eta0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

}  // namespace

double censored_max_value(const ArcAmbiguity& arc,
                          const CensoredSample& flags) {
  if (static_cast<int>(flags.size()) != arc.baseline_count()) {
    throw UnresolvableSampleError("flag count does not match baselines");
  }
  if (!flags[0]) {
    throw UnresolvableSampleError("sample flagged outside its own support");
  }
  std::vector<int> flagged;
  for (int i = 0; i < arc.baseline_count(); ++i) {
    if (flags[static_cast<size_t>(i)]) flagged.push_back(i);
  }
  return censored_max_from_set(arc, flagged);
}

MomentEstimates censored_moment_estimates(
    const std::vector<std::vector<CensoredSample>>& samples_per_arc,
    const std::vector<ArcAmbiguity>& arcs,
    const std::vector<ElementaryPartition>& partitions, double eta0,
    int arc_count) {
  const size_t na = arcs.size();
  if (samples_per_arc.size() != na || partitions.size() != na) {
    throw std::invalid_argument("per-arc inputs must align");
  }

  MomentEstimates est;
  est.mu_hat.resize(na);
  est.sigma2_hat.resize(na);
  est.eps.resize(na);

  for (size_t a = 0; a < na; ++a) {
    const ArcAmbiguity& arc = arcs[a];
    const ElementaryPartition& part = partitions[a];
    const int w = part.size();

    // Per-region maxima; a sample's flag pattern must match some region's
    // containing-baseline set to be resolvable.
    std::vector<double> xi(static_cast<size_t>(w));
    for (int j = 0; j < w; ++j) {
      xi[static_cast<size_t>(j)] = censored_max_from_set(
          arc, part.elementary_to_baseline[static_cast<size_t>(j)]);
    }

    double sum1 = 0.0, sum2 = 0.0;
    const int r = static_cast<int>(samples_per_arc[a].size());
    if (r < 1) throw std::invalid_argument("need at least one sample per arc");
    for (const CensoredSample& flags : samples_per_arc[a]) {
      if (static_cast<int>(flags.size()) != arc.baseline_count()) {
        throw UnresolvableSampleError("flag count does not match baselines");
      }
      std::vector<int> flagged;
      for (int i = 0; i < arc.baseline_count(); ++i) {
        if (flags[static_cast<size_t>(i)]) flagged.push_back(i);
      }
      bool matched = false;
      for (int j = 0; j < w && !matched; ++j) {
        matched = part.elementary_to_baseline[static_cast<size_t>(j)] ==
                  flagged;
      }
      if (!matched) {
        throw UnresolvableSampleError(
            "membership flags match no elementary subinterval");
      }
      const double value = censored_max_from_set(arc, flagged);
      sum1 += value;
      sum2 += value * value;
    }
    const double mean1 = sum1 / r;
    const double mean2 = sum2 / r;

    std::vector<double> xi_sq(xi.size());
    for (size_t j = 0; j < xi.size(); ++j) xi_sq[j] = xi[j] * xi[j];
    const double eps1 = bisect_epsilon(xi, eta0, arc_count, r);
    const double eps2 = bisect_epsilon(xi_sq, eta0, arc_count, r);

    const double u = arc.support_hi();
    est.mu_hat[a] = std::min(mean1 + eps1, u);
    est.sigma2_hat[a] = std::min(mean2 + eps2, u * u);
    est.eps[a] = eps1;
  }
  return est;
}

}  // namespace drspp
