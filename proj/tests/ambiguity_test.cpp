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

#include <doctest.h>

#include <cmath>

#include "drspp/rng.hpp"

namespace drspp {
namespace {

ArcAmbiguity three_baseline_arc() {
  // Baselines {[20,60], [30,70]} over support [0,100].
  ArcAmbiguity arc = ArcAmbiguity::support_only(0.0, 100.0);
  arc.add_quantile(20.0, 60.0, 0.2, 0.8);
  arc.add_quantile(30.0, 70.0, 0.3, 0.9);
  return arc;
}

TEST_CASE("elementary partition of the three-baseline example") {
  const ElementaryPartition part = elementary_partition(three_baseline_arc());
  const std::vector<std::pair<double, double>> expected{
      {0.0, 20.0}, {20.0, 30.0}, {30.0, 60.0}, {60.0, 70.0}, {70.0, 100.0}};
  CHECK(part.bounds == expected);
  // Support contains every region; [20,60] covers regions 1,2; [30,70]
  // covers 2,3.
  CHECK(part.baseline_to_elementary[0] == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(part.baseline_to_elementary[1] == std::vector<int>{1, 2});
  CHECK(part.baseline_to_elementary[2] == std::vector<int>{2, 3});
}

TEST_CASE("support-only partition is a single region") {
  const ElementaryPartition part =
      elementary_partition(ArcAmbiguity::support_only(3.0, 9.0));
  REQUIRE(part.size() == 1);
  CHECK(part.bounds[0] == std::pair<double, double>{3.0, 9.0});
  CHECK(part.baseline_to_elementary[0] == std::vector<int>{0});
}

TEST_CASE("worked-example arc partition and membership") {
  ArcAmbiguity arc = ArcAmbiguity::support_only(0.0, 100.0);
  arc.add_quantile(70.0, 100.0, 0.0, 0.1);
  const ElementaryPartition part = elementary_partition(arc);
  REQUIRE(part.size() == 2);
  CHECK(part.bounds[0] == std::pair<double, double>{0.0, 70.0});
  CHECK(part.bounds[1] == std::pair<double, double>{70.0, 100.0});
  CHECK(part.baseline_to_elementary[0] == std::vector<int>{0, 1});
  CHECK(part.baseline_to_elementary[1] == std::vector<int>{1});
}

TEST_CASE("partition properties on random ambiguities") {
  Rng rng(404);
  for (int trial = 0; trial < 1000; ++trial) {
    const double l = rng.uniform(0.0, 50.0);
    const double u = l + rng.uniform(1.0, 100.0);
    ArcAmbiguity arc = ArcAmbiguity::support_only(l, u);
    const int extra = static_cast<int>(rng.uniform(0.0, 4.0));
    for (int i = 0; i < extra; ++i) {
      const double a = rng.uniform(l, u);
      const double b = rng.uniform(l, u);
      arc.add_quantile(std::min(a, b), std::max(a, b), 0.1, 0.9);
    }
    const ElementaryPartition part = elementary_partition(arc);

    CHECK(part.size() <= 2 * arc.baseline_count() - 1);
    // Regions tile the support with disjoint interiors.
    CHECK(part.bounds.front().first == l);
    CHECK(part.bounds.back().second == u);
    for (int j = 0; j + 1 < part.size(); ++j) {
      CHECK(part.bounds[j].second == part.bounds[j + 1].first);
      CHECK(part.bounds[j].first < part.bounds[j].second);
    }
    // Mutually inverse membership maps.
    for (int i = 0; i < arc.baseline_count(); ++i) {
      for (int j = 0; j < part.size(); ++j) {
        const auto& we = part.baseline_to_elementary[static_cast<size_t>(i)];
        const auto& de = part.elementary_to_baseline[static_cast<size_t>(j)];
        const bool in_w = std::find(we.begin(), we.end(), j) != we.end();
        const bool in_d = std::find(de.begin(), de.end(), i) != de.end();
        CHECK(in_w == in_d);
        // Containment is exactly what membership claims.
        const QuantileConstraint& q = arc.baselines[static_cast<size_t>(i)];
        const bool contained = q.lo <= part.bounds[j].first &&
                               part.bounds[j].second <= q.hi;
        CHECK(in_w == contained);
      }
    }
  }
}

TEST_CASE("A2 rejection of touching baselines") {
  ArcAmbiguity arc = ArcAmbiguity::support_only(0.0, 100.0);
  arc.add_quantile(0.0, 50.0, 0.5, 0.5);
  arc.add_quantile(50.0, 100.0, 0.5, 0.5);
  const ValidationReport report = validate(arc);
  CHECK(!report.ok());
  REQUIRE(!report.a2_clashes.empty());
  CHECK(report.a2_clashes.front().endpoint == 50.0);
  CHECK_THROWS_WITH_AS(require_valid(arc),
                       doctest::Contains("endpoint 50"), A2ViolationError);
}

TEST_CASE("worked-example arc validates") {
  ArcAmbiguity arc = ArcAmbiguity::support_only(0.0, 100.0);
  arc.add_quantile(70.0, 100.0, 0.0, 0.1);
  const ValidationReport report = validate(arc);
  CHECK(report.ok());
  CHECK(report.a1_slack > 0.0);
}

TEST_CASE("A1 infeasible when required masses exceed one") {
  ArcAmbiguity arc = ArcAmbiguity::support_only(0.0, 100.0);
  arc.add_quantile(0.0, 40.0, 0.9, 1.0);
  arc.add_quantile(60.0, 100.0, 0.9, 1.0);
  const ValidationReport report = validate(arc);
  CHECK(report.a2_clashes.empty());
  CHECK(!report.a1_feasible);
  CHECK_THROWS_AS(require_valid(arc), A1InfeasibleError);
}

TEST_CASE("repair perturbs clashing endpoints") {
  ArcAmbiguity arc = ArcAmbiguity::support_only(0.0, 100.0);
  arc.add_quantile(0.0, 50.0, 0.3, 0.6);
  arc.add_quantile(50.0, 100.0, 0.3, 0.6);
  const ArcAmbiguity fixed = repair_a2(arc);
  CHECK(validate(fixed).a2_clashes.empty());
  // The support never moves.
  CHECK(fixed.support_lo() == 0.0);
  CHECK(fixed.support_hi() == 100.0);
  CHECK(std::abs(fixed.baselines[2].lo - 50.0) < 1e-3);
}

TEST_CASE("quantile-from-samples inverts the Hoeffding bound") {
  const QuantileConstraint q =
      quantile_from_samples(37, 100, {10.0, 20.0}, 0.05);
  const double eps = hoeffding_epsilon(100, 0.05);
  // Defining equation: 2 exp(-2 r eps^2) = eta.
  CHECK(2.0 * std::exp(-2.0 * 100 * eps * eps) ==
        doctest::Approx(0.05).epsilon(1e-12));
  CHECK(eps == doctest::Approx(0.13581015157406195).epsilon(1e-12));
  CHECK(q.q_lo == doctest::Approx(0.37 - eps).epsilon(1e-12));
  CHECK(q.q_hi == doctest::Approx(0.37 + eps).epsilon(1e-12));
  CHECK(q.lo == 10.0);
  CHECK(q.hi == 20.0);
}

TEST_CASE("quantile clipping yields a vacuous constraint") {
  // r=1 with a lax eta gives eps > 1.
  const QuantileConstraint q = quantile_from_samples(1, 1, {0.0, 1.0}, 0.2);
  CHECK(q.q_lo == 0.0);
  CHECK(q.q_hi == 1.0);
}

TEST_CASE("quantile coverage over resampled constructions") {
  // True probability of the subinterval under a known beta marginal,
  // via fine Simpson integration of the density.
  const double alpha = 7.5, beta = 7.5;
  const double lo = 0.3, hi = 0.6;
  const auto density = [&](double x) {
    return std::pow(x, alpha - 1.0) * std::pow(1.0 - x, beta - 1.0);
  };
  const auto integrate = [&](double a, double b) {
    const int steps = 20000;
    const double h = (b - a) / steps;
    double sum = density(a) + density(b);
    for (int i = 1; i < steps; ++i) {
      sum += density(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return sum * h / 3.0;
  };
  const double truth = integrate(lo, hi) / integrate(0.0, 1.0);

  Rng rng(555);
  const int redraws = 300;
  int covered = 0;
  for (int trial = 0; trial < redraws; ++trial) {
    int hits = 0;
    for (int k = 0; k < 100; ++k) {
      const double x = rng.beta(alpha, beta);
      if (lo <= x && x <= hi) ++hits;
    }
    const QuantileConstraint q =
        quantile_from_samples(hits, 100, {lo, hi}, 0.05);
    if (q.q_lo <= truth && truth <= q.q_hi) ++covered;
  }
  // One-sided binomial bound at the 0.01 level around 95% coverage.
  const double threshold =
      0.95 - 2.326 * std::sqrt(0.95 * 0.05 / redraws);
  CHECK(static_cast<double>(covered) / redraws >= threshold);
}

TEST_CASE("expectation rows from observed totals") {
  const std::vector<double> totals{100.0, 100.0, 100.0};
  const auto [upper, lower] =
      expectation_from_samples(totals, {2, 0}, 0.0, 300.0, 0.05);
  const double eps = 300.0 * std::sqrt(std::log(40.0) / 6.0);
  CHECK(upper.rhs == doctest::Approx(100.0 + eps).epsilon(1e-12));
  CHECK(lower.rhs == doctest::Approx(-(100.0 - eps)).epsilon(1e-12));
  // Coefficients sorted by arc, signs per row direction.
  REQUIRE(upper.coefficients.size() == 2);
  CHECK(upper.coefficients[0] == std::pair<ArcId, double>{0, 1.0});
  CHECK(upper.coefficients[1] == std::pair<ArcId, double>{2, 1.0});
  CHECK(lower.coefficients[0] == std::pair<ArcId, double>{0, -1.0});

  CHECK_THROWS_AS(
      expectation_from_samples(totals, {0}, 0.0, 50.0, 0.05),
      SampleOutOfSupportError);
}

TEST_CASE("expectation epsilon vanishes as samples grow") {
  const double width = 100.0;
  double prev = 1e300;
  for (int r : {10, 100, 1000, 100000}) {
    const double eps = width * hoeffding_epsilon(r, 0.05);
    CHECK(eps < prev);
    prev = eps;
  }
  CHECK(prev < 1.0);
}

TEST_CASE("bonferroni split") {
  CHECK(bonferroni_eta(0.05, 4, 10, 2) ==
        doctest::Approx(0.05 / 42.0).epsilon(1e-15));
  CHECK(bonferroni_eta(0.05, 1, 1, 0) == doctest::Approx(0.05));
  // Budget identity: the per-constraint level times the count is eta0.
  const double eta = bonferroni_eta(0.05, 3, 7, 4);
  CHECK(eta * (3 * 7 + 4) == doctest::Approx(0.05).epsilon(1e-15));
}

TEST_CASE("sampled constructions validate") {
  // Continuous endpoint draws give A2 almost surely and the empirical
  // distribution witnesses A1.
  Rng rng(777);
  for (int trial = 0; trial < 50; ++trial) {
    const double l = rng.uniform(0.0, 50.0);
    const double u = l + rng.uniform(5.0, 100.0);
    ArcAmbiguity arc = ArcAmbiguity::support_only(l, u);
    std::vector<double> xs(100);
    for (double& x : xs) x = rng.uniform(l, u);
    for (int i = 0; i < 3; ++i) {
      const double width = 0.4 * (u - l);
      const double lo = rng.uniform_open(l, u - width);
      const double hi = lo + width;
      int hits = 0;
      for (double x : xs) {
        if (lo <= x && x <= hi) ++hits;
      }
      arc.baselines.push_back(
          quantile_from_samples(hits, 100, {lo, hi}, 0.001));
    }
    CHECK(validate(arc).ok());
  }
}

}  // namespace
}  // namespace drspp
