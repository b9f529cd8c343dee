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

#include <doctest.h>

#include <cmath>

#include "drspp/datagen.hpp"
#include "drspp/rng.hpp"
#include "test_util.hpp"

namespace drspp {
namespace {

ArcAmbiguity worked_example_arc() {
  ArcAmbiguity arc = ArcAmbiguity::support_only(0.0, 100.0);
  arc.add_quantile(70.0, 100.0, 0.0, 0.1);
  return arc;
}

TEST_CASE("worst case of the worked-example arc") {
  const MomentResult res = worst_case_cost(worked_example_arc());
  CHECK(res.value == doctest::Approx(73.0).epsilon(1e-12));
  REQUIRE(res.dist.atoms.size() == 2);
  CHECK(res.dist.atoms[0].value == 70.0);
  CHECK(res.dist.atoms[0].mass == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(res.dist.atoms[1].value == 100.0);
  CHECK(res.dist.atoms[1].mass == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("best case of the worked-example arc is a point mass at zero") {
  const MomentResult res = best_case_cost(worked_example_arc());
  CHECK(res.value == doctest::Approx(0.0));
  REQUIRE(res.dist.atoms.size() == 1);
  CHECK(res.dist.atoms[0].value == 0.0);
  CHECK(res.dist.atoms[0].mass == doctest::Approx(1.0));
}

TEST_CASE("support-only arcs collapse to the interval-robust case") {
  const ArcAmbiguity arc = ArcAmbiguity::support_only(2.0, 9.0);
  const MomentResult worst = worst_case_cost(arc);
  CHECK(worst.value == doctest::Approx(9.0));
  REQUIRE(worst.dist.atoms.size() == 1);
  CHECK(worst.dist.atoms[0].value == 9.0);
  const MomentResult best = best_case_cost(arc);
  CHECK(best.value == doctest::Approx(2.0));
  CHECK(best.dist.atoms[0].value == 2.0);
}

TEST_CASE("half the mass pushed to a tail interval") {
  ArcAmbiguity arc = ArcAmbiguity::support_only(0.0, 10.0);
  arc.add_quantile(8.0, 10.0, 0.5, 1.0);
  const MomentResult best = best_case_cost(arc);
  CHECK(best.value == doctest::Approx(4.0).epsilon(1e-12));
}

// Random arcs with integer endpoints and quantile bounds on a 1/20 grid:
// these always admit mass grids aligned with the oracle's resolution.
ArcAmbiguity random_grid_arc(Rng& rng) {
  for (;;) {
    const int u = 8 + static_cast<int>(rng.uniform(0.0, 13.0));
    ArcAmbiguity arc = ArcAmbiguity::support_only(0.0, u);
    const int extra = static_cast<int>(rng.uniform(0.0, 3.0));
    for (int i = 0; i < extra; ++i) {
      const int a = static_cast<int>(rng.uniform(0.0, u));
      const int b = 1 + a + static_cast<int>(rng.uniform(0.0, u - a));
      arc.add_quantile(a, std::min(b, u), 0.0, 1.0);
    }
    const ElementaryPartition part = elementary_partition(arc);
    // Anchor the quantile ranges around a random grid distribution so a
    // feasible grid point exists by construction.
    std::vector<int> units(static_cast<size_t>(part.size()), 0);
    for (int k = 0; k < 20; ++k) {
      ++units[static_cast<size_t>(rng.uniform(0.0, part.size()))];
    }
    for (int i = 1; i < arc.baseline_count(); ++i) {
      int sum = 0;
      for (int j : part.baseline_to_elementary[static_cast<size_t>(i)]) {
        sum += units[static_cast<size_t>(j)];
      }
      const double q = sum / 20.0;
      arc.baselines[static_cast<size_t>(i)].q_lo = std::max(0.0, q - 0.10);
      arc.baselines[static_cast<size_t>(i)].q_hi = std::min(1.0, q + 0.15);
    }
    if (validate(arc).ok()) return arc;
  }
}

TEST_CASE("moment LPs match the mass-grid oracle and the gap closes") {
  Rng rng(31337);
  for (int trial = 0; trial < 40; ++trial) {
    const ArcAmbiguity arc = random_grid_arc(rng);
    const double u = arc.support_hi();
    for (const bool worst : {true, false}) {
      const MomentResult res =
          worst ? worst_case_cost(arc) : best_case_cost(arc);
      double prev_err = 1e300;
      for (int k : {20, 40, 100}) {
        const auto grid = test::grid_moment_oracle(arc, k, worst);
        REQUIRE(grid.has_value());
        const double err = std::abs(res.value - *grid);
        const int w = elementary_partition(arc).size();
        CHECK(err <= u * w / k + 1e-9);
        if (k == 100) CHECK(err <= prev_err + 1e-9);
        prev_err = std::min(prev_err, err);
      }
      // The LP optimum dominates every feasible grid point.
      const auto finest = test::grid_moment_oracle(arc, 100, worst);
      if (worst) {
        CHECK(res.value >= *finest - 1e-9);
      } else {
        CHECK(res.value <= *finest + 1e-9);
      }
      // Duality certificate at 1e-9.
      CHECK(std::abs(dual_objective(res.lp, res.lp_solution) - res.value) <=
            1e-9);
    }
  }
}

TEST_CASE("extremal distributions are feasible witnesses") {
  Rng rng(4242);
  for (int trial = 0; trial < 40; ++trial) {
    const ArcAmbiguity arc = random_grid_arc(rng);
    for (const bool worst : {true, false}) {
      const MomentResult res =
          worst ? worst_case_cost(arc) : best_case_cost(arc);
      CHECK(res.dist.total_mass() == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(res.dist.mean() == doctest::Approx(res.value).epsilon(1e-9));
      for (const QuantileConstraint& q : arc.baselines) {
        const double p = res.dist.probability(q.lo, q.hi);
        CHECK(p >= q.q_lo - 1e-9);
        CHECK(p <= q.q_hi + 1e-9);
      }
      for (const DiscreteDistribution::Atom& atom : res.dist.atoms) {
        CHECK(atom.value >= arc.support_lo());
        CHECK(atom.value <= arc.support_hi());
      }
    }
  }
}

TEST_CASE("bounds are ordered and adding a constraint tightens them") {
  Rng rng(515);
  for (int trial = 0; trial < 30; ++trial) {
    const ArcAmbiguity arc = random_grid_arc(rng);
    if (arc.baseline_count() < 2) continue;
    const double worst_full = worst_case_cost(arc).value;
    const double best_full = best_case_cost(arc).value;
    CHECK(best_full <= worst_full + 1e-9);

    ArcAmbiguity dropped = arc;
    dropped.baselines.pop_back();
    if (!validate(dropped).ok()) continue;
    CHECK(worst_case_cost(dropped).value >= worst_full - 1e-9);
    CHECK(best_case_cost(dropped).value <= best_full + 1e-9);
  }
}

TEST_CASE("bounds_all on the worked example") {
  const Example1Fixture fx = example1();
  const CostBounds bounds = bounds_all(fx.instance.ambiguity);
  const std::vector<double> expected{73.0, 101.0, 100.0, 100.0, 100.0};
  REQUIRE(bounds.c_max.size() == 5);
  for (size_t a = 0; a < 5; ++a) {
    CHECK(bounds.c_max[a] == doctest::Approx(expected[a]).epsilon(1e-12));
  }
  CHECK(bounds.c_min[0] == doctest::Approx(0.0));
  CHECK(bounds.c_min[1] == doctest::Approx(1.0));
}

TEST_CASE("bounds_all is per-arc independent") {
  Rng rng(616);
  std::vector<ArcAmbiguity> arcs;
  for (int a = 0; a < 5; ++a) arcs.push_back(random_grid_arc(rng));

  AmbiguitySet forward;
  forward.per_arc = arcs;
  AmbiguitySet reversed;
  reversed.per_arc = {arcs.rbegin(), arcs.rend()};

  const CostBounds fw = bounds_all(forward);
  const CostBounds rv = bounds_all(reversed);
  for (size_t a = 0; a < arcs.size(); ++a) {
    CHECK(fw.c_max[a] == rv.c_max[arcs.size() - 1 - a]);
    CHECK(fw.c_min[a] == rv.c_min[arcs.size() - 1 - a]);
  }
}

TEST_CASE("bounds_all aggregates failures with arc ids") {
  AmbiguitySet ambiguity;
  ambiguity.per_arc.push_back(ArcAmbiguity::support_only(0.0, 10.0));
  ArcAmbiguity bad = ArcAmbiguity::support_only(0.0, 100.0);
  bad.add_quantile(0.0, 50.0, 0.5, 0.5);
  bad.add_quantile(50.0, 100.0, 0.5, 0.5);
  ambiguity.per_arc.push_back(bad);
  try {
    bounds_all(ambiguity);
    FAIL("expected AmbiguityValidationError");
  } catch (const AmbiguityValidationError& e) {
    REQUIRE(e.failures().size() == 1);
    CHECK(e.failures()[0].first == 1);
  }
}

}  // namespace
}  // namespace drspp
