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

#include "drspp/lp.hpp"

#include <doctest.h>

#include "drspp/rng.hpp"
#include "test_util.hpp"

namespace drspp {
namespace {

TEST_CASE("the worked example's moment LP solves to 73") {
  // max 70 d1 + 100 d2  s.t.  d >= 0, d1 + d2 = 1, 0 <= d2 <= 0.1.
  LinearProgram lp(2, Sense::kMaximize);
  lp.objective = {70.0, 100.0};
  lp.add_row({1.0, 1.0}, Relation::kEqual, 1.0);
  lp.add_row({0.0, 1.0}, Relation::kLessEqual, 0.1);
  const LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.objective_value == doctest::Approx(73.0).epsilon(1e-12));
  CHECK(sol.x[0] == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(sol.x[1] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(std::abs(dual_objective(lp, sol) - 73.0) <= 1e-9);
}

TEST_CASE("pinned variable") {
  LinearProgram lp(1, Sense::kMaximize);
  lp.objective = {1.0};
  lp.add_row({1.0}, Relation::kLessEqual, 0.0);
  lp.add_row({1.0}, Relation::kGreaterEqual, 0.0);
  const LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.objective_value == doctest::Approx(0.0));
}

TEST_CASE("infeasible and unbounded statuses") {
  {
    LinearProgram lp(1, Sense::kMinimize);
    lp.objective = {1.0};
    lp.add_row({1.0}, Relation::kLessEqual, -1.0);  // x <= -1 with x >= 0
    CHECK(solve_lp(lp).status == LpStatus::kInfeasible);
  }
  {
    LinearProgram lp(1, Sense::kMaximize);
    lp.objective = {1.0};  // x >= 0 unbounded above
    CHECK(solve_lp(lp).status == LpStatus::kUnbounded);
  }
  {
    // Empty, inconsistent row.
    LinearProgram lp(1, Sense::kMinimize);
    lp.objective = {1.0};
    lp.add_row({0.0}, Relation::kGreaterEqual, 2.0);
    CHECK(solve_lp(lp).status == LpStatus::kInfeasible);
  }
}

LinearProgram random_lp(Rng& rng) {
  const int n = 1 + static_cast<int>(rng.uniform(0.0, 5.0));
  const int m = 1 + static_cast<int>(rng.uniform(0.0, 6.0));
  LinearProgram lp(n, rng.next_unit() < 0.5 ? Sense::kMinimize
                                            : Sense::kMaximize);
  for (int j = 0; j < n; ++j) {
    lp.objective[j] = rng.uniform(-3.0, 3.0);
    lp.lower[j] = rng.uniform(-4.0, 0.0);
    lp.upper[j] = lp.lower[j] + rng.uniform(0.5, 6.0);
  }
  for (int i = 0; i < m; ++i) {
    std::vector<double> coeffs(static_cast<size_t>(n));
    for (double& c : coeffs) c = rng.uniform(-2.0, 2.0);
    const double pick = rng.next_unit();
    const Relation rel = pick < 0.45 ? Relation::kLessEqual
                         : pick < 0.9 ? Relation::kGreaterEqual
                                      : Relation::kEqual;
    // Anchor half the rows at an interior point so feasible cases occur.
    double rhs;
    if (rng.next_unit() < 0.6) {
      double ax = 0.0;
      for (int j = 0; j < n; ++j) {
        ax += coeffs[static_cast<size_t>(j)] *
              (0.5 * (lp.lower[static_cast<size_t>(j)] +
                      lp.upper[static_cast<size_t>(j)]));
      }
      rhs = ax + (rel == Relation::kEqual ? 0.0 : rng.uniform(-0.5, 2.0));
    } else {
      rhs = rng.uniform(-4.0, 4.0);
    }
    lp.add_row(std::move(coeffs), rel, rhs);
  }
  return lp;
}

TEST_CASE("random LPs match the vertex-enumeration oracle") {
  Rng rng(2024);
  int optimal_count = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const LinearProgram lp = random_lp(rng);
    const test::VertexOracleResult oracle =
        test::vertex_enumeration_oracle(lp);
    const LpSolution sol = solve_lp(lp);
    if (!oracle.feasible) {
      CHECK(sol.status == LpStatus::kInfeasible);
      continue;
    }
    REQUIRE(sol.status == LpStatus::kOptimal);
    ++optimal_count;
    CHECK(sol.objective_value == doctest::Approx(oracle.value).epsilon(1e-6));
  }
  CHECK(optimal_count >= 20);  // the generator must exercise the solver
}

TEST_CASE("optimality certificates on random feasible LPs") {
  Rng rng(99);
  int checked = 0;
  while (checked < 30) {
    const LinearProgram lp = random_lp(rng);
    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::kOptimal) continue;
    ++checked;
    CHECK(feasibility_residual(lp, sol.x) <= 1e-9);
    CHECK(complementary_slackness_residual(lp, sol) <= 1e-7);
    CHECK(std::abs(dual_objective(lp, sol) - sol.objective_value) <= 1e-7);
  }
}

TEST_CASE("scaling the objective leaves the optimizer unchanged") {
  Rng rng(123);
  int checked = 0;
  while (checked < 20) {
    LinearProgram lp = random_lp(rng);
    const LpSolution base = solve_lp(lp);
    if (base.status != LpStatus::kOptimal) continue;
    ++checked;
    LinearProgram scaled = lp;
    for (double& c : scaled.objective) c *= 7.25;
    const LpSolution again = solve_lp(scaled);
    REQUIRE(again.status == LpStatus::kOptimal);
    for (size_t j = 0; j < base.x.size(); ++j) {
      CHECK(again.x[j] == doctest::Approx(base.x[j]).epsilon(1e-9));
    }
  }
}

TEST_CASE("degenerate LPs terminate") {
  // Many redundant rows through one vertex.
  LinearProgram lp(3, Sense::kMinimize);
  lp.objective = {-1.0, -1.0, -1.0};
  for (int i = 0; i < 8; ++i) {
    std::vector<double> coeffs{1.0, 1.0, 1.0};
    coeffs[static_cast<size_t>(i % 3)] += i * 1e-12;
    lp.add_row(std::move(coeffs), Relation::kLessEqual, 1.0);
  }
  const LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.objective_value == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("pivot budget failure is reported") {
  LinearProgram lp(2, Sense::kMinimize);
  lp.objective = {-1.0, -2.0};
  lp.add_row({1.0, 1.0}, Relation::kLessEqual, 1.0);
  LpOptions options;
  options.max_pivots = 0;
  CHECK_THROWS_AS(solve_lp(lp, options), LpNumericalFailure);
}

}  // namespace
}  // namespace drspp
