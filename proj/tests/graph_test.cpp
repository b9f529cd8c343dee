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

#include "drspp/graph.hpp"

#include <doctest.h>

#include "drspp/datagen.hpp"
#include "drspp/rng.hpp"
#include "test_util.hpp"

namespace drspp {
namespace {

DirectedGraph example1_graph() { return example1().instance.graph; }

TEST_CASE("shortest path on the worked example's worst-case costs") {
  const DirectedGraph g = example1_graph();
  const std::vector<double> costs{73.0, 101.0, 100.0, 100.0, 100.0};
  const ShortestPathResult sp = shortest_path(g, costs, 0, 3);
  CHECK(sp.path.arc_ids == std::vector<ArcId>{0, 1});
  CHECK(sp.cost == doctest::Approx(174.0).epsilon(1e-12));
}

TEST_CASE("shortest path on a single arc") {
  DirectedGraph g(2, {Arc{0, 0, 1}});
  const std::vector<double> costs{5.0};
  const ShortestPathResult sp = shortest_path(g, costs, 0, 1);
  CHECK(sp.path.arc_ids == std::vector<ArcId>{0});
  CHECK(sp.cost == 5.0);
}

TEST_CASE("shortest path equals enumeration minimum on random instances") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const DirectedGraph g = gen_layered(2, 2);
    std::vector<double> costs(static_cast<size_t>(g.arc_count()));
    for (double& c : costs) c = rng.uniform(0.0, 10.0);
    const ShortestPathResult sp =
        shortest_path(g, costs, 0, g.node_count() - 1);
    double best = 1e300;
    for (const Path& p : enumerate_paths(g, 0, g.node_count() - 1, 100)) {
      best = std::min(best, p.cost(costs));
    }
    CHECK(sp.cost == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("dijkstra and topological relaxation agree on layered graphs") {
  // Shifting all costs by a constant makes some negative, which switches the
  // implementation to the DAG relaxation; on layered graphs every path has
  // the same arc count, so the optimal path must not change.
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int v = 1 + static_cast<int>(rng.uniform(0.0, 3.0));
    const int r = 1 + static_cast<int>(rng.uniform(0.0, 3.0));
    const DirectedGraph g = gen_layered(v, r);
    std::vector<double> costs(static_cast<size_t>(g.arc_count()));
    for (double& c : costs) c = rng.uniform(0.0, 10.0);
    std::vector<double> shifted = costs;
    for (double& c : shifted) c -= 5.0;

    const ShortestPathResult a = shortest_path(g, costs, 0, g.node_count() - 1);
    const ShortestPathResult b =
        shortest_path(g, shifted, 0, g.node_count() - 1);
    CHECK(a.path.arc_ids == b.path.arc_ids);
    const double arcs_on_path = static_cast<double>(a.path.arc_ids.size());
    CHECK(a.cost == doctest::Approx(b.cost + 5.0 * arcs_on_path).epsilon(1e-9));
  }
}

TEST_CASE("negative costs on a cyclic graph are refused") {
  DirectedGraph g(3, {Arc{0, 0, 1}, Arc{1, 1, 0}, Arc{2, 1, 2}});
  const std::vector<double> costs{-1.0, 1.0, 1.0};
  CHECK_THROWS_AS(shortest_path(g, costs, 0, 2), NegativeCycleError);
}

TEST_CASE("unreachable sink raises NoPath") {
  DirectedGraph g(3, {Arc{0, 0, 1}});
  const std::vector<double> costs{1.0};
  CHECK_THROWS_AS(shortest_path(g, costs, 0, 2), NoPathError);
}

TEST_CASE("lexicographic tie-break picks the smallest arc sequence") {
  // Two parallel-cost routes 0->1->3 and 0->2->3 with equal totals.
  DirectedGraph g(4, {Arc{0, 0, 1}, Arc{1, 0, 2}, Arc{2, 1, 3}, Arc{3, 2, 3}});
  const std::vector<double> costs{1.0, 1.0, 1.0, 1.0};
  const ShortestPathResult sp = shortest_path(g, costs, 0, 3);
  CHECK(sp.path.arc_ids == std::vector<ArcId>{0, 2});
}

TEST_CASE("flow system of the worked example") {
  const DirectedGraph g = example1_graph();
  const FlowSystem fs = flow_system(g, 0, 3);
  REQUIRE(fs.rows == 4);
  REQUIRE(fs.cols == 5);
  // Column of arc (1,2) is (+1, -1, 0, 0)^T.
  CHECK(fs.at(0, 0) == 1.0);
  CHECK(fs.at(1, 0) == -1.0);
  CHECK(fs.at(2, 0) == 0.0);
  CHECK(fs.at(3, 0) == 0.0);
  CHECK(fs.rhs == std::vector<double>{1.0, 0.0, 0.0, -1.0});
}

TEST_CASE("flow system of a single arc") {
  DirectedGraph g(2, {Arc{0, 0, 1}});
  const FlowSystem fs = flow_system(g, 0, 1);
  CHECK(fs.node_arc_matrix == std::vector<double>{1.0, -1.0});
  CHECK(fs.rhs == std::vector<double>{1.0, -1.0});
}

TEST_CASE("every path satisfies the flow equations") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const int v = 1 + static_cast<int>(rng.uniform(0.0, 3.0));
    const int r = 1 + static_cast<int>(rng.uniform(0.0, 2.0));
    const DirectedGraph g = gen_layered(v, r);
    const FlowSystem fs = flow_system(g, 0, g.node_count() - 1);
    for (const Path& p : enumerate_paths(g, 0, g.node_count() - 1, 100)) {
      for (int i = 0; i < fs.rows; ++i) {
        double sum = 0.0;
        for (int a = 0; a < fs.cols; ++a) {
          sum += fs.at(i, a) * p.incidence[static_cast<size_t>(a)];
        }
        CHECK(sum == doctest::Approx(fs.rhs[static_cast<size_t>(i)]));
      }
    }
  }
}

TEST_CASE("near-optimal paths of the worked example") {
  const DirectedGraph g = example1_graph();
  const std::vector<double> costs{73.0, 101.0, 100.0, 100.0, 100.0};
  const std::vector<Path> paths = near_optimal_paths(g, costs, 0, 3);
  REQUIRE(paths.size() == 2);
  CHECK(paths[0].arc_ids == std::vector<ArcId>{0, 1});
  CHECK(paths[1].arc_ids == std::vector<ArcId>{2, 4});
}

TEST_CASE("near-optimal paths of a single-path graph") {
  DirectedGraph g(3, {Arc{0, 0, 1}, Arc{1, 1, 2}});
  const std::vector<double> costs{1.0, 1.0};
  const std::vector<Path> paths = near_optimal_paths(g, costs, 0, 2);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].arc_ids == std::vector<ArcId>{0, 1});
}

TEST_CASE("near-optimal alternates are shortest in their reduced graphs") {
  Rng rng(31);
  const DirectedGraph g = gen_layered(2, 2);
  std::vector<double> costs(static_cast<size_t>(g.arc_count()));
  for (double& c : costs) c = rng.uniform(1.0, 10.0);
  const std::vector<Path> paths = near_optimal_paths(g, costs, 0, 5);
  const std::vector<Path> all = enumerate_paths(g, 0, 5, 100);
  for (ArcId removed : paths[0].arc_ids) {
    // Best avoiding path by enumeration; some returned path must attain it.
    double best = 1e300;
    for (const Path& p : all) {
      if (p.incidence[static_cast<size_t>(removed)]) continue;
      best = std::min(best, p.cost(costs));
    }
    bool attained = false;
    for (const Path& p : paths) {
      if (p.incidence[static_cast<size_t>(removed)]) continue;
      if (p.cost(costs) <= best + 1e-9) attained = true;
    }
    CHECK(attained);
  }
}

TEST_CASE("path enumeration counts and order") {
  const DirectedGraph g = example1_graph();
  const std::vector<Path> paths = enumerate_paths(g, 0, 3, 10);
  REQUIRE(paths.size() == 3);
  // Lexicographic by arc sequence.
  CHECK(paths[0].arc_ids == std::vector<ArcId>{0, 1});
  CHECK(paths[1].arc_ids == std::vector<ArcId>{0, 3, 4});
  CHECK(paths[2].arc_ids == std::vector<ArcId>{2, 4});

  DirectedGraph single(2, {Arc{0, 0, 1}});
  CHECK(enumerate_paths(single, 0, 1, 10).size() == 1);

  const DirectedGraph layered = gen_layered(2, 2);
  CHECK(enumerate_paths(layered, 0, layered.node_count() - 1, 10).size() == 4);
  CHECK_THROWS_AS(enumerate_paths(layered, 0, layered.node_count() - 1, 3),
                  CapExceededError);
  CHECK(count_paths(layered, 0, layered.node_count() - 1, 3) == 4);
}

TEST_CASE("graph construction rejects malformed input") {
  CHECK_THROWS(DirectedGraph(2, {Arc{0, 0, 0}}));            // self loop
  CHECK_THROWS(DirectedGraph(2, {Arc{1, 0, 1}}));            // sparse ids
  CHECK_THROWS(Path::from_arcs(example1_graph(), {0, 4}));   // broken chain
}

}  // namespace
}  // namespace drspp
