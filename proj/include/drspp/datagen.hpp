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

#ifndef DRSPP_DATAGEN_HPP
#define DRSPP_DATAGEN_HPP

#include <cstdint>
#include <vector>

#include "drspp/ambiguity.hpp"
#include "drspp/graph.hpp"
#include "drspp/solver.hpp"

namespace drspp {

// Ground-truth marginal of one arc: a beta distribution rescaled to
// [l, u], with normalized mean m_tilde and normalized variance sigma_tilde.
struct NominalArc {
  double l = 0.0;
  double u = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double m_tilde = 0.0;
  double sigma_tilde = 0.0;
  double mean = 0.0;
};

struct NominalModel {
  std::vector<NominalArc> arcs;
};

struct ExperimentConfig {
  int v = 6;
  int r = 4;
  int n0 = 100;           // samples per arc
  int n1 = 4;             // quantile subintervals per arc
  double kappa = 0.6;     // relative subinterval width
  double eta0 = 0.05;     // ambiguity-set violation probability
  std::vector<int> gamma_list = {0, 2, 4, 7};
  std::uint64_t seed = 1;
  bool expectation_rows = true;

  void check() const;
};

// Fully-connected layered graph: single source, v intermediate layers of r
// nodes, single sink; |A| = 2r + (v-1)r^2.  The topology is deterministic;
// the seed parameter is kept for interface stability.
DirectedGraph gen_layered(int v, int r, std::uint64_t seed = 0);

// Per-arc supports l ~ U(0,100), u = l + U(0,100), and beta shapes derived
// from a normalized mean drawn so both shape parameters stay positive
// (sigma_tilde fixed at 1/64).  Bit-identical regeneration per seed.
NominalModel gen_nominal(const DirectedGraph& graph, std::uint64_t seed);

// n independent cost draws per arc ([arc][draw]); arcs use disjoint
// substreams so sampling is order-independent across arcs.
std::vector<std::vector<double>> sample_costs(const NominalModel& model, int n,
                                              std::uint64_t seed);

// Data-driven ambiguity set: per arc one support row plus n1 random
// subintervals of relative width kappa with Hoeffding quantile ranges, and
// (optionally) two expectation rows per near-optimal path built from the
// same sample draws.  The Bonferroni level eta0/(n1 |A| + D0) needs the
// final expectation-row count, so quantile ranges are built provisionally
// at eta0/(n1 |A|), the near-optimal path set is formed on those worst-case
// costs, and the ranges are then rebuilt at the final level.
AmbiguitySet build_ambiguity(const DirectedGraph& graph,
                             const NominalModel& model,
                             const std::vector<std::vector<double>>& samples,
                             const ExperimentConfig& cfg, NodeId s = 0,
                             NodeId t = -1);

// rho0: nominal expected cost of `path` over the best nominal expected cost
// among all paths; >= 1 with equality at the nominal optimum.
double relative_expected_loss(const Path& path, const NominalModel& model,
                              const DirectedGraph& graph, NodeId s, NodeId t);

// The worked four-node example: support [0,100] everywhere except arc
// (2,4) with [1,101], one quantile constraint on arc (1,2) bounding the
// probability of [70,100] by 0.1, and a uniform/mixture nominal model.
struct Example1Fixture {
  DrsppInstance instance;
  std::vector<double> nominal_means;
};

Example1Fixture example1();

// Cost draws from the fixture's nominal model ([arc][draw]).
std::vector<std::vector<double>> example1_sample_costs(int n,
                                                       std::uint64_t seed);

}  // namespace drspp

#endif  // DRSPP_DATAGEN_HPP
