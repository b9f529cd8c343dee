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

#include "drspp/datagen.hpp"

#include <cmath>
#include <stdexcept>

#include "drspp/moment.hpp"
#include "drspp/rng.hpp"

namespace drspp {

namespace {

// Stream ids keep the nominal draw, the cost samples and the subinterval
// draw independent even under the same seed.
enum Stream : std::uint64_t {
  kStreamNominal = 1,
  kStreamSamples = 2,
  kStreamSubintervals = 3,
};

}  // namespace

void ExperimentConfig::check() const {
  if (v < 1 || r < 1) throw std::invalid_argument("need v >= 1 and r >= 1");
  if (n0 < 1) throw std::invalid_argument("need n0 >= 1");
  if (n1 < 0) throw std::invalid_argument("need n1 >= 0");
  if (!(kappa > 0.0 && kappa < 1.0)) {
    throw std::invalid_argument("kappa must lie in (0, 1)");
  }
  if (!(eta0 > 0.0 && eta0 < 1.0)) {
    throw std::invalid_argument("eta0 must lie in (0, 1)");
  }
}

DirectedGraph gen_layered(int v, int r, std::uint64_t /*seed*/) {
  if (v < 1 || r < 1) throw std::invalid_argument("need v >= 1 and r >= 1");
  const int node_count = v * r + 2;
  const NodeId source = 0;
  const NodeId sink = node_count - 1;
  const auto layer_node = [&](int layer, int k) {
    return 1 + (layer - 1) * r + k;
  };

  std::vector<Arc> arcs;
  ArcId next = 0;
  for (int k = 0; k < r; ++k) {
    arcs.push_back(Arc{next++, source, layer_node(1, k)});
  }
  for (int layer = 1; layer < v; ++layer) {
    for (int k = 0; k < r; ++k) {
      for (int k2 = 0; k2 < r; ++k2) {
        arcs.push_back(
            Arc{next++, layer_node(layer, k), layer_node(layer + 1, k2)});
      }
    }
  }
  for (int k = 0; k < r; ++k) {
    arcs.push_back(Arc{next++, layer_node(v, k), sink});
  }
  return DirectedGraph(node_count, std::move(arcs));
}

NominalModel gen_nominal(const DirectedGraph& graph, std::uint64_t seed) {
  const Rng base(seed, kStreamNominal);
  NominalModel model;
  model.arcs.resize(static_cast<size_t>(graph.arc_count()));
  for (int a = 0; a < graph.arc_count(); ++a) {
    Rng rng = base.substream(static_cast<std::uint64_t>(a));
    NominalArc& arc = model.arcs[static_cast<size_t>(a)];
    arc.l = rng.uniform_open(0.0, 100.0);
    arc.u = arc.l + rng.uniform_open(0.0, 100.0);
    arc.sigma_tilde = 1.0 / 64.0;
    const double root = std::sqrt(1.0 - 4.0 * arc.sigma_tilde);
    arc.m_tilde = rng.uniform_open(0.5 * (1.0 - root), 0.5 * (1.0 + root));
    arc.alpha =
        arc.m_tilde * arc.m_tilde * (1.0 - arc.m_tilde) / arc.sigma_tilde -
        arc.m_tilde;
    arc.beta = arc.alpha * (1.0 / arc.m_tilde - 1.0);
    arc.mean = arc.l + (arc.u - arc.l) * arc.m_tilde;
  }
  return model;
}

std::vector<std::vector<double>> sample_costs(const NominalModel& model, int n,
                                              std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  const Rng base(seed, kStreamSamples);
  std::vector<std::vector<double>> samples(model.arcs.size());
  for (size_t a = 0; a < model.arcs.size(); ++a) {
    Rng rng = base.substream(a);
    const NominalArc& arc = model.arcs[a];
    samples[a].resize(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
      samples[a][static_cast<size_t>(k)] =
          arc.l + (arc.u - arc.l) * rng.beta(arc.alpha, arc.beta);
    }
  }
  return samples;
}

namespace {

struct SubintervalDraws {
  // [arc][i] -> (lo, hi) and the sample hit count.
  std::vector<std::vector<std::pair<double, double>>> bounds;
  std::vector<std::vector<int>> hits;
};

SubintervalDraws draw_subintervals(const NominalModel& model,
                                   const std::vector<std::vector<double>>& samples,
                                   const ExperimentConfig& cfg) {
  const Rng base(cfg.seed, kStreamSubintervals);
  SubintervalDraws draws;
  draws.bounds.resize(model.arcs.size());
  draws.hits.resize(model.arcs.size());
  for (size_t a = 0; a < model.arcs.size(); ++a) {
    Rng rng = base.substream(a);
    const NominalArc& arc = model.arcs[a];
    const double width = cfg.kappa * (arc.u - arc.l);
    for (int i = 0; i < cfg.n1; ++i) {
      const double lo = rng.uniform_open(arc.l, arc.u - width);
      const double hi = lo + width;
      int hit = 0;
      for (double x : samples[a]) {
        if (lo <= x && x <= hi) ++hit;
      }
      draws.bounds[a].emplace_back(lo, hi);
      draws.hits[a].push_back(hit);
    }
  }
  return draws;
}

std::vector<ArcAmbiguity> quantile_arcs(const NominalModel& model,
                                        const SubintervalDraws& draws, int n0,
                                        double eta) {
  std::vector<ArcAmbiguity> arcs;
  arcs.reserve(model.arcs.size());
  for (size_t a = 0; a < model.arcs.size(); ++a) {
    ArcAmbiguity arc =
        ArcAmbiguity::support_only(model.arcs[a].l, model.arcs[a].u);
    for (size_t i = 0; i < draws.bounds[a].size(); ++i) {
      const QuantileConstraint q = quantile_from_samples(
          draws.hits[a][i], n0, draws.bounds[a][i], eta);
      arc.baselines.push_back(q);
    }
    arcs.push_back(std::move(arc));
  }
  return arcs;
}

}  // namespace

AmbiguitySet build_ambiguity(const DirectedGraph& graph,
                             const NominalModel& model,
                             const std::vector<std::vector<double>>& samples,
                             const ExperimentConfig& cfg, NodeId s, NodeId t) {
  cfg.check();
  if (t < 0) t = graph.node_count() - 1;
  if (model.arcs.size() != static_cast<size_t>(graph.arc_count()) ||
      samples.size() != model.arcs.size()) {
    throw std::invalid_argument("model/sample sizes must match the graph");
  }
  const int n0 = static_cast<int>(samples.front().size());
  const int na = graph.arc_count();

  AmbiguitySet ambiguity;
  if (cfg.n1 == 0 && !cfg.expectation_rows) {
    for (const NominalArc& arc : model.arcs) {
      ambiguity.per_arc.push_back(ArcAmbiguity::support_only(arc.l, arc.u));
    }
    return ambiguity;
  }
  if (cfg.n1 == 0) {
    throw std::invalid_argument(
        "expectation rows need n1 >= 1 (the provisional stage has no "
        "constraints to allocate to)");
  }

  const SubintervalDraws draws = draw_subintervals(model, samples, cfg);

  if (!cfg.expectation_rows) {
    ambiguity.per_arc = quantile_arcs(model, draws, n0,
                                      bonferroni_eta(cfg.eta0, cfg.n1, na, 0));
    return ambiguity;
  }

  // Pass 1: quantile-only set at the provisional level, worst-case costs,
  // near-optimal paths.
  const std::vector<ArcAmbiguity> provisional = quantile_arcs(
      model, draws, n0, bonferroni_eta(cfg.eta0, cfg.n1, na, 0));
  std::vector<double> c_max(static_cast<size_t>(na));
  for (int a = 0; a < na; ++a) {
    c_max[static_cast<size_t>(a)] =
        worst_case_cost(provisional[static_cast<size_t>(a)]).value;
  }
  const std::vector<Path> near_optimal = near_optimal_paths(graph, c_max, s, t);
  const int d0 = 2 * static_cast<int>(near_optimal.size());

  // Pass 2: rebuild at the final Bonferroni level and attach two rows per
  // near-optimal path from the observed path totals.
  const double eta = bonferroni_eta(cfg.eta0, cfg.n1, na, d0);
  ambiguity.per_arc = quantile_arcs(model, draws, n0, eta);
  for (const Path& p : near_optimal) {
    std::vector<double> totals(static_cast<size_t>(n0), 0.0);
    double lo = 0.0, hi = 0.0;
    for (ArcId a : p.arc_ids) {
      lo += model.arcs[static_cast<size_t>(a)].l;
      hi += model.arcs[static_cast<size_t>(a)].u;
      for (int k = 0; k < n0; ++k) {
        totals[static_cast<size_t>(k)] +=
            samples[static_cast<size_t>(a)][static_cast<size_t>(k)];
      }
    }
    auto [upper, lower] =
        expectation_from_samples(totals, p.arc_ids, lo, hi, eta);
    ambiguity.expectation_rows.push_back(std::move(upper));
    ambiguity.expectation_rows.push_back(std::move(lower));
  }
  return ambiguity;
}

double relative_expected_loss(const Path& path, const NominalModel& model,
                              const DirectedGraph& graph, NodeId s, NodeId t) {
  std::vector<double> means(model.arcs.size());
  for (size_t a = 0; a < model.arcs.size(); ++a) means[a] = model.arcs[a].mean;
  const double numerator = path.cost(means);
  const ShortestPathResult sp = shortest_path(graph, means, s, t);
  return numerator / sp.cost;
}

Example1Fixture example1() {
  // Nodes 1..4 are ids 0..3; arcs in the order (1,2), (2,4), (1,3), (2,3),
  // (3,4).
  std::vector<Arc> arcs = {
      Arc{0, 0, 1}, Arc{1, 1, 3}, Arc{2, 0, 2}, Arc{3, 1, 2}, Arc{4, 2, 3},
  };
  DirectedGraph graph(4, std::move(arcs));

  AmbiguitySet ambiguity;
  ArcAmbiguity a0 = ArcAmbiguity::support_only(0.0, 100.0);
  a0.add_quantile(70.0, 100.0, 0.0, 0.1);
  ambiguity.per_arc.push_back(std::move(a0));
  ambiguity.per_arc.push_back(ArcAmbiguity::support_only(1.0, 101.0));
  ambiguity.per_arc.push_back(ArcAmbiguity::support_only(0.0, 100.0));
  ambiguity.per_arc.push_back(ArcAmbiguity::support_only(0.0, 100.0));
  ambiguity.per_arc.push_back(ArcAmbiguity::support_only(0.0, 100.0));

  Example1Fixture fx{DrsppInstance{std::move(graph), 0, 3,
                                   std::move(ambiguity)},
                     {37.5, 51.0, 50.0, 50.0, 50.0}};
  return fx;
}

std::vector<std::vector<double>> example1_sample_costs(int n,
                                                       std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  const Example1Fixture fx = example1();
  const Rng base(seed, kStreamSamples);
  std::vector<std::vector<double>> samples(5);
  for (size_t a = 0; a < 5; ++a) {
    Rng rng = base.substream(a);
    samples[a].resize(static_cast<size_t>(n));
    const double lo = fx.instance.ambiguity.per_arc[a].support_lo();
    const double hi = fx.instance.ambiguity.per_arc[a].support_hi();
    for (int k = 0; k < n; ++k) {
      double value;
      if (a == 0) {
        // 0.95 U(0,70) + 0.05 U(70,100) mixture on the highlighted arc.
        value = rng.next_unit() < 0.95 ? rng.uniform(0.0, 70.0)
                                       : rng.uniform(70.0, 100.0);
      } else {
        value = rng.uniform(lo, hi);
      }
      samples[a][static_cast<size_t>(k)] = value;
    }
  }
  return samples;
}

}  // namespace drspp
