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

#include "drspp/io.hpp"

#include <fstream>
#include <stdexcept>

namespace drspp {

using nlohmann::json;

json graph_to_json(const DirectedGraph& graph, NodeId s, NodeId t) {
  json arcs = json::array();
  for (const Arc& a : graph.arcs()) {
    arcs.push_back({{"id", a.id}, {"tail", a.tail}, {"head", a.head}});
  }
  return json{{"nodes", graph.node_count()},
              {"source", s},
              {"sink", t},
              {"arcs", std::move(arcs)}};
}

namespace {

DirectedGraph graph_from_json(const json& j, NodeId* s, NodeId* t) {
  std::vector<Arc> arcs;
  for (const json& a : j.at("arcs")) {
    arcs.push_back(Arc{a.at("id").get<ArcId>(), a.at("tail").get<NodeId>(),
                       a.at("head").get<NodeId>()});
  }
  std::sort(arcs.begin(), arcs.end(),
            [](const Arc& x, const Arc& y) { return x.id < y.id; });
  *s = j.at("source").get<NodeId>();
  *t = j.at("sink").get<NodeId>();
  return DirectedGraph(j.at("nodes").get<int>(), std::move(arcs));
}

}  // namespace

json ambiguity_to_json(const AmbiguitySet& ambiguity) {
  json per_arc = json::array();
  for (const ArcAmbiguity& arc : ambiguity.per_arc) {
    json quantiles = json::array();
    for (int i = 1; i < arc.baseline_count(); ++i) {
      const QuantileConstraint& q = arc.baselines[static_cast<size_t>(i)];
      quantiles.push_back(
          {{"lo", q.lo}, {"hi", q.hi}, {"qlo", q.q_lo}, {"qhi", q.q_hi}});
    }
    per_arc.push_back({{"support", {arc.support_lo(), arc.support_hi()}},
                       {"quantiles", std::move(quantiles)}});
  }
  json rows = json::array();
  for (const ExpectationConstraint& row : ambiguity.expectation_rows) {
    json coeffs = json::object();
    for (const auto& [arc, value] : row.coefficients) {
      coeffs[std::to_string(arc)] = value;
    }
    rows.push_back({{"coeffs", std::move(coeffs)}, {"rhs", row.rhs}});
  }
  return json{{"per_arc", std::move(per_arc)},
              {"expectation_rows", std::move(rows)}};
}

namespace {

AmbiguitySet ambiguity_from_json(const json& j) {
  AmbiguitySet ambiguity;
  for (const json& a : j.at("per_arc")) {
    ArcAmbiguity arc = ArcAmbiguity::support_only(
        a.at("support").at(0).get<double>(), a.at("support").at(1).get<double>());
    for (const json& q : a.at("quantiles")) {
      arc.add_quantile(q.at("lo").get<double>(), q.at("hi").get<double>(),
                       q.at("qlo").get<double>(), q.at("qhi").get<double>());
    }
    ambiguity.per_arc.push_back(std::move(arc));
  }
  if (j.contains("expectation_rows")) {
    for (const json& r : j.at("expectation_rows")) {
      ExpectationConstraint row;
      for (const auto& [key, value] : r.at("coeffs").items()) {
        row.coefficients.emplace_back(std::stoi(key), value.get<double>());
      }
      std::sort(row.coefficients.begin(), row.coefficients.end());
      row.rhs = r.at("rhs").get<double>();
      ambiguity.expectation_rows.push_back(std::move(row));
    }
  }
  return ambiguity;
}

}  // namespace

json instance_to_json(const DrsppInstance& instance) {
  return json{
      {"graph", graph_to_json(instance.graph, instance.source, instance.sink)},
      {"ambiguity", ambiguity_to_json(instance.ambiguity)}};
}

DrsppInstance instance_from_json(const json& j) {
  NodeId s = 0, t = 0;
  DirectedGraph graph = graph_from_json(j.at("graph"), &s, &t);
  AmbiguitySet ambiguity = ambiguity_from_json(j.at("ambiguity"));
  if (static_cast<int>(ambiguity.per_arc.size()) != graph.arc_count()) {
    throw std::invalid_argument("ambiguity must cover every arc");
  }
  return DrsppInstance{std::move(graph), s, t, std::move(ambiguity)};
}

json nominal_to_json(const NominalModel& model) {
  json arcs = json::array();
  for (const NominalArc& a : model.arcs) {
    arcs.push_back({{"l", a.l},
                    {"u", a.u},
                    {"alpha", a.alpha},
                    {"beta", a.beta},
                    {"m_tilde", a.m_tilde},
                    {"sigma_tilde", a.sigma_tilde},
                    {"mean", a.mean}});
  }
  return json{{"arcs", std::move(arcs)}};
}

NominalModel nominal_from_json(const json& j) {
  NominalModel model;
  for (const json& a : j.at("arcs")) {
    model.arcs.push_back(NominalArc{
        a.at("l").get<double>(), a.at("u").get<double>(),
        a.at("alpha").get<double>(), a.at("beta").get<double>(),
        a.at("m_tilde").get<double>(), a.at("sigma_tilde").get<double>(),
        a.at("mean").get<double>()});
  }
  return model;
}

json solution_to_json(const DrsppSolution& solution) {
  return json{{"path", solution.path.arc_ids},
              {"objective", solution.objective},
              {"worst_case_costs", solution.worst_case_costs},
              {"stats",
               {{"nodes_explored", solution.stats.nodes_explored},
                {"lp_solves", solution.stats.lp_solves},
                {"wall_time_s", solution.stats.wall_time_s},
                {"bounds_time_s", solution.stats.bounds_time_s},
                {"search_time_s", solution.stats.search_time_s},
                {"best_bound", solution.stats.best_bound}}}};
}

json config_to_json(const ExperimentConfig& cfg) {
  return json{{"v", cfg.v},
              {"r", cfg.r},
              {"n0", cfg.n0},
              {"n1", cfg.n1},
              {"kappa", cfg.kappa},
              {"eta0", cfg.eta0},
              {"gamma_list", cfg.gamma_list},
              {"seed", cfg.seed},
              {"expectation_rows", cfg.expectation_rows}};
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg;
  if (j.contains("v")) cfg.v = j.at("v").get<int>();
  if (j.contains("r")) cfg.r = j.at("r").get<int>();
  if (j.contains("n0")) cfg.n0 = j.at("n0").get<int>();
  if (j.contains("n1")) cfg.n1 = j.at("n1").get<int>();
  if (j.contains("kappa")) cfg.kappa = j.at("kappa").get<double>();
  if (j.contains("eta0")) cfg.eta0 = j.at("eta0").get<double>();
  if (j.contains("gamma_list")) {
    cfg.gamma_list = j.at("gamma_list").get<std::vector<int>>();
  }
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("expectation_rows")) {
    cfg.expectation_rows = j.at("expectation_rows").get<bool>();
  }
  cfg.check();
  return cfg;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace drspp
