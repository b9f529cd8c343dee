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

#ifndef DRSPP_IO_HPP
#define DRSPP_IO_HPP

#include <string>

#include <json.hpp>

#include "drspp/datagen.hpp"
#include "drspp/solver.hpp"

namespace drspp {

// Graph schema: {"nodes": n, "source": s, "sink": t,
//                "arcs": [{"id", "tail", "head"}, ...]}.
nlohmann::json graph_to_json(const DirectedGraph& graph, NodeId s, NodeId t);

// Ambiguity schema: {"per_arc": [{"support": [l, u],
//                                 "quantiles": [{"lo","hi","qlo","qhi"}]}],
//                    "expectation_rows": [{"coeffs": {"<arc>": v}, "rhs"}]}.
nlohmann::json ambiguity_to_json(const AmbiguitySet& ambiguity);

nlohmann::json instance_to_json(const DrsppInstance& instance);
DrsppInstance instance_from_json(const nlohmann::json& j);

nlohmann::json nominal_to_json(const NominalModel& model);
NominalModel nominal_from_json(const nlohmann::json& j);

nlohmann::json solution_to_json(const DrsppSolution& solution);

nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace drspp

#endif  // DRSPP_IO_HPP
