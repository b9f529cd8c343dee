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

#ifndef DRSPP_HARNESS_HPP
#define DRSPP_HARNESS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "drspp/datagen.hpp"

namespace drspp {

// One method evaluated on one generated instance.  Method tags: "F1"
// (expectation rows + MIP), "F1p" (quantile-only polynomial route), "DR0"
// (marginal-moment baseline), "R0:<gamma>" (budgeted robust).
struct ResultRow {
  std::string method;
  std::uint64_t seed = 0;
  double rho = 0.0;        // relative expected loss under the nominal model
  double objective = 0.0;  // the method's own optimal value
  double wall_time_s = 0.0;
  double bounds_time_s = 0.0;
  double mip_time_s = 0.0;
  std::string status = "ok";
};

struct MethodSummary {
  std::string method;
  int count = 0;
  double mean_rho = 0.0;
  double stddev_rho = 0.0;
};

struct ComparisonOutput {
  std::vector<ResultRow> rows;
  std::vector<MethodSummary> summary;
  bool any_error = false;
};

// Full protocol on `instances` seeds cfg.seed .. cfg.seed + instances - 1:
// generate graph/model/samples/ambiguity, then score F1, F1p, DR0 and every
// R0 budget by relative expected loss.  Failures become rows tagged
// "error:...;" the run continues.
ComparisonOutput run_comparison(const ExperimentConfig& cfg, int instances,
                                int workers = 1);

enum class SweepParameter { kKappa, kN1 };

struct SweepPoint {
  double value = 0.0;
  ComparisonOutput output;
};

// run_comparison at each parameter value (kappa or n1), all else fixed.
std::vector<SweepPoint> run_sweep(const ExperimentConfig& cfg,
                                  SweepParameter parameter,
                                  const std::vector<double>& values,
                                  int instances, int workers = 1);

struct TimingRow {
  int v = 0;
  std::uint64_t seed = 0;
  int arcs = 0;
  double bounds_time_s = 0.0;  // stage (i)
  double mip_time_s = 0.0;     // stage (ii)
  double objective = 0.0;
  long nodes = 0;
  long lp_solves = 0;
  std::string status = "ok";
};

// Stage-resolved running times of the exact solver as the layer count grows.
std::vector<TimingRow> run_timing(const std::vector<int>& v_list, int r,
                                  const ExperimentConfig& cfg, int instances,
                                  int workers = 1);

// The worked example's path table: per path the naive-robust, the
// distributionally robust and the nominal expected cost.
struct Example1Table {
  struct Row {
    std::vector<ArcId> path;
    double naive_robust = 0.0;
    double dist_robust = 0.0;
    double nominal = 0.0;
  };
  std::vector<Row> rows;
  std::vector<ArcId> dr_optimal_path;
  double dr_optimal_value = 0.0;
  std::vector<ArcId> naive_optimal_path;
  double naive_optimal_value = 0.0;
};

Example1Table example1_table();

// Fixed-schema CSV with C-locale number formatting.  Columns:
// method,seed,rho,objective,wall_time_s,bounds_time_s,mip_time_s,status
void write_comparison_csv(const std::vector<ResultRow>& rows,
                          std::ostream& out);
// Columns: v,seed,arcs,bounds_time_s,mip_time_s,objective,nodes,lp_solves,status
void write_timing_csv(const std::vector<TimingRow>& rows, std::ostream& out);
void write_summary(const std::vector<MethodSummary>& summary,
                   std::ostream& out);

}  // namespace drspp

#endif  // DRSPP_HARNESS_HPP
