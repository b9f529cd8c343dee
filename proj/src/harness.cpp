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

#include "drspp/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <thread>

#include "drspp/baselines.hpp"
#include "drspp/moment.hpp"
#include "drspp/solver.hpp"

namespace drspp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format_double(double v, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

// Everything the methods of one seed share.
struct InstanceData {
  DirectedGraph graph;
  NominalModel model;
  std::vector<std::vector<double>> samples;
  AmbiguitySet ambiguity;
  NodeId s = 0;
  NodeId t = 0;
};

InstanceData make_instance(const ExperimentConfig& cfg) {
  InstanceData data{gen_layered(cfg.v, cfg.r, cfg.seed), {}, {}, {}, 0, 0};
  data.t = data.graph.node_count() - 1;
  data.model = gen_nominal(data.graph, cfg.seed);
  data.samples = sample_costs(data.model, cfg.n0, cfg.seed);
  data.ambiguity =
      build_ambiguity(data.graph, data.model, data.samples, cfg, 0, data.t);
  return data;
}

std::vector<CensoredSample> censor_arc_samples(const ArcAmbiguity& arc,
                                               const std::vector<double>& xs) {
  std::vector<CensoredSample> flags;
  flags.reserve(xs.size());
  for (double x : xs) {
    CensoredSample f(static_cast<size_t>(arc.baseline_count()), 0);
    for (int i = 0; i < arc.baseline_count(); ++i) {
      const QuantileConstraint& q = arc.baselines[static_cast<size_t>(i)];
      f[static_cast<size_t>(i)] = (q.lo <= x && x <= q.hi) ? 1 : 0;
    }
    flags.push_back(std::move(f));
  }
  return flags;
}

std::vector<ResultRow> run_one_seed(const ExperimentConfig& cfg) {
  std::vector<ResultRow> rows;
  const auto failed = [&](const std::string& method, const std::string& why) {
    ResultRow row;
    row.method = method;
    row.seed = cfg.seed;
    row.rho = std::nan("");
    row.objective = std::nan("");
    row.status = "error:" + why;
    rows.push_back(row);
  };

  std::optional<InstanceData> built;
  try {
    built = make_instance(cfg);
  } catch (const std::exception& e) {
    failed("generate", e.what());
    return rows;
  }
  const InstanceData& data = *built;
  const DrsppInstance instance{data.graph, data.s, data.t, data.ambiguity};

  const auto score = [&](const Path& path) {
    return relative_expected_loss(path, data.model, data.graph, data.s,
                                  data.t);
  };

  // F1: the exact mixed-integer route on the full ambiguity set.
  try {
    const DrsppSolution sol = solve_mip(instance);
    rows.push_back(ResultRow{"F1", cfg.seed, score(sol.path), sol.objective,
                             sol.stats.wall_time_s, sol.stats.bounds_time_s,
                             sol.stats.search_time_s, "ok"});
  } catch (const std::exception& e) {
    failed("F1", e.what());
  }

  // F1p: drop the expectation rows and use the polynomial route.
  try {
    DrsppInstance no_rows = instance;
    no_rows.ambiguity.expectation_rows.clear();
    const DrsppSolution sol = solve_no_expectation(no_rows);
    rows.push_back(ResultRow{"F1p", cfg.seed, score(sol.path), sol.objective,
                             sol.stats.wall_time_s, sol.stats.bounds_time_s,
                             0.0, "ok"});
  } catch (const std::exception& e) {
    failed("F1p", e.what());
  }

  // DR0 sees the same interval information: membership flags of the same
  // samples over the same baselines.
  try {
    const auto start = Clock::now();
    const int na = data.graph.arc_count();
    std::vector<std::vector<CensoredSample>> censored(
        static_cast<size_t>(na));
    std::vector<ElementaryPartition> partitions;
    std::vector<double> lo(static_cast<size_t>(na)),
        hi(static_cast<size_t>(na));
    partitions.reserve(static_cast<size_t>(na));
    for (int a = 0; a < na; ++a) {
      const ArcAmbiguity& arc = data.ambiguity.per_arc[static_cast<size_t>(a)];
      censored[static_cast<size_t>(a)] =
          censor_arc_samples(arc, data.samples[static_cast<size_t>(a)]);
      partitions.push_back(elementary_partition(arc));
      lo[static_cast<size_t>(a)] = arc.support_lo();
      hi[static_cast<size_t>(a)] = arc.support_hi();
    }
    const MomentEstimates est = censored_moment_estimates(
        censored, data.ambiguity.per_arc, partitions, cfg.eta0, na);
    const BaselineResult sol =
        dr0_solve(data.graph, data.s, data.t, lo, hi, est);
    rows.push_back(ResultRow{"DR0", cfg.seed, score(sol.path), sol.value,
                             seconds_since(start), 0.0, 0.0, "ok"});
  } catch (const std::exception& e) {
    failed("DR0", e.what());
  }

  for (int gamma : cfg.gamma_list) {
    const std::string tag = "R0:" + std::to_string(gamma);
    try {
      const auto start = Clock::now();
      const int na = data.graph.arc_count();
      std::vector<double> lo(static_cast<size_t>(na)),
          hi(static_cast<size_t>(na));
      for (int a = 0; a < na; ++a) {
        lo[static_cast<size_t>(a)] = data.model.arcs[static_cast<size_t>(a)].l;
        hi[static_cast<size_t>(a)] = data.model.arcs[static_cast<size_t>(a)].u;
      }
      const BaselineResult sol = budgeted_robust_sp(
          data.graph, lo, hi, std::min(gamma, na), data.s, data.t);
      rows.push_back(ResultRow{tag, cfg.seed, score(sol.path), sol.value,
                               seconds_since(start), 0.0, 0.0, "ok"});
    } catch (const std::exception& e) {
      failed(tag, e.what());
    }
  }
  return rows;
}

std::vector<MethodSummary> summarize(const std::vector<ResultRow>& rows) {
  std::map<std::string, std::vector<double>> by_method;
  std::vector<std::string> order;
  for (const ResultRow& row : rows) {
    if (row.status != "ok") continue;
    if (by_method.find(row.method) == by_method.end()) {
      order.push_back(row.method);
    }
    by_method[row.method].push_back(row.rho);
  }
  std::vector<MethodSummary> summary;
  for (const std::string& method : order) {
    const std::vector<double>& xs = by_method[method];
    MethodSummary s;
    s.method = method;
    s.count = static_cast<int>(xs.size());
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean_rho = sum / s.count;
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean_rho) * (x - s.mean_rho);
    s.stddev_rho = s.count > 1 ? std::sqrt(ss / (s.count - 1)) : 0.0;
    summary.push_back(s);
  }
  return summary;
}

// Runs `work(i)` for i in [0, count) on `workers` threads; results land in
// index order so the output is independent of scheduling.
template <typename Fn>
void parallel_for(int count, int workers, Fn&& work) {
  if (workers <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> threads;
  const int nthreads = std::min(workers, count);
  threads.reserve(static_cast<size_t>(nthreads));
  for (int w = 0; w < nthreads; ++w) {
    threads.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        work(i);
      }
    });
  }
  for (std::thread& t : threads) t.join();
}

}  // namespace

ComparisonOutput run_comparison(const ExperimentConfig& cfg, int instances,
                                int workers) {
  cfg.check();
  if (instances < 1) throw std::invalid_argument("need instances >= 1");

  std::vector<std::vector<ResultRow>> per_seed(
      static_cast<size_t>(instances));
  parallel_for(instances, workers, [&](int i) {
    ExperimentConfig local = cfg;
    local.seed = cfg.seed + static_cast<std::uint64_t>(i);
    per_seed[static_cast<size_t>(i)] = run_one_seed(local);
  });

  ComparisonOutput out;
  for (const std::vector<ResultRow>& rows : per_seed) {
    for (const ResultRow& row : rows) {
      if (row.status != "ok") out.any_error = true;
      out.rows.push_back(row);
    }
  }
  out.summary = summarize(out.rows);
  return out;
}

std::vector<SweepPoint> run_sweep(const ExperimentConfig& cfg,
                                  SweepParameter parameter,
                                  const std::vector<double>& values,
                                  int instances, int workers) {
  std::vector<SweepPoint> points;
  for (double value : values) {
    ExperimentConfig local = cfg;
    if (parameter == SweepParameter::kKappa) {
      local.kappa = value;
    } else {
      local.n1 = static_cast<int>(value);
    }
    points.push_back(
        SweepPoint{value, run_comparison(local, instances, workers)});
  }
  return points;
}

std::vector<TimingRow> run_timing(const std::vector<int>& v_list, int r,
                                  const ExperimentConfig& cfg, int instances,
                                  int workers) {
  struct Job {
    int v;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (int v : v_list) {
    for (int i = 0; i < instances; ++i) {
      jobs.push_back(Job{v, cfg.seed + static_cast<std::uint64_t>(i)});
    }
  }
  std::vector<TimingRow> rows(jobs.size());
  parallel_for(static_cast<int>(jobs.size()), workers, [&](int k) {
    ExperimentConfig local = cfg;
    local.v = jobs[static_cast<size_t>(k)].v;
    local.r = r;
    local.seed = jobs[static_cast<size_t>(k)].seed;
    TimingRow& row = rows[static_cast<size_t>(k)];
    row.v = local.v;
    row.seed = local.seed;
    try {
      const InstanceData data = make_instance(local);
      row.arcs = data.graph.arc_count();
      const DrsppInstance instance{data.graph, data.s, data.t,
                                   data.ambiguity};
      const DrsppSolution sol = solve_mip(instance);
      row.bounds_time_s = sol.stats.bounds_time_s;
      row.mip_time_s = sol.stats.search_time_s;
      row.objective = sol.objective;
      row.nodes = sol.stats.nodes_explored;
      row.lp_solves = sol.stats.lp_solves;
    } catch (const std::exception& e) {
      row.status = std::string("error:") + e.what();
    }
  });
  return rows;
}

Example1Table example1_table() {
  const Example1Fixture fx = example1();
  const CostBounds bounds = bounds_all(fx.instance.ambiguity);
  std::vector<double> naive(fx.instance.ambiguity.per_arc.size());
  for (size_t a = 0; a < naive.size(); ++a) {
    naive[a] = fx.instance.ambiguity.per_arc[a].support_hi();
  }

  Example1Table table;
  for (const Path& p : enumerate_paths(fx.instance.graph, fx.instance.source,
                                       fx.instance.sink, 100)) {
    Example1Table::Row row;
    row.path = p.arc_ids;
    row.naive_robust = p.cost(naive);
    row.dist_robust = p.cost(bounds.c_max);
    row.nominal = p.cost(fx.nominal_means);
    table.rows.push_back(std::move(row));
  }
  const DrsppSolution dr = solve_no_expectation(fx.instance);
  table.dr_optimal_path = dr.path.arc_ids;
  table.dr_optimal_value = dr.objective;
  const ShortestPathResult naive_sp =
      shortest_path(fx.instance.graph, naive, fx.instance.source,
                    fx.instance.sink);
  table.naive_optimal_path = naive_sp.path.arc_ids;
  table.naive_optimal_value = naive_sp.cost;
  return table;
}

void write_comparison_csv(const std::vector<ResultRow>& rows,
                          std::ostream& out) {
  out << "method,seed,rho,objective,wall_time_s,bounds_time_s,mip_time_s,"
         "status\n";
  for (const ResultRow& row : rows) {
    out << row.method << ',' << row.seed << ','
        << format_double(row.rho, "%.12g") << ','
        << format_double(row.objective, "%.12g") << ','
        << format_double(row.wall_time_s, "%.6f") << ','
        << format_double(row.bounds_time_s, "%.6f") << ','
        << format_double(row.mip_time_s, "%.6f") << ',' << row.status << '\n';
  }
}

void write_timing_csv(const std::vector<TimingRow>& rows, std::ostream& out) {
  out << "v,seed,arcs,bounds_time_s,mip_time_s,objective,nodes,lp_solves,"
         "status\n";
  for (const TimingRow& row : rows) {
    out << row.v << ',' << row.seed << ',' << row.arcs << ','
        << format_double(row.bounds_time_s, "%.6f") << ','
        << format_double(row.mip_time_s, "%.6f") << ','
        << format_double(row.objective, "%.12g") << ',' << row.nodes << ','
        << row.lp_solves << ',' << row.status << '\n';
  }
}

void write_summary(const std::vector<MethodSummary>& summary,
                   std::ostream& out) {
  out << "method,count,mean_rho,stddev_rho\n";
  for (const MethodSummary& s : summary) {
    out << s.method << ',' << s.count << ','
        << format_double(s.mean_rho, "%.6g") << ','
        << format_double(s.stddev_rho, "%.6g") << '\n';
  }
}

}  // namespace drspp
