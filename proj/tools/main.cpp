#include "sqaoa/baselines.hpp"
#include "sqaoa/experiments.hpp"
#include "sqaoa/instance_io.hpp"
#include "sqaoa/model.hpp"
#include "sqaoa/parallel.hpp"
#include "sqaoa/qaoa.hpp"
#include "sqaoa/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace sqaoa;

namespace {

void resolve_threads(int threads_flag) {
  if (threads_flag > 0) {
    set_thread_count(threads_flag);
    return;
  }
  if (const char* env = std::getenv("SQAOA_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) set_thread_count(v);
  }
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

int cmd_info(const std::string& instance_path) {
  const ProblemInstance inst = load_instance(instance_path);
  const SearchSpaceStats stats = search_space_stats(inst);
  std::cout << "instance: " << (inst.name.empty() ? instance_path : inst.name) << "\n";
  std::cout << "n = " << inst.n << ", m = " << inst.m
            << ", qubits = " << inst.qubit_count() << "\n";
  std::cout << "demands k = [";
  for (int i = 0; i < inst.n; ++i) std::cout << (i ? "," : "") << inst.demands[i];
  std::cout << "]\n";
  std::cout << "edges (" << inst.edges.size() << "): ";
  for (const auto& [a, b] : inst.edges) std::cout << "(" << a << "," << b << ") ";
  std::cout << "\n";
  if (stats.exact) {
    std::cout << "full_dim = " << stats.full_dim << "\n";
    std::cout << "feasible_count = " << stats.feasible_count << "\n";
  } else {
    std::cout << "full_dim = 2^" << stats.log2_full_dim << "\n";
    std::cout << "feasible_count = 2^" << csv::fmt_fixed(stats.log2_feasible, 3) << "\n";
  }
  std::cout << "reduction_factor = " << csv::fmt_fixed(stats.reduction_factor, 4) << "\n";
  std::cout << "feasible_fraction = " << csv::fmt_fixed(stats.feasible_fraction, 10) << "\n";
  if (inst.capacities) {
    std::cout << "capacities L = [";
    for (int c = 0; c < inst.m; ++c) std::cout << (c ? "," : "") << (*inst.capacities)[c];
    std::cout << "]\n";
    std::cout << "dual_basis_size = " << enumerate_dual_basis(inst).size() << "\n";
  }
  return 0;
}

int cmd_solve(const std::string& instance_path, const std::string& method, int depth,
              uint64_t shots, uint64_t seed, double lambda, int budget,
              const std::string& mixer, const std::string& out_dir) {
  const ProblemInstance inst = load_instance(instance_path);
  fs::create_directories(out_dir);

  std::ostringstream report;
  report << "method=" << method << "\n";
  report << "seed=" << seed << "\n";

  auto finish = [&](const AllocationBits& witness) {
    const MetricsReport metrics = evaluate_metrics(inst, witness, lambda);
    report << "witness=" << witness.to_string_grouped(inst.m) << "\n";
    report << "conflicts=" << conflict_count(inst, witness) << "\n";
    report << "deviation=" << metrics.deviation << "\n";
    report << "node_feasible=" << (metrics.node_feasible ? "true" : "false") << "\n";
    if (inst.capacities)
      report << "channel_feasible=" << (metrics.channel_feasible ? "true" : "false") << "\n";
    report << "penalty_cost=" << csv::fmt_fixed(metrics.penalty_cost, 6) << "\n";
    write_text(fs::path(out_dir) / "solution.txt", report.str());
    std::cout << report.str();
    std::cout << "report written to " << out_dir << "\n";
  };

  if (method == "exact") {
    const ExactResult res = exact_optimum(inst);
    report << "optimal_count=" << res.optimal_count << "\n";
    finish(res.witness);
    return 0;
  }
  if (method == "greedy") {
    const GreedyResult res = greedy_multicolor(inst, seed);
    report << "unmet_demand=" << res.unmet_demand << "\n";
    finish(res.allocation);
    return 0;
  }

  AnsatzConfig config;
  config.depth = depth;
  config.shots = shots;
  config.seed = seed;
  config.lambda = lambda;
  config.topology = (mixer == "ring") ? MixerTopology::Ring : MixerTopology::Complete;
  if (method == "standard") config.kind = AnsatzKind::StandardPenalty;
  else if (method == "dicke-xy") config.kind = AnsatzKind::DickeXY;
  else if (method == "dual") config.kind = AnsatzKind::DualPlaquette;
  else throw std::invalid_argument("unknown method '" + method + "'");

  const OptimizeResult res = optimize(inst, config, budget);

  csv::Table trace;
  trace.comments = {"seed=" + std::to_string(seed),
                    "method=" + method + " depth=" + std::to_string(depth) +
                        " shots=" + std::to_string(shots) +
                        " budget=" + std::to_string(budget)};
  trace.columns = {"eval", "cost", "feasibility", "best_feasible_conflict"};
  for (int d = 0; d < 2 * depth; ++d)
    trace.columns.push_back((d < depth ? "gamma" : "beta") +
                            std::to_string(d % depth + 1));
  int eval_idx = 0;
  for (const auto& pt : res.trace.points) {
    std::vector<std::string> row{std::to_string(eval_idx++), csv::fmt_fixed(pt.cost, 6),
                                 csv::fmt_fixed(pt.feasibility, 6),
                                 pt.best_feasible ? std::to_string(*pt.best_feasible)
                                                  : "n/a"};
    for (double p : pt.params) row.push_back(csv::fmt_fixed(p, 6));
    trace.rows.push_back(std::move(row));
  }
  write_text(fs::path(out_dir) / "trace.csv", trace.to_string());

  report << "evaluations=" << res.trace.points.size() << "\n";
  report << "best_cost=" << csv::fmt_fixed(res.best_cost, 6) << "\n";
  report << "best_feasibility=" << csv::fmt_fixed(res.best_feasibility, 6) << "\n";
  report << "best_params=";
  for (size_t i = 0; i < res.best_params.size(); ++i)
    report << (i ? "," : "") << csv::fmt_fixed(res.best_params[i], 6);
  report << "\n";
  if (res.witness) {
    report << "best_feasible_conflict=" << *res.best_feasible_conflict << "\n";
    finish(*res.witness);
  } else {
    report << "best_feasible_conflict=n/a\n";
    write_text(fs::path(out_dir) / "solution.txt", report.str());
    std::cout << report.str();
    std::cout << "no feasible sample observed\n";
  }
  return 0;
}

void print_pass(bool ok, const std::string& what) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << what << "\n";
}

int cmd_experiment(const std::string& name, const std::string& out_flag, uint64_t seed,
                   uint64_t shots, int budget, int grid, int table_seeds,
                   int trajectories) {
  const std::string out_dir =
      out_flag.empty() ? ("sqaoa_runs/" + name + "-seed" + std::to_string(seed)) : out_flag;
  const CanonicalFamily family = calibrate_topology();
  std::cout << "calibrated chords: (" << family.chord_a.first << "," << family.chord_a.second
            << ") (" << family.chord_b.first << "," << family.chord_b.second << ")  optima "
            << family.optima[0] << "," << family.optima[1] << "," << family.optima[2]
            << (family.exact_match ? "" : "  [DEGRADED: l1 fallback]") << "\n";

  if (name == "reduction") {
    ReductionReport rep = run_reduction_table(family, seed);
    rep.write(out_dir);
    for (const auto& line : rep.summary()) std::cout << line << "\n";
    print_pass(rep.stats.full_dim == 16777216ULL, "full_dim = 16,777,216");
    print_pass(rep.stats.feasible_count == 6561ULL, "formula feasible_count = 6561");
    print_pass(rep.discrepancy, "reference 2,916 flagged as discrepant");
  } else if (name == "tables") {
    TablesOptions opt;
    opt.base_seed = seed;
    opt.shots = shots;
    opt.budget = budget;
    opt.dicke_seeds = table_seeds;
    opt.standard_seeds = std::min(3, table_seeds);
    TablesReport rep = run_comparison_tables(family, opt);
    rep.write(out_dir);
    for (const auto& line : rep.summary()) std::cout << line << "\n";
    bool dicke_feas = true, dicke_gaps = true;
    for (int N : {6, 7, 8}) {
      const auto& dx = rep.find(N, "dicke-xy");
      dicke_feas = dicke_feas && dx.feasibility == 1.0;
      const int allowed = (N == 8) ? 1 : 0;
      dicke_gaps = dicke_gaps && dx.gap && *dx.gap <= allowed;
    }
    print_pass(family.exact_match, "calibration reproduces exact optima (3,2,2)");
    print_pass(dicke_feas, "dicke-xy feasibility ratio = 1.000 for all N");
    print_pass(dicke_gaps, "dicke-xy gaps (0, 0, <=1)");
    print_pass(rep.find(8, "standard").feasibility <= 0.01,
               "standard feasibility <= 0.01 at N=8");
  } else if (name == "dual-heatmap") {
    HeatmapOptions opt;
    opt.seed = seed;
    opt.shots = shots;
    opt.steps = grid;
    HeatmapReport rep = run_dual_heatmap(family, opt);
    rep.write(out_dir);
    for (const auto& line : rep.summary()) std::cout << line << "\n";
    print_pass(rep.all_cells_dual_feasible, "node+channel feasibility = 1.0 in all cells");
    print_pass(rep.min_cell_mean < rep.greedy_conflicts,
               "min-cell mean conflict < greedy conflicts");
  } else if (name == "noise") {
    NoiseOptions opt;
    opt.seed = seed;
    opt.trajectories = trajectories;
    opt.lambda = 5.0;
    NoiseReport rep = run_noise_scan(family, opt);
    rep.write(out_dir);
    for (const auto& line : rep.summary()) std::cout << line << "\n";
    const auto& p0 = rep.find("dicke-xy", 0.0);
    const auto& pmax = rep.find("dicke-xy", rep.options.levels.back());
    print_pass(p0.mean_deviation == 0.0, "proposed deviation = 0 at p_err = 0");
    print_pass(pmax.mean_deviation < 1.0, "proposed deviation < 1.0 at p_err = 0.05");
    bool std_high = true;
    for (double lvl : rep.options.levels)
      std_high = std_high && rep.find("standard", lvl).mean_deviation >= 1.0;
    print_pass(std_high, "standard deviation >= 1.0 at all levels");
  } else {
    throw std::invalid_argument(
        "unknown experiment '" + name +
        "' (expected reduction | tables | dual-heatmap | noise)");
  }
  std::cout << "artifacts written to " << out_dir << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"subspace-confined QAOA toolkit for graph multi-coloring"};
  app.require_subcommand(1);

  std::string instance_path, method = "dicke-xy", mixer = "complete";
  std::string out_dir = "sqaoa_out", exp_out, exp_name;
  int depth = 1, budget = 80, grid = 9, threads = 0, table_seeds = 10;
  int trajectories = 2000;
  uint64_t shots = 1024, seed = 42;
  double lambda = 5.0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "base RNG seed (echoed in every output)");
    cmd->add_option("--threads,-t", threads, "worker cap (env SQAOA_THREADS as fallback)");
  };

  CLI::App* info = app.add_subcommand("info", "print search-space statistics");
  info->add_option("--instance", instance_path, "instance JSON file")->required();
  add_common(info);

  CLI::App* solve = app.add_subcommand("solve", "run one solver on an instance");
  solve->add_option("--instance", instance_path, "instance JSON file")->required();
  solve->add_option("--method", method, "exact | greedy | standard | dicke-xy | dual");
  solve->add_option("--depth", depth, "QAOA depth p");
  solve->add_option("--shots", shots, "shots per estimate");
  solve->add_option("--lambda", lambda, "penalty coefficient (standard)");
  solve->add_option("--budget", budget, "optimizer evaluation budget");
  solve->add_option("--mixer", mixer, "complete | ring (dicke-xy)");
  solve->add_option("--out", out_dir, "report directory");
  add_common(solve);

  CLI::App* exp = app.add_subcommand("experiment", "run a canned experiment");
  exp->add_option("name", exp_name, "reduction | tables | dual-heatmap | noise")->required();
  exp->add_option("--out", exp_out, "artifact directory (default sqaoa_runs/<name>-seed<seed>)");
  exp->add_option("--shots", shots, "shots per estimate");
  exp->add_option("--budget", budget, "optimizer evaluation budget");
  exp->add_option("--grid", grid, "grid steps per axis");
  exp->add_option("--table-seeds", table_seeds, "QAOA restarts for the tables experiment");
  exp->add_option("--trajectories", trajectories, "noise trajectories per point");
  add_common(exp);

  CLI11_PARSE(app, argc, argv);

  try {
    resolve_threads(threads);
    if (info->parsed()) return cmd_info(instance_path);
    if (solve->parsed())
      return cmd_solve(instance_path, method, depth, shots, seed, lambda, budget, mixer,
                       out_dir);
    if (exp->parsed()) {
      if (exp->get_option("--shots")->empty() && exp_name == "dual-heatmap") shots = 2048;
      return cmd_experiment(exp_name, exp_out, seed, shots, budget, grid, table_seeds,
                            trajectories);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
