#include "sqaoa/experiments.hpp"

#include "sqaoa/combinatorics.hpp"
#include "sqaoa/full_engine.hpp"
#include "sqaoa/parallel.hpp"
#include "sqaoa/rng.hpp"
#include "sqaoa/subspace_engine.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

namespace sqaoa {

namespace {

constexpr double kPi = 3.14159265358979323846;

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::vector<std::pair<int, int>> ring_edges(int N) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < N; ++i) edges.emplace_back(i, i + 1);
  if (N >= 3) edges.emplace_back(0, N - 1);
  return edges;
}

ProblemInstance truncated_instance(int N, std::pair<int, int> chord_a,
                                   std::pair<int, int> chord_b, bool with_capacities) {
  if (N < 2 || N > 8) throw std::invalid_argument("canonical family supports N in [2,8]");
  std::set<std::pair<int, int>> edges;
  for (auto e : ring_edges(N)) edges.insert(e);
  for (auto chord : {chord_a, chord_b}) {
    auto [a, b] = chord;
    if (a < 0) continue;
    if (a > b) std::swap(a, b);
    if (b < N) edges.insert({a, b});
  }
  std::vector<int> demands(CanonicalFamily::full_demands.begin(),
                           CanonicalFamily::full_demands.begin() + N);
  std::optional<std::vector<int>> caps;
  if (with_capacities) {
    if (N != 8)
      throw std::invalid_argument("capacities are defined for the 8-node instance only");
    caps = std::vector<int>(CanonicalFamily::capacities.begin(),
                            CanonicalFamily::capacities.end());
  }
  return make_instance(N, 3, {edges.begin(), edges.end()}, std::move(demands),
                       std::move(caps), "cbrs-" + std::to_string(N));
}

} // namespace

ProblemInstance CanonicalFamily::instance(int N, bool with_capacities) const {
  return truncated_instance(N, chord_a, chord_b, with_capacities);
}

CanonicalFamily calibrate_topology() {
  // Non-ring chords of the 8-cycle.
  std::vector<std::pair<int, int>> chords;
  for (int a = 0; a < 8; ++a)
    for (int b = a + 1; b < 8; ++b)
      if (b - a != 1 && !(a == 0 && b == 7)) chords.emplace_back(a, b);

  CanonicalFamily best;
  int best_l1 = std::numeric_limits<int>::max();

  for (size_t ai = 0; ai < chords.size(); ++ai) {
    for (size_t bi = ai + 1; bi < chords.size(); ++bi) {
      std::array<int, 3> optima{};
      int l1 = 0;
      for (int t = 0; t < 3; ++t) {
        const int N = 6 + t;
        optima[t] = static_cast<int>(
            exact_optimum_dfs(truncated_instance(N, chords[ai], chords[bi], false))
                .optimum_conflicts);
        l1 += std::abs(optima[t] - CanonicalFamily::target_optima[t]);
      }
      if (l1 < best_l1) {
        best_l1 = l1;
        best.chord_a = chords[ai];
        best.chord_b = chords[bi];
        best.optima = optima;
        best.exact_match = (l1 == 0);
        if (l1 == 0) break; // chord pairs scan in lex order; first hit wins
      }
    }
    if (best_l1 == 0) break;
  }

  for (int t = 0; t < 3; ++t) {
    const int N = 6 + t;
    best.ring_only_optima[t] = static_cast<int>(
        exact_optimum_dfs(truncated_instance(N, {-1, -1}, {-1, -1}, false))
            .optimum_conflicts);
  }
  return best;
}

ReductionReport run_reduction_table(const CanonicalFamily& family, uint64_t seed) {
  ReductionReport rep;
  const ProblemInstance inst = family.instance(8);
  rep.stats = search_space_stats(inst);
  rep.reference_reduction_factor =
      static_cast<double>(rep.stats.full_dim) / static_cast<double>(rep.reference_feasible_count);
  rep.reference_feasible_fraction =
      static_cast<double>(rep.reference_feasible_count) / static_cast<double>(rep.stats.full_dim);
  rep.discrepancy = rep.stats.feasible_count != rep.reference_feasible_count;

  csv::Table& t = rep.table;
  t.comments = {"seed=" + std::to_string(seed) + " (informational: no sampling here)",
                "search-space reduction for the 8-node instance (m=3; k=[2 1 2 1 1 2 1 1])",
                "feasible_count_formula follows the per-node binomial product; the "
                "reference value 2916 disagrees with that product and is reported "
                "alongside"};
  t.columns = {"quantity", "value", "note"};
  auto add = [&](const std::string& q, const std::string& v, const std::string& note) {
    t.rows.push_back({q, v, note});
  };
  add("full_dim", std::to_string(rep.stats.full_dim), "2^(n*m)");
  add("feasible_count_formula", std::to_string(rep.stats.feasible_count),
      "product of binomials C(m k_i)");
  add("feasible_count_reference", std::to_string(rep.reference_feasible_count),
      rep.discrepancy ? "DISCREPANCY: differs from the formula value" : "matches formula");
  add("reduction_factor_formula", csv::fmt_fixed(rep.stats.reduction_factor, 6), "");
  add("reduction_factor_reference", csv::fmt_fixed(rep.reference_reduction_factor, 6), "");
  add("feasible_fraction_formula", csv::fmt_fixed(rep.stats.feasible_fraction, 10), "");
  add("feasible_fraction_reference", csv::fmt_fixed(rep.reference_feasible_fraction, 10), "");
  return rep;
}

std::vector<std::string> ReductionReport::summary() const {
  std::vector<std::string> lines;
  lines.push_back("full_dim = " + std::to_string(stats.full_dim));
  lines.push_back("feasible_count (formula) = " + std::to_string(stats.feasible_count));
  lines.push_back("feasible_count (reference table) = " + std::to_string(reference_feasible_count) +
                  (discrepancy ? "  [flagged: contradicts the formula]" : ""));
  lines.push_back("reduction factor (formula) = " + csv::fmt_fixed(stats.reduction_factor, 2));
  lines.push_back("reduction factor (reference) = " +
                  csv::fmt_fixed(reference_reduction_factor, 2));
  return lines;
}

void ReductionReport::write(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  write_file(dir / "reduction.csv", table.to_string());
}

namespace {

csv::Table tables_to_csv(const TablesReport& rep) {
  csv::Table t;
  t.comments = {"seed=" + std::to_string(rep.options.base_seed),
                "budget=" + std::to_string(rep.options.budget) +
                    " shots=" + std::to_string(rep.options.shots) +
                    " dicke_seeds=" + std::to_string(rep.options.dicke_seeds) +
                    " standard_seeds=" + std::to_string(rep.options.standard_seeds),
                "chords=(" + std::to_string(rep.family.chord_a.first) + "," +
                    std::to_string(rep.family.chord_a.second) + "),(" +
                    std::to_string(rep.family.chord_b.first) + "," +
                    std::to_string(rep.family.chord_b.second) + ") calibration=" +
                    (rep.family.exact_match ? "exact" : "DEGRADED")};
  t.columns = {"N", "method", "best_conflict", "gap", "feasibility_ratio", "seed_best"};
  for (const auto& r : rep.rows) {
    t.rows.push_back({std::to_string(r.N), r.method,
                      r.best_conflict ? std::to_string(*r.best_conflict) : "n/a",
                      r.gap ? std::to_string(*r.gap) : "n/a",
                      csv::fmt_fixed(r.feasibility, 6), std::to_string(r.seed_best)});
  }
  return t;
}

} // namespace

TablesReport run_comparison_tables(const CanonicalFamily& family, const TablesOptions& opt) {
  TablesReport rep;
  rep.family = family;
  rep.options = opt;

  for (int N : {6, 7, 8}) {
    const ProblemInstance inst = family.instance(N);
    const ExactResult exact = exact_optimum(inst);
    // Reported values are recomputed from witnesses, never passed through.
    const uint32_t opt_conflicts = conflict_count(inst, exact.witness);

    rep.rows.push_back({N, "exact", opt_conflicts, 0, 1.0, opt.base_seed});

    const GreedyResult greedy = greedy_multicolor(inst, opt.base_seed);
    const uint32_t greedy_conflicts = conflict_count(inst, greedy.allocation);
    rep.rows.push_back({N, "greedy", greedy_conflicts,
                        static_cast<int>(greedy_conflicts) - static_cast<int>(opt_conflicts),
                        greedy.unmet_demand == 0 ? 1.0 : 0.0, opt.base_seed});

    for (AnsatzKind kind : {AnsatzKind::StandardPenalty, AnsatzKind::DickeXY}) {
      AnsatzConfig config;
      config.kind = kind;
      config.depth = 1;
      config.lambda = opt.lambda;
      config.shots = opt.shots;
      config.seed = opt.base_seed;
      QaoaRunner runner(inst, config);

      const int seeds = (kind == AnsatzKind::DickeXY) ? opt.dicke_seeds : opt.standard_seeds;
      std::optional<uint32_t> best;
      uint64_t best_seed = opt.base_seed;
      double best_feas = 0.0;
      bool have_any = false;
      for (int s = 0; s < seeds; ++s) {
        const uint64_t seed = opt.base_seed + static_cast<uint64_t>(s);
        OptimizeResult res = optimize_with(runner, opt.budget, seed);
        if (!have_any) { // lowest seed provides the fallback feasibility value
          best_feas = res.best_feasibility;
          best_seed = seed;
          have_any = true;
        }
        if (res.witness) {
          const uint32_t conf = conflict_count(inst, *res.witness);
          if (!best || conf < *best) {
            best = conf;
            best_seed = seed;
            best_feas = res.best_feasibility;
          }
        }
      }
      TablesReport::Row row;
      row.N = N;
      row.method = ansatz_name(kind);
      row.best_conflict = best;
      if (best) row.gap = static_cast<int>(*best) - static_cast<int>(opt_conflicts);
      row.feasibility = best_feas;
      row.seed_best = best_seed;
      rep.rows.push_back(row);
    }
  }
  rep.table = tables_to_csv(rep);
  return rep;
}

const TablesReport::Row& TablesReport::find(int N, const std::string& method) const {
  for (const auto& r : rows)
    if (r.N == N && r.method == method) return r;
  throw std::out_of_range("no tables row for N=" + std::to_string(N) + " " + method);
}

std::vector<std::string> TablesReport::summary() const {
  std::vector<std::string> lines;
  lines.push_back(std::string("calibration: ") +
                  (family.exact_match ? "exact (optima 3,2,2)" : "DEGRADED (l1 fallback)"));
  for (int N : {6, 7, 8}) {
    const auto& ex = find(N, "exact");
    const auto& gr = find(N, "greedy");
    const auto& st = find(N, "standard");
    const auto& dx = find(N, "dicke-xy");
    auto show = [](const Row& r) {
      return (r.best_conflict ? std::to_string(*r.best_conflict) : std::string("n/a")) +
             " (feas " + csv::fmt_fixed(r.feasibility, 3) + ")";
    };
    lines.push_back("N=" + std::to_string(N) + ": exact " + show(ex) + ", greedy " +
                    show(gr) + ", standard " + show(st) + ", dicke-xy " + show(dx));
  }
  return lines;
}

void TablesReport::write(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  write_file(dir / "tables.csv", table.to_string());
}

HeatmapReport run_dual_heatmap(const CanonicalFamily& family, const HeatmapOptions& opt) {
  HeatmapReport rep;
  rep.family = family;
  rep.options = opt;

  const ProblemInstance inst = family.instance(8, /*with_capacities=*/true);

  AnsatzConfig config;
  config.kind = AnsatzKind::DualPlaquette;
  config.depth = 1;
  config.shots = opt.shots;
  config.seed = opt.seed;
  rep.scan = grid_scan(inst, config, 0.0, kPi, 0.0, kPi, opt.steps);

  const AllocationBits x0 = greedy_dual_fill(inst);
  rep.x0_conflicts = conflict_count(inst, x0);
  const GreedyResult greedy = greedy_multicolor(inst, opt.seed);
  rep.greedy_conflicts = conflict_count(inst, greedy.allocation);
  const ExactResult exact = exact_optimum(inst);
  rep.exact_optimum_conflicts = conflict_count(inst, exact.witness);

  const DualBasis dual = enumerate_dual_basis(inst);
  rep.dual_basis_size = dual.size();
  const PlaquetteSpec plaquettes = make_plaquette_spec(inst, dual);
  rep.component_size = plaquette_component_size(plaquettes, dual.size(), dual.rank(x0));

  rep.all_cells_dual_feasible = true;
  rep.min_cell_mean = std::numeric_limits<double>::infinity();
  for (int gi = 0; gi < opt.steps; ++gi) {
    for (int bi = 0; bi < opt.steps; ++bi) {
      const GridCell& c = rep.scan.at(gi, bi);
      if (c.node_feas != 1.0 || c.channel_feas != 1.0) rep.all_cells_dual_feasible = false;
      if (c.mean_conflict < rep.min_cell_mean) {
        rep.min_cell_mean = c.mean_conflict;
        rep.min_gamma_index = gi;
        rep.min_beta_index = bi;
      }
    }
  }

  csv::Table& t = rep.table;
  t.comments = {"seed=" + std::to_string(opt.seed),
                "shots=" + std::to_string(opt.shots) + " steps=" + std::to_string(opt.steps),
                "X0=" + x0.to_string_grouped(inst.m) +
                    " X0_conflicts=" + std::to_string(rep.x0_conflicts),
                "dual_basis_size=" + std::to_string(rep.dual_basis_size) +
                    " plaquette_component_size=" + std::to_string(rep.component_size)};
  t.columns = {"gamma", "beta", "mean_conflict", "node_feas", "channel_feas"};
  std::vector<double> values;
  for (int gi = 0; gi < opt.steps; ++gi) {
    for (int bi = 0; bi < opt.steps; ++bi) {
      const GridCell& c = rep.scan.at(gi, bi);
      t.rows.push_back({csv::fmt_fixed(rep.scan.gammas[gi], 6),
                        csv::fmt_fixed(rep.scan.betas[bi], 6),
                        csv::fmt_fixed(c.mean_conflict, 6), csv::fmt_fixed(c.node_feas, 6),
                        csv::fmt_fixed(c.channel_feas, 6)});
      values.push_back(c.mean_conflict);
    }
  }
  rep.svg = svg::heatmap(rep.scan.gammas, rep.scan.betas, values,
                         "dual-constraint QAOA p=1: mean conflicts", "gamma", "beta");
  return rep;
}

std::vector<std::string> HeatmapReport::summary() const {
  std::vector<std::string> lines;
  lines.push_back(std::string("all cells node+channel feasible: ") +
                  (all_cells_dual_feasible ? "yes" : "NO"));
  lines.push_back("min cell mean conflict = " + csv::fmt_fixed(min_cell_mean, 4) +
                  " at gamma=" + csv::fmt_fixed(scan.gammas[min_gamma_index], 4) +
                  ", beta=" + csv::fmt_fixed(scan.betas[min_beta_index], 4));
  lines.push_back("greedy conflicts = " + std::to_string(greedy_conflicts) +
                  ", exact optimum = " + std::to_string(exact_optimum_conflicts) +
                  ", X0 conflicts = " + std::to_string(x0_conflicts));
  lines.push_back("dual basis size = " + std::to_string(dual_basis_size) +
                  ", plaquette component of X0 = " + std::to_string(component_size));
  return lines;
}

void HeatmapReport::write(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  write_file(dir / "heatmap.csv", table.to_string());
  write_file(dir / "heatmap.svg", svg);
}

namespace {

// Noiselessly optimize one ansatz and return its best parameters (best over
// opt_seeds restarts by mean objective).
std::vector<double> optimize_for_noise(const ProblemInstance& inst, AnsatzKind kind,
                                       const NoiseOptions& opt) {
  AnsatzConfig config;
  config.kind = kind;
  config.depth = 1;
  config.lambda = opt.lambda;
  config.shots = opt.opt_shots;
  config.seed = opt.seed;
  QaoaRunner runner(inst, config);
  std::vector<double> best_params;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int s = 0; s < opt.opt_seeds; ++s) {
    OptimizeResult res = optimize_with(runner, opt.opt_budget, opt.seed + s);
    if (res.best_cost < best_cost) {
      best_cost = res.best_cost;
      best_params = res.best_params;
    }
  }
  return best_params;
}

} // namespace

NoiseReport run_noise_scan(const CanonicalFamily& family, const NoiseOptions& opt) {
  NoiseReport rep;
  rep.family = family;
  rep.options = opt;

  const ProblemInstance inst = family.instance(opt.nodes);

  rep.standard_params = optimize_for_noise(inst, AnsatzKind::StandardPenalty, opt);
  rep.proposed_params = optimize_for_noise(inst, AnsatzKind::DickeXY, opt);

  const auto std_g = std::span<const double>(rep.standard_params).subspan(0, 1);
  const auto std_b = std::span<const double>(rep.standard_params).subspan(1, 1);
  const auto prop_g = std::span<const double>(rep.proposed_params).subspan(0, 1);
  const auto prop_b = std::span<const double>(rep.proposed_params).subspan(1, 1);
  const Circuit standard_circuit =
      standard_penalty_circuit(inst, std_g, std_b, opt.lambda);
  const Circuit proposed_circuit =
      dicke_xy_circuit(inst, prop_g, prop_b, MixerTopology::Complete);

  for (int a = 0; a < 2; ++a) {
    const bool proposed = (a == 1);
    const Circuit& circuit = proposed ? proposed_circuit : standard_circuit;
    for (size_t li = 0; li < opt.levels.size(); ++li) {
      const NoiseModel noise{opt.levels[li]};
      std::vector<double> dev(opt.trajectories);
      parallel_indexed(opt.trajectories, [&](uint64_t t) {
        const uint64_t seed = derive_seed(opt.seed, a + 1, li, t);
        const AllocationBits bits = run_noisy_trajectory(circuit, noise, seed);
        dev[t] = static_cast<double>(node_deviation(inst, bits));
      });
      double mean = 0.0;
      for (double d : dev) mean += d;
      mean /= static_cast<double>(opt.trajectories);
      double var = 0.0;
      for (double d : dev) var += (d - mean) * (d - mean);
      var /= std::max(1, opt.trajectories - 1);
      NoiseReport::Point p;
      p.p_err = opt.levels[li];
      p.ansatz = proposed ? "dicke-xy" : "standard";
      p.mean_deviation = mean;
      p.std_error = std::sqrt(var / opt.trajectories);
      p.trajectories = opt.trajectories;
      rep.points.push_back(p);
    }
  }

  csv::Table& t = rep.table;
  t.comments = {"seed=" + std::to_string(opt.seed),
                "nodes=" + std::to_string(opt.nodes) +
                    " trajectories=" + std::to_string(opt.trajectories),
                "standard_params=" + csv::fmt_fixed(rep.standard_params[0], 6) + "," +
                    csv::fmt_fixed(rep.standard_params[1], 6),
                "proposed_params=" + csv::fmt_fixed(rep.proposed_params[0], 6) + "," +
                    csv::fmt_fixed(rep.proposed_params[1], 6)};
  t.columns = {"p_err", "ansatz", "mean_deviation", "stderr", "trajectories"};
  for (const auto& p : rep.points)
    t.rows.push_back({csv::fmt_fixed(p.p_err, 2), p.ansatz,
                      csv::fmt_fixed(p.mean_deviation, 6), csv::fmt_fixed(p.std_error, 6),
                      std::to_string(p.trajectories)});

  svg::Series s_std{"standard", {}, {}};
  svg::Series s_prop{"dicke-xy", {}, {}};
  for (const auto& p : rep.points) {
    if (p.ansatz == "standard") {
      s_std.ys.push_back(p.mean_deviation);
      s_std.yerr.push_back(p.std_error);
    } else {
      s_prop.ys.push_back(p.mean_deviation);
      s_prop.yerr.push_back(p.std_error);
    }
  }
  rep.svg = svg::line_plot(opt.levels, {s_std, s_prop},
                           "Hamming-weight deviation vs depolarizing rate", "p_err",
                           "mean deviation");
  return rep;
}

const NoiseReport::Point& NoiseReport::find(const std::string& ansatz, double p_err) const {
  for (const auto& p : points)
    if (p.ansatz == ansatz && std::abs(p.p_err - p_err) < 1e-12) return p;
  throw std::out_of_range("no noise point for " + ansatz);
}

std::vector<std::string> NoiseReport::summary() const {
  std::vector<std::string> lines;
  for (const auto& p : points)
    lines.push_back(p.ansatz + " @ p_err=" + csv::fmt_fixed(p.p_err, 2) +
                    ": deviation = " + csv::fmt_fixed(p.mean_deviation, 4) + " +- " +
                    csv::fmt_fixed(p.std_error, 4));
  return lines;
}

void NoiseReport::write(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  write_file(dir / "noise.csv", table.to_string());
  write_file(dir / "noise.svg", svg);
}

} // namespace sqaoa
