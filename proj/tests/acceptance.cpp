// Acceptance suite: runs every toolkit-level criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion. Exit code is the
// number of failed criteria. Criteria 6 and the p_err=0.05 clause of 7 are
// known-unreachable from the published construction (see the analysis lines
// printed with them); they run faithfully and report honestly.

#include "sqaoa/baselines.hpp"
#include "sqaoa/combinatorics.hpp"
#include "sqaoa/experiments.hpp"
#include "sqaoa/full_engine.hpp"
#include "sqaoa/model.hpp"
#include "sqaoa/parallel.hpp"
#include "sqaoa/qaoa.hpp"
#include "sqaoa/rng.hpp"
#include "sqaoa/subspace_engine.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace sqaoa;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int id, bool ok, const std::string& what, double seconds,
            const std::vector<std::string>& notes = {}) {
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << id << ": " << what << "  ("
            << static_cast<int>(seconds) << "s)\n";
  for (const auto& n : notes) std::cout << "        " << n << "\n";
  std::cout.flush();
  if (!ok) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Independent Taylor expm for the criterion-2 cross-check.
std::vector<cd> taylor_xy_layer(const ProblemInstance& inst, double gamma, double beta,
                                const std::vector<cd>& start) {
  const auto pairs = mixer_pairs(inst.m, MixerTopology::Complete);
  std::vector<cd> v = start;
  for (uint64_t z = 0; z < v.size(); ++z) {
    if (v[z] == cd{0, 0}) continue;
    const AllocationBits x{static_cast<uint32_t>(inst.qubit_count()), z};
    v[z] *= std::polar(1.0, -gamma * static_cast<double>(conflict_count(inst, x)));
  }
  const double bound = 2.0 * inst.n * pairs.size();
  const int steps = 1 + static_cast<int>(std::abs(beta) * bound);
  const double dt = beta / steps;
  const size_t dim = v.size();
  std::vector<cd> term(dim), hv(dim);
  for (int s = 0; s < steps; ++s) {
    term = v;
    std::vector<cd> acc = v;
    for (int k = 1; k <= 60; ++k) {
      hv.assign(dim, cd{0, 0});
      for (uint64_t z = 0; z < dim; ++z) {
        if (term[z] == cd{0, 0}) continue;
        for (int node = 0; node < inst.n; ++node) {
          for (const auto& [a, b] : pairs) {
            const uint64_t ba = 1ULL << (node * inst.m + a);
            const uint64_t bb = 1ULL << (node * inst.m + b);
            if (((z & ba) != 0) != ((z & bb) != 0)) hv[z ^ ba ^ bb] += term[z];
          }
        }
      }
      double tn = 0.0;
      const double coef = dt / k;
      for (size_t r = 0; r < dim; ++r) {
        term[r] = cd(0, -1) * coef * hv[r];
        acc[r] += term[r];
        tn += std::norm(term[r]);
      }
      if (tn < 1e-34) break;
    }
    v = std::move(acc);
  }
  return v;
}

} // namespace

int main(int argc, char** argv) {
  std::string cli_path, out_dir = "acceptance_out";
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--cli") cli_path = argv[i + 1];
    else if (flag == "--out") out_dir = argv[i + 1];
  }
  fs::create_directories(out_dir);

  std::cout << "== acceptance suite ==\n";
  const CanonicalFamily family = calibrate_topology();
  std::cout << "calibrated chords (" << family.chord_a.first << "," << family.chord_a.second
            << ") (" << family.chord_b.first << "," << family.chord_b.second << "), optima "
            << family.optima[0] << "," << family.optima[1] << "," << family.optima[2]
            << (family.exact_match ? "" : " [DEGRADED]") << "\n";

  // --- 1: search-space arithmetic -----------------------------------------
  {
    const auto t0 = Clock::now();
    const ReductionReport rep = run_reduction_table(family, 42);
    rep.write(fs::path(out_dir) / "reduction");
    const double dt = seconds_since(t0);
    const bool ok = rep.stats.full_dim == 16777216ULL &&
                    rep.stats.feasible_count == 6561ULL && rep.discrepancy && dt < 1.0;
    report(1, ok,
           "reduction reports full_dim 16,777,216 and formula count 6561, flagging 2,916",
           dt);
  }

  // --- 2: subspace closure + 12-qubit embedding cross-check ---------------
  {
    const auto t0 = Clock::now();
    bool ok = true;
    std::vector<std::string> notes;

    const ProblemInstance canon = family.instance(8);
    const ProductBasis basis = product_basis(canon);
    for (uint64_t r = 0; r < basis.size() && ok; ++r)
      ok = node_deviation(canon, basis.unrank(r)) == 0; // support is feasible
    const XYMixerSpec mixer = make_xy_mixer_spec(basis, MixerTopology::Complete);
    Rng rng(20240);
    double worst_norm_err = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const double g[1] = {rng.uniform(0.0, 3.14159265)};
      const double b[1] = {rng.uniform(0.0, 3.14159265)};
      const SubspaceState st = run_dicke_xy_state(canon, basis, mixer, g, b);
      worst_norm_err = std::max(worst_norm_err, std::abs(st.norm_sq() - 1.0));
    }
    ok = ok && worst_norm_err < 1e-10;
    notes.push_back("outside-subspace probability is 0 by construction; worst norm error " +
                    std::to_string(worst_norm_err));

    const ProblemInstance sub4 = family.instance(4);
    const ProductBasis basis4 = product_basis(sub4);
    const XYMixerSpec mixer4 = make_xy_mixer_spec(basis4, MixerTopology::Complete);
    double worst = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
      const double g = rng.uniform(0.0, 3.14159265);
      const double b = rng.uniform(0.0, 3.14159265);
      const double gs[1] = {g}, bs[1] = {b};
      const SubspaceState st = run_dicke_xy_state(sub4, basis4, mixer4, gs, bs);
      const std::vector<cd> got = to_full_statevector(st);
      SubspaceState init = init_dicke_product(sub4, basis4);
      const std::vector<cd> want = taylor_xy_layer(sub4, g, b, to_full_statevector(init));
      for (size_t z = 0; z < got.size(); ++z)
        worst = std::max(worst, std::abs(got[z] - want[z]));
    }
    ok = ok && worst < 1e-9;
    notes.push_back("12-qubit embedded-state mismatch vs dense oracle: " +
                    std::to_string(worst));
    const double dt = seconds_since(t0);
    report(2, ok && dt < 60.0, "subspace closure exact; embedding matches dense oracle",
           dt, notes);
  }

  // --- 3 & 6: dual heatmap ------------------------------------------------
  {
    const auto t0 = Clock::now();
    HeatmapOptions opt;
    opt.seed = 42;
    opt.steps = 9;
    opt.shots = 2048;
    const HeatmapReport rep = run_dual_heatmap(family, opt);
    rep.write(fs::path(out_dir) / "dual-heatmap");
    const double dt = seconds_since(t0);
    report(3, rep.all_cells_dual_feasible && dt < 300.0,
           "dual mixer keeps node+channel feasibility at 1.0 in all 81 cells", dt);

    const bool q = rep.min_cell_mean < static_cast<double>(rep.greedy_conflicts);
    report(6, q, "dual heatmap min-cell mean conflict < greedy conflicts", dt,
           {"min cell mean " + csv::fmt_fixed(rep.min_cell_mean, 4) + " vs greedy " +
                std::to_string(rep.greedy_conflicts) + " (exact optimum " +
                std::to_string(rep.exact_optimum_conflicts) + ", X0 " +
                std::to_string(rep.x0_conflicts) + ")",
            "analysis: at p=1 from the basis state X0 the cost phase is a global phase,",
            "so every cell reduces to the beta-only mixer walk; its mean conflict floors",
            "near the dual-basis average (~5.5) and cannot reach the greedy value 4.",
            "Verified against the exact dense exponential of the dual mixer as well."});
  }

  // --- 4: oracle equivalence ----------------------------------------------
  {
    const auto t0 = Clock::now();
    bool ok = true;
    for (int N : {6, 7, 8}) {
      const ProblemInstance inst = family.instance(N);
      const ExactResult a = exact_optimum(inst);
      const ExactResult b = exact_optimum_dfs(inst);
      ok = ok && a.optimum_conflicts == b.optimum_conflicts &&
           a.optimal_count == b.optimal_count && a.witness == b.witness;
    }
    Rng rng(777);
    for (int trial = 0; trial < 50 && ok; ++trial) {
      const int n = 2 + static_cast<int>(rng.below(4));
      const int m = 1 + static_cast<int>(rng.below(4));
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (rng.uniform() < 0.5) edges.emplace_back(i, j);
      std::vector<int> k(n);
      for (int i = 0; i < n; ++i) k[i] = 1 + static_cast<int>(rng.below(m));
      const ProblemInstance inst = make_instance(n, m, std::move(edges), std::move(k));
      const ExactResult a = exact_optimum(inst);
      const ExactResult b = exact_optimum_dfs(inst);
      ok = ok && a.optimum_conflicts == b.optimum_conflicts &&
           a.optimal_count == b.optimal_count && a.witness == b.witness;
    }
    const double dt = seconds_since(t0);
    report(4, ok && dt < 120.0,
           "exhaustive scan == branch-and-bound on the family and 50 random instances", dt);
  }

  // --- 5: comparison tables -----------------------------------------------
  {
    const auto t0 = Clock::now();
    TablesOptions opt;
    opt.base_seed = 42;
    opt.dicke_seeds = 10;
    opt.standard_seeds = 3;
    opt.budget = 80;
    opt.shots = 1024;
    const TablesReport rep = run_comparison_tables(family, opt);
    rep.write(fs::path(out_dir) / "tables");
    const double dt = seconds_since(t0);

    std::vector<std::string> notes = rep.summary();
    bool ok;
    if (family.exact_match) {
      bool optima_ok = true, gaps_ok = true, feas_ok = true;
      for (int t = 0; t < 3; ++t) {
        const int N = 6 + t;
        optima_ok = optima_ok &&
                    *rep.find(N, "exact").best_conflict ==
                        static_cast<uint32_t>(CanonicalFamily::target_optima[t]);
        const auto& dx = rep.find(N, "dicke-xy");
        feas_ok = feas_ok && dx.feasibility == 1.0;
        gaps_ok = gaps_ok && dx.gap.has_value() && *dx.gap <= (N == 8 ? 1 : 0);
      }
      const bool std_ok = rep.find(8, "standard").feasibility <= 0.01;
      ok = optima_ok && gaps_ok && feas_ok && std_ok && dt < 1800.0;
    } else {
      // degraded form: ordering property with unit feasibility
      ok = true;
      notes.push_back("DEGRADED: calibration missed (3,2,2); checking ordering only");
      for (int N : {6, 7, 8}) {
        const auto& dx = rep.find(N, "dicke-xy");
        const auto& gr = rep.find(N, "greedy");
        const auto& ex = rep.find(N, "exact");
        ok = ok && dx.best_conflict && *ex.best_conflict <= *dx.best_conflict &&
             *dx.best_conflict <= *gr.best_conflict && dx.feasibility == 1.0;
      }
      ok = ok && dt < 1800.0;
    }
    report(5, ok,
           "tables: optima (3,2,2); dicke-xy gaps (0,0,<=1) at feasibility 1.0; standard "
           "feasibility <= 0.01 at N=8",
           dt, notes);
  }

  // --- 7: noise trend -------------------------------------------------------
  {
    const auto t0 = Clock::now();
    NoiseOptions opt;
    opt.seed = 42;
    opt.trajectories = 2000;
    const NoiseReport rep = run_noise_scan(family, opt);
    rep.write(fs::path(out_dir) / "noise");
    const double dt = seconds_since(t0);

    const auto& p0 = rep.find("dicke-xy", 0.0);
    const auto& pmax = rep.find("dicke-xy", 0.05);
    const bool zero_ok = p0.mean_deviation == 0.0;
    const bool below_one = pmax.mean_deviation < 1.0;
    bool nondecreasing = true;
    for (size_t i = 0; i + 1 < opt.levels.size(); ++i) {
      const auto& a = rep.find("dicke-xy", opt.levels[i]);
      const auto& b = rep.find("dicke-xy", opt.levels[i + 1]);
      nondecreasing = nondecreasing &&
                      b.mean_deviation >= a.mean_deviation -
                                              2.0 * (a.std_error + b.std_error);
    }
    bool std_high = true;
    for (double lvl : opt.levels)
      std_high = std_high && rep.find("standard", lvl).mean_deviation >= 1.0;

    const bool ok = zero_ok && below_one && nondecreasing && std_high && dt < 1800.0;
    report(7, ok,
           "noise: proposed deviation 0 at p=0, < 1.0 at p=0.05, nondecreasing; standard "
           ">= 1.0",
           dt,
           {"proposed: 0 -> " + csv::fmt_fixed(p0.mean_deviation, 4) + ", 0.05 -> " +
                csv::fmt_fixed(pmax.mean_deviation, 4) +
                (below_one ? "" : "  [the <1.0 clause fails]"),
            "clauses: zero-intercept " + std::string(zero_ok ? "ok" : "FAIL") +
                ", nondecreasing " + std::string(nondecreasing ? "ok" : "FAIL") +
                ", standard >= 1.0 " + std::string(std_high ? "ok" : "FAIL"),
            "analysis: the pinned gate census (46 two-qubit noise slots at N=5) gives",
            "deviation ~ 29*p_err, crossing 1.0 near p=0.035; the value <1.0 at p=0.05",
            "is unreachable without dropping a pinned circuit stage."});
  }

  // --- 8: statistical soundness --------------------------------------------
  {
    const auto t0 = Clock::now();
    const ProblemInstance inst = family.instance(4); // 12 qubits
    const ProductBasis basis = product_basis(inst);
    const XYMixerSpec mixer = make_xy_mixer_spec(basis, MixerTopology::Complete);
    const double g[1] = {0.8}, b[1] = {0.5};
    const SubspaceState st = run_dicke_xy_state(inst, basis, mixer, g, b);
    const double expect = expectation_conflicts(st, inst);
    double second = 0.0;
    for (uint64_t r = 0; r < st.size(); ++r) {
      const double c = conflict_count(inst, st.allocation_at(r));
      second += std::norm(st.amp[r]) * c * c;
    }
    const double sigma = std::sqrt((second - expect * expect) / 10000.0);
    const SampleHistogram h = sample_state(st, 10000, 4242);
    const double err = std::abs(mean_conflict(h, inst) - expect);
    const double dt = seconds_since(t0);
    report(8, err < 3.0 * sigma && dt < 60.0,
           "shot-mean within 3 sigma of the statevector expectation at 1e4 shots", dt,
           {"|shot mean - expectation| = " + csv::fmt_fixed(err, 6) + ", 3 sigma = " +
            csv::fmt_fixed(3.0 * sigma, 6)});
  }

  // --- 9: CLI determinism ----------------------------------------------------
  {
    const auto t0 = Clock::now();
    bool ok = false;
    std::vector<std::string> notes;
    if (cli_path.empty()) {
      notes.push_back("no --cli path provided; cannot exercise the binary");
    } else {
      const fs::path a = fs::path(out_dir) / "det-a";
      const fs::path b = fs::path(out_dir) / "det-b";
      const std::string flags =
          " experiment tables --seed 7 --budget 12 --shots 256 --table-seeds 2 --out ";
      const std::string log =
          " >> " + (fs::path(out_dir) / "det.log").string() + " 2>&1";
      const int rc1 = std::system((cli_path + flags + a.string() + log).c_str());
      const int rc2 = std::system((cli_path + flags + b.string() + log).c_str());
      if (rc1 == 0 && rc2 == 0) {
        const std::string ca = read_file(a / "tables.csv");
        const std::string cb = read_file(b / "tables.csv");
        ok = !ca.empty() && ca == cb;
        notes.push_back("tables.csv bytes " + std::to_string(ca.size()) + " vs " +
                        std::to_string(cb.size()) + (ok ? " (identical)" : " (DIFFER)"));
      } else {
        notes.push_back("CLI runs failed with codes " + std::to_string(rc1) + ", " +
                        std::to_string(rc2));
      }
    }
    report(9, ok, "two CLI runs of `experiment tables` with identical flags are "
                  "byte-identical", seconds_since(t0), notes);
  }

  std::cout << "== " << (9 - g_failures) << "/9 criteria passed ==\n";
  return g_failures;
}
