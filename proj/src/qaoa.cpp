#include "sqaoa/qaoa.hpp"

#include "sqaoa/parallel.hpp"
#include "sqaoa/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sqaoa {

const char* ansatz_name(AnsatzKind k) {
  switch (k) {
    case AnsatzKind::StandardPenalty: return "standard";
    case AnsatzKind::DickeXY: return "dicke-xy";
    case AnsatzKind::DualPlaquette: return "dual";
  }
  return "?";
}

std::vector<double> initial_parameters(int depth, uint64_t seed) {
  Rng rng(derive_seed(seed, 0x1217));
  std::vector<double> params(2 * depth);
  for (double& p : params) p = rng.uniform(0.0, std::acos(-1.0));
  return params;
}

SubspaceState run_dicke_xy_state(const ProblemInstance& inst, const ProductBasis& basis,
                                 const XYMixerSpec& mixer, std::span<const double> gammas,
                                 std::span<const double> betas) {
  SubspaceState st = init_dicke_product(inst, basis);
  for (size_t l = 0; l < gammas.size(); ++l) {
    apply_cost_phase(st, inst, gammas[l]);
    apply_xy_mixer(st, mixer, betas[l]);
  }
  return st;
}

SubspaceState run_dual_state(const ProblemInstance& inst, const DualBasis& basis,
                             const PlaquetteSpec& plaquettes, const AllocationBits& x0,
                             std::span<const double> gammas, std::span<const double> betas) {
  SubspaceState st = init_basis_state(basis, x0);
  for (size_t l = 0; l < gammas.size(); ++l) {
    apply_cost_phase(st, inst, gammas[l]);
    apply_plaquette_layer(st, plaquettes, betas[l]);
  }
  return st;
}

FullState run_standard_state(const ProblemInstance& inst, const PenaltyTables& tables,
                             std::span<const double> gammas, std::span<const double> betas,
                             double lambda) {
  FullState st = init_plus(inst.qubit_count());
  for (size_t l = 0; l < gammas.size(); ++l) {
    apply_penalty_phase(st, tables, gammas[l], lambda);
    apply_x_mixer(st, betas[l]);
  }
  return st;
}

QaoaRunner::QaoaRunner(const ProblemInstance& inst, const AnsatzConfig& config)
    : inst_(inst), config_(config) {
  if (config.depth < 1) throw std::invalid_argument("ansatz depth must be >= 1");
  if (config.shots < 1) throw std::invalid_argument("shot count must be >= 1");
  switch (config.kind) {
    case AnsatzKind::DickeXY:
      product_ = std::make_unique<ProductBasis>(product_basis(inst));
      mixer_ = std::make_unique<XYMixerSpec>(make_xy_mixer_spec(*product_, config.topology));
      break;
    case AnsatzKind::DualPlaquette:
      dual_ = std::make_unique<DualBasis>(enumerate_dual_basis(inst));
      plaquettes_ = std::make_unique<PlaquetteSpec>(make_plaquette_spec(inst, *dual_));
      x0_ = greedy_dual_fill(inst);
      break;
    case AnsatzKind::StandardPenalty:
      tables_ = std::make_unique<PenaltyTables>(build_penalty_tables(inst));
      break;
  }
}

const ProductBasis& QaoaRunner::product() const {
  if (!product_) throw std::logic_error("runner has no product basis");
  return *product_;
}

const DualBasis& QaoaRunner::dual() const {
  if (!dual_) throw std::logic_error("runner has no dual basis");
  return *dual_;
}

const AllocationBits& QaoaRunner::dual_start() const {
  if (!dual_) throw std::logic_error("runner has no dual basis");
  return x0_;
}

CostEstimate QaoaRunner::estimate(std::span<const double> params,
                                  uint64_t sample_seed) const {
  if (params.size() != static_cast<size_t>(2 * config_.depth))
    throw std::invalid_argument("parameter vector must have length 2*depth");
  const auto gammas = params.subspan(0, config_.depth);
  const auto betas = params.subspan(config_.depth, config_.depth);

  CostEstimate out;
  switch (config_.kind) {
    case AnsatzKind::DickeXY: {
      SubspaceState st = run_dicke_xy_state(inst_, *product_, *mixer_, gammas, betas);
      out.histogram = sample_state(st, config_.shots, sample_seed);
      out.mean_cost = mean_conflict(out.histogram, inst_);
      break;
    }
    case AnsatzKind::DualPlaquette: {
      SubspaceState st = run_dual_state(inst_, *dual_, *plaquettes_, x0_, gammas, betas);
      out.histogram = sample_state(st, config_.shots, sample_seed);
      out.mean_cost = mean_conflict(out.histogram, inst_);
      break;
    }
    case AnsatzKind::StandardPenalty: {
      FullState st = run_standard_state(inst_, *tables_, gammas, betas, config_.lambda);
      out.histogram = sample_state(st, config_.shots, sample_seed);
      out.mean_cost = mean_penalty(out.histogram, inst_, config_.lambda);
      break;
    }
  }
  return out;
}

double QaoaRunner::feasibility(const SampleHistogram& h) const {
  return config_.kind == AnsatzKind::DualPlaquette ? dual_feasibility_ratio(h, inst_)
                                                   : feasibility_ratio(h, inst_);
}

CostEstimate estimate_cost(const ProblemInstance& inst, const AnsatzConfig& config,
                           std::span<const double> params) {
  QaoaRunner runner(inst, config);
  return runner.estimate(params, derive_seed(config.seed, 0xE5717A7E));
}

OptimizeResult optimize(const ProblemInstance& inst, const AnsatzConfig& config,
                        int budget) {
  QaoaRunner runner(inst, config);
  return optimize_with(runner, budget);
}

OptimizeResult optimize_with(const QaoaRunner& runner, int budget,
                             std::optional<uint64_t> seed_override) {
  if (budget < 1 || budget > 10000)
    throw std::invalid_argument("optimizer budget must lie in [1, 10^4]");
  const AnsatzConfig& config = runner.config();
  const uint64_t run_seed = seed_override.value_or(config.seed);
  const int dim = 2 * config.depth;

  OptimizeResult result;
  int evals = 0;

  auto evaluate = [&](const std::vector<double>& x) -> double {
    CostEstimate est = runner.estimate(x, derive_seed(run_seed, 0xE5A1, evals));
    TracePoint pt;
    pt.params = x;
    pt.cost = est.mean_cost;
    pt.feasibility = runner.feasibility(est.histogram);
    // Track the lowest-conflict feasible sample across the whole run.
    for (const auto& [bits, cnt] : est.histogram.counts) {
      (void)cnt;
      if (!node_feasible(runner.instance(), bits)) continue;
      if (config.kind == AnsatzKind::DualPlaquette &&
          !channel_feasible(runner.instance(), bits))
        continue;
      const uint32_t conf = conflict_count(runner.instance(), bits);
      if (!result.best_feasible_conflict || conf < *result.best_feasible_conflict) {
        result.best_feasible_conflict = conf;
        result.witness = bits;
      }
    }
    pt.best_feasible = result.best_feasible_conflict;
    const double feas = pt.feasibility;
    result.trace.points.push_back(std::move(pt));
    if (result.trace.points.size() == 1 || est.mean_cost < result.best_cost) {
      result.best_cost = est.mean_cost;
      result.best_params = x;
      result.best_feasibility = feas;
    }
    ++evals;
    return est.mean_cost;
  };

  const std::vector<double> start = initial_parameters(config.depth, run_seed);

  // Nelder-Mead simplex: reflection 1, expansion 2, contraction 0.5,
  // shrink 0.5, initial edge 0.3 rad.
  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5, edge = 0.3;

  std::vector<std::vector<double>> xs;
  std::vector<double> fs;
  xs.push_back(start);
  fs.push_back(evaluate(start));
  for (int d = 0; d < dim && evals < budget; ++d) {
    std::vector<double> v = start;
    v[d] += edge;
    xs.push_back(v);
    fs.push_back(evaluate(v));
  }

  auto order = [&] {
    std::vector<size_t> idx(xs.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return fs[a] < fs[b]; });
    std::vector<std::vector<double>> xs2(xs.size());
    std::vector<double> fs2(fs.size());
    for (size_t i = 0; i < idx.size(); ++i) {
      xs2[i] = xs[idx[i]];
      fs2[i] = fs[idx[i]];
    }
    xs.swap(xs2);
    fs.swap(fs2);
  };

  auto can_eval = [&] { return evals < budget; };

  while (can_eval() && xs.size() == static_cast<size_t>(dim) + 1) {
    order();
    const size_t worst = xs.size() - 1;
    std::vector<double> centroid(dim, 0.0);
    for (size_t v = 0; v < worst; ++v)
      for (int d = 0; d < dim; ++d) centroid[d] += xs[v][d];
    for (int d = 0; d < dim; ++d) centroid[d] /= static_cast<double>(worst);

    auto blend = [&](double coeff) {
      std::vector<double> p(dim);
      for (int d = 0; d < dim; ++d) p[d] = centroid[d] + coeff * (centroid[d] - xs[worst][d]);
      return p;
    };

    const std::vector<double> xr = blend(alpha);
    const double fr = evaluate(xr);

    if (fr < fs[0]) {
      if (!can_eval()) {
        xs[worst] = xr;
        fs[worst] = fr;
        break;
      }
      const std::vector<double> xe = blend(alpha * gamma);
      const double fe = evaluate(xe);
      if (fe < fr) {
        xs[worst] = xe;
        fs[worst] = fe;
      } else {
        xs[worst] = xr;
        fs[worst] = fr;
      }
    } else if (fr < fs[worst - 1]) {
      xs[worst] = xr;
      fs[worst] = fr;
    } else {
      if (!can_eval()) break;
      // Contraction (outside if the reflected point improved on the worst).
      const std::vector<double> xc = blend(fr < fs[worst] ? alpha * rho : -rho);
      const double fc = evaluate(xc);
      if (fc < std::min(fr, fs[worst])) {
        xs[worst] = xc;
        fs[worst] = fc;
      } else {
        for (size_t v = 1; v < xs.size(); ++v) {
          if (!can_eval()) break;
          for (int d = 0; d < dim; ++d) xs[v][d] = xs[0][d] + sigma * (xs[v][d] - xs[0][d]);
          fs[v] = evaluate(xs[v]);
        }
      }
    }
  }

  if (result.best_params.empty()) result.best_params = start;
  return result;
}

GridScan grid_scan(const ProblemInstance& inst, const AnsatzConfig& config,
                   double gamma_lo, double gamma_hi, double beta_lo, double beta_hi,
                   int steps) {
  if (steps < 2) throw std::invalid_argument("grid scan needs steps >= 2");
  if (config.depth != 1)
    throw std::invalid_argument("grid scan sweeps a single (gamma, beta) layer");
  QaoaRunner runner(inst, config);

  GridScan scan;
  scan.steps = steps;
  scan.gammas.resize(steps);
  scan.betas.resize(steps);
  for (int s = 0; s < steps; ++s) {
    const double t = static_cast<double>(s) / (steps - 1);
    scan.gammas[s] = gamma_lo + t * (gamma_hi - gamma_lo);
    scan.betas[s] = beta_lo + t * (beta_hi - beta_lo);
  }
  scan.cells.resize(static_cast<size_t>(steps) * steps);

  const bool has_caps = inst.capacities.has_value();
  parallel_indexed(scan.cells.size(), [&](uint64_t cell) {
    const int gi = static_cast<int>(cell) / steps;
    const int bi = static_cast<int>(cell) % steps;
    const double params[2] = {scan.gammas[gi], scan.betas[bi]};
    CostEstimate est = runner.estimate(params, derive_seed(config.seed, gi, bi));
    GridCell& out = scan.cells[cell];
    out.mean_conflict = mean_conflict(est.histogram, inst);
    out.node_feas = feasibility_ratio(est.histogram, inst);
    out.channel_feas = has_caps ? channel_feasibility_ratio(est.histogram, inst) : -1.0;
  });
  return scan;
}

} // namespace sqaoa
