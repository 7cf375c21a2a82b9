#pragma once

#include "sqaoa/combinatorics.hpp"
#include "sqaoa/full_engine.hpp"
#include "sqaoa/model.hpp"
#include "sqaoa/subspace_engine.hpp"

#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace sqaoa {

enum class AnsatzKind { StandardPenalty, DickeXY, DualPlaquette };

const char* ansatz_name(AnsatzKind k);

struct AnsatzConfig {
  AnsatzKind kind = AnsatzKind::DickeXY;
  int depth = 1;
  double lambda = 5.0;                                // StandardPenalty only
  MixerTopology topology = MixerTopology::Complete;   // DickeXY only
  uint64_t shots = 1024;
  uint64_t seed = 42;
};

// Parameter vectors are laid out gammas-then-betas: (g_1..g_p, b_1..b_p).
std::vector<double> initial_parameters(int depth, uint64_t seed);

struct CostEstimate {
  double mean_cost = 0.0; // shot mean of the ansatz objective
  SampleHistogram histogram;
};

// Layer runners shared by the estimator, the tests and the experiments.
SubspaceState run_dicke_xy_state(const ProblemInstance& inst, const ProductBasis& basis,
                                 const XYMixerSpec& mixer, std::span<const double> gammas,
                                 std::span<const double> betas);
SubspaceState run_dual_state(const ProblemInstance& inst, const DualBasis& basis,
                             const PlaquetteSpec& plaquettes, const AllocationBits& x0,
                             std::span<const double> gammas, std::span<const double> betas);
FullState run_standard_state(const ProblemInstance& inst, const PenaltyTables& tables,
                             std::span<const double> gammas, std::span<const double> betas,
                             double lambda);

// Owns the per-ansatz caches (bases, mixer eigenblocks, penalty tables) so
// repeated evaluations and multi-seed restarts do not rebuild them.
class QaoaRunner {
public:
  QaoaRunner(const ProblemInstance& inst, const AnsatzConfig& config);

  // Objective: shot-mean penalty_cost for StandardPenalty, shot-mean
  // conflict_count for the constrained ansaetze.
  CostEstimate estimate(std::span<const double> params, uint64_t sample_seed) const;

  double feasibility(const SampleHistogram& h) const; // node (+channel for dual)

  const ProblemInstance& instance() const { return inst_; }
  const AnsatzConfig& config() const { return config_; }
  const ProductBasis& product() const;
  const DualBasis& dual() const;
  const AllocationBits& dual_start() const;

private:
  ProblemInstance inst_;
  AnsatzConfig config_;
  std::unique_ptr<ProductBasis> product_;
  std::unique_ptr<XYMixerSpec> mixer_;
  std::unique_ptr<DualBasis> dual_;
  std::unique_ptr<PlaquetteSpec> plaquettes_;
  std::unique_ptr<PenaltyTables> tables_;
  AllocationBits x0_;
};

CostEstimate estimate_cost(const ProblemInstance& inst, const AnsatzConfig& config,
                           std::span<const double> params);

struct TracePoint {
  std::vector<double> params;
  double cost = 0.0;
  double feasibility = 0.0;
  std::optional<uint32_t> best_feasible; // best feasible conflict so far
};

struct OptimizationTrace {
  std::vector<TracePoint> points;
};

struct OptimizeResult {
  std::vector<double> best_params;
  double best_cost = 0.0;
  double best_feasibility = 0.0; // feasibility at the best-cost evaluation
  OptimizationTrace trace;
  std::optional<uint32_t> best_feasible_conflict;
  std::optional<AllocationBits> witness; // lowest-conflict feasible sample seen
};

// Nelder-Mead (reflection 1, expansion 2, contraction 0.5, shrink 0.5,
// initial simplex edge 0.3 rad) over `budget` objective evaluations.
// budget must lie in [1, 10^4]. seed_override replaces config().seed for the
// initial draw and the shot streams, letting one runner serve many restarts.
OptimizeResult optimize(const ProblemInstance& inst, const AnsatzConfig& config, int budget);
OptimizeResult optimize_with(const QaoaRunner& runner, int budget,
                             std::optional<uint64_t> seed_override = std::nullopt);

struct GridCell {
  double mean_conflict = 0.0;
  double node_feas = 0.0;
  double channel_feas = 0.0; // -1 when the instance has no capacities
};

struct GridScan {
  int steps = 0;
  std::vector<double> gammas, betas; // inclusive endpoints
  std::vector<GridCell> cells;       // row-major, gamma outer

  const GridCell& at(int gi, int bi) const { return cells[gi * steps + bi]; }
};

GridScan grid_scan(const ProblemInstance& inst, const AnsatzConfig& config,
                   double gamma_lo, double gamma_hi, double beta_lo, double beta_hi,
                   int steps);

} // namespace sqaoa
