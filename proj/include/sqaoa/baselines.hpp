#pragma once

#include "sqaoa/model.hpp"

#include <cstdint>

namespace sqaoa {

struct ExactResult {
  uint32_t optimum_conflicts = 0;
  AllocationBits witness; // lowest-rank optimal allocation
  uint64_t optimal_count = 0;
};

// Exhaustive scan over the node-feasible product basis. Equivalent to the
// 0-1 ILP at these sizes. Guarded at 10^7 feasible states.
ExactResult exact_optimum(const ProblemInstance& inst);

// Independent branch-and-bound over per-node channel subsets with partial
// conflict pruning; same result contract as exact_optimum.
ExactResult exact_optimum_dfs(const ProblemInstance& inst);

struct GreedyResult {
  AllocationBits allocation;
  uint32_t conflicts = 0;
  uint32_t unmet_demand = 0;
};

// DSATUR-flavored multi-coloring heuristic. Node choice: largest residual
// demand, tie-break higher degree then lower index. Channel choice: among
// channels unused by assigned neighbors, least used across the neighbors'
// neighbors then lowest index; if every channel conflicts, accept the
// least-conflicting one. With randomize_ties, ties are broken by the seeded
// stream instead.
GreedyResult greedy_multicolor(const ProblemInstance& inst, uint64_t seed = 0,
                               bool randomize_ties = false);

} // namespace sqaoa
