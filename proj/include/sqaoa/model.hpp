#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sqaoa {

// Graph multi-coloring instance: interference graph on n nodes, m channels,
// per-node channel demands k_i, optional per-channel capacities L_c.
struct ProblemInstance {
  int n = 0;
  int m = 0;
  std::vector<std::pair<int, int>> edges; // normalized: i < j, sorted, unique
  std::vector<int> demands;
  std::optional<std::vector<int>> capacities;
  std::string name;

  int qubit_count() const { return n * m; }
  int bit_index(int node, int channel) const { return node * m + channel; }
  int degree(int node) const;

  // Normalizes edges in place, then throws std::invalid_argument on any
  // violated invariant (demand range, self-loop, duplicate edge,
  // capacity range, demand/capacity balance).
  void normalize_and_validate();
};

ProblemInstance make_instance(int n, int m,
                              std::vector<std::pair<int, int>> edges,
                              std::vector<int> demands,
                              std::optional<std::vector<int>> capacities = std::nullopt,
                              std::string name = "");

// One channel-allocation bitstring in node-major one-hot layout:
// bit index(i,c) = i*m + c. Limited to 63 bits, which covers every
// instance any engine in this toolkit can simulate.
struct AllocationBits {
  uint32_t n_bits = 0;
  uint64_t word = 0;

  bool bit(int idx) const { return (word >> idx) & 1ULL; }
  void set(int idx, bool v) {
    if (v) word |= 1ULL << idx;
    else word &= ~(1ULL << idx);
  }

  // Index-order string: character j is bit j, so "110|010" with m=3 means
  // node 0 holds channels {0,1} and node 1 holds channel {1}.
  // '|' and spaces are ignored on parse.
  static AllocationBits parse(std::string_view s);
  std::string to_string() const;
  std::string to_string_grouped(int m) const;

  friend bool operator==(const AllocationBits&, const AllocationBits&) = default;
  friend auto operator<=>(const AllocationBits& a, const AllocationBits& b) {
    if (auto c = a.n_bits <=> b.n_bits; c != 0) return c;
    return a.word <=> b.word;
  }
};

// C(x) = sum over edges (i,j) and channels c of x_{i,c} * x_{j,c}.
uint32_t conflict_count(const ProblemInstance& inst, const AllocationBits& x);

// sum_i |weight(node i) - k_i|; zero iff all demand constraints hold.
uint32_t node_deviation(const ProblemInstance& inst, const AllocationBits& x);

std::vector<int> channel_loads(const ProblemInstance& inst, const AllocationBits& x);
bool node_feasible(const ProblemInstance& inst, const AllocationBits& x);
// Requires capacities; throws std::logic_error otherwise.
bool channel_feasible(const ProblemInstance& inst, const AllocationBits& x);

// C(x) + lambda * sum_i (weight_i - k_i)^2
double penalty_cost(const ProblemInstance& inst, const AllocationBits& x, double lambda);

struct MetricsReport {
  uint32_t conflicts = 0;
  bool node_feasible = false;
  bool channel_feasible = false; // meaningful only with capacities
  uint32_t deviation = 0;
  double penalty_cost = 0.0;
};

MetricsReport evaluate_metrics(const ProblemInstance& inst, const AllocationBits& x,
                               double lambda);

// full_dim = 2^(nm), feasible_count = prod_i C(m, k_i). Exact in 64-bit
// integers while nm <= 63; beyond that only the log-domain fields are valid.
struct SearchSpaceStats {
  bool exact = true;
  uint64_t full_dim = 0;
  uint64_t feasible_count = 0;
  double log2_full_dim = 0.0;
  double log2_feasible = 0.0;
  double reduction_factor = 0.0;
  double feasible_fraction = 0.0;
};

SearchSpaceStats search_space_stats(const ProblemInstance& inst);

// Shot histogram over measured allocations, plus the derived scalar metrics
// the experiments report.
struct SampleHistogram {
  std::map<AllocationBits, uint64_t> counts;
  uint64_t shots = 0;
};

double feasibility_ratio(const SampleHistogram& h, const ProblemInstance& inst);
double dual_feasibility_ratio(const SampleHistogram& h, const ProblemInstance& inst);
double channel_feasibility_ratio(const SampleHistogram& h, const ProblemInstance& inst);
double mean_conflict(const SampleHistogram& h, const ProblemInstance& inst);
double mean_deviation(const SampleHistogram& h, const ProblemInstance& inst);
double mean_penalty(const SampleHistogram& h, const ProblemInstance& inst, double lambda);
// min conflict among node-feasible samples; empty if none observed.
std::optional<uint32_t> best_feasible_conflict(const SampleHistogram& h,
                                               const ProblemInstance& inst);

} // namespace sqaoa
