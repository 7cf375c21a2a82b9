#include "sqaoa/baselines.hpp"

#include "sqaoa/combinatorics.hpp"
#include "sqaoa/parallel.hpp"
#include "sqaoa/rng.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>
#include <vector>

namespace sqaoa {

namespace {

uint32_t word_conflicts(const ProblemInstance& inst, uint64_t word) {
  const uint64_t field = (1ULL << inst.m) - 1;
  uint32_t conflicts = 0;
  for (const auto& [i, j] : inst.edges)
    conflicts += std::popcount((word >> (i * inst.m)) & (word >> (j * inst.m)) & field);
  return conflicts;
}

void check_scan_size(const ProblemInstance& inst) {
  const SearchSpaceStats stats = search_space_stats(inst);
  if (!stats.exact || stats.feasible_count > 10'000'000ULL)
    throw std::domain_error(
        "exact search limited to 10^7 feasible states; this instance has ~2^" +
        std::to_string(stats.log2_feasible) +
        " — use the greedy or QAOA methods instead");
}

} // namespace

ExactResult exact_optimum(const ProblemInstance& inst) {
  check_scan_size(inst);
  const ProductBasis basis = product_basis(inst);
  const uint64_t total = basis.size();

  struct Partial {
    uint32_t best = std::numeric_limits<uint32_t>::max();
    uint64_t count = 0;
    uint64_t witness_rank = 0;
  };
  const uint64_t chunk = 1ULL << 14;
  const uint64_t n_chunks = (total + chunk - 1) / chunk;
  std::vector<Partial> partials(n_chunks);

  parallel_chunks(0, total, chunk, [&](uint64_t b, uint64_t e) {
    Partial p;
    for (uint64_t r = b; r < e; ++r) {
      const uint32_t c = word_conflicts(inst, basis.word_at(r));
      if (c < p.best) {
        p.best = c;
        p.count = 1;
        p.witness_rank = r;
      } else if (c == p.best) {
        ++p.count;
      }
    }
    partials[b / chunk] = p;
  });

  Partial merged;
  for (const Partial& p : partials) {
    if (p.best < merged.best) {
      merged = p;
    } else if (p.best == merged.best) {
      merged.count += p.count; // chunks ascend, so the witness stays lowest-rank
    }
  }

  ExactResult res;
  res.optimum_conflicts = merged.best;
  res.optimal_count = merged.count;
  res.witness = basis.unrank(merged.witness_rank);
  return res;
}

ExactResult exact_optimum_dfs(const ProblemInstance& inst) {
  check_scan_size(inst);

  std::vector<JohnsonBasis> rows;
  rows.reserve(inst.n);
  for (int i = 0; i < inst.n; ++i)
    rows.push_back(enumerate_johnson(inst.m, inst.demands[i]));

  // Edges grouped by their higher endpoint so partial conflicts accumulate
  // exactly when a node is placed.
  std::vector<std::vector<int>> back_neighbors(inst.n);
  for (const auto& [a, b] : inst.edges) back_neighbors[b].push_back(a);

  std::vector<uint32_t> chosen(inst.n, 0);

  // Pass 1: branch and bound for the optimum value.
  uint32_t best = std::numeric_limits<uint32_t>::max();
  auto dfs_min = [&](auto&& self, int node, uint32_t partial) -> void {
    if (partial >= best && best != std::numeric_limits<uint32_t>::max()) return;
    if (node == inst.n) {
      best = std::min(best, partial);
      return;
    }
    for (uint32_t mask : rows[node].masks) {
      uint32_t add = 0;
      for (int nb : back_neighbors[node]) add += std::popcount(mask & chosen[nb]);
      if (partial + add >= best) continue;
      chosen[node] = mask;
      self(self, node + 1, partial + add);
    }
    chosen[node] = 0;
  };
  dfs_min(dfs_min, 0, 0);

  // Pass 2: count optima and recover the lowest-rank witness.
  ExactResult res;
  res.optimum_conflicts = best;
  bool have_witness = false;
  AllocationBits witness{static_cast<uint32_t>(inst.qubit_count()), 0};
  uint64_t word = 0;
  auto dfs_count = [&](auto&& self, int node, uint32_t partial) -> void {
    if (partial > best) return;
    if (node == inst.n) {
      if (partial == best) {
        ++res.optimal_count;
        if (!have_witness) {
          witness.word = word;
          have_witness = true;
        }
      }
      return;
    }
    for (uint32_t mask : rows[node].masks) {
      uint32_t add = 0;
      for (int nb : back_neighbors[node]) add += std::popcount(mask & chosen[nb]);
      if (partial + add > best) continue;
      chosen[node] = mask;
      word |= static_cast<uint64_t>(mask) << (node * inst.m);
      self(self, node + 1, partial + add);
      word &= ~(((1ULL << inst.m) - 1) << (node * inst.m));
    }
    chosen[node] = 0;
  };
  dfs_count(dfs_count, 0, 0);
  res.witness = witness;
  return res;
}

GreedyResult greedy_multicolor(const ProblemInstance& inst, uint64_t seed,
                               bool randomize_ties) {
  Rng rng(derive_seed(seed, 0x62EED7));
  std::vector<int> residual = inst.demands;
  std::vector<uint32_t> assigned(inst.n, 0);
  std::vector<std::vector<int>> adj(inst.n);
  for (const auto& [a, b] : inst.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }

  auto pick_tied = [&](const std::vector<int>& tied) -> int {
    if (randomize_ties && tied.size() > 1)
      return tied[rng.below(tied.size())];
    return tied.front();
  };

  long long remaining = 0;
  for (int r : residual) remaining += r;

  while (remaining > 0) {
    // Node: max residual demand, tie higher degree, tie lower index.
    std::vector<int> tied_nodes;
    int best_res = -1, best_deg = -1;
    for (int i = 0; i < inst.n; ++i) {
      if (residual[i] <= 0) continue;
      const int deg = static_cast<int>(adj[i].size());
      if (residual[i] > best_res || (residual[i] == best_res && deg > best_deg)) {
        best_res = residual[i];
        best_deg = deg;
        tied_nodes.clear();
        tied_nodes.push_back(i);
      } else if (residual[i] == best_res && deg == best_deg) {
        tied_nodes.push_back(i);
      }
    }
    const int node = pick_tied(tied_nodes);

    // Channel: conflict-free against assigned neighbors if possible,
    // scored by use among the neighbors' neighbors; otherwise the
    // least-conflicting channel (conflict accepted).
    std::vector<char> two_hop(inst.n, 0);
    for (int u : adj[node])
      for (int j : adj[u])
        if (j != node) two_hop[j] = 1;

    std::vector<int> tied_free, tied_any;
    int best_free_score = std::numeric_limits<int>::max();
    int best_conf_score = std::numeric_limits<int>::max();
    for (int c = 0; c < inst.m; ++c) {
      if (assigned[node] & (1u << c)) continue;
      int conflicts_here = 0;
      for (int u : adj[node])
        if (assigned[u] & (1u << c)) ++conflicts_here;
      if (conflicts_here == 0) {
        int use = 0;
        for (int j = 0; j < inst.n; ++j)
          if (two_hop[j] && (assigned[j] & (1u << c))) ++use;
        if (use < best_free_score) {
          best_free_score = use;
          tied_free.clear();
          tied_free.push_back(c);
        } else if (use == best_free_score) {
          tied_free.push_back(c);
        }
      } else if (conflicts_here < best_conf_score) {
        best_conf_score = conflicts_here;
        tied_any.clear();
        tied_any.push_back(c);
      } else if (conflicts_here == best_conf_score) {
        tied_any.push_back(c);
      }
    }
    const int channel = !tied_free.empty() ? pick_tied(tied_free) : pick_tied(tied_any);

    assigned[node] |= 1u << channel;
    --residual[node];
    --remaining;
  }

  GreedyResult res;
  res.allocation.n_bits = static_cast<uint32_t>(inst.qubit_count());
  for (int i = 0; i < inst.n; ++i)
    res.allocation.word |= static_cast<uint64_t>(assigned[i]) << (i * inst.m);
  res.conflicts = conflict_count(inst, res.allocation);
  res.unmet_demand = node_deviation(inst, res.allocation);
  return res;
}

} // namespace sqaoa
