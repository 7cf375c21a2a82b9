#include "sqaoa/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sqaoa {

namespace {

void require_length(const ProblemInstance& inst, const AllocationBits& x) {
  if (static_cast<int>(x.n_bits) != inst.qubit_count())
    throw std::invalid_argument("allocation length " + std::to_string(x.n_bits) +
                                " does not match instance n*m = " +
                                std::to_string(inst.qubit_count()));
}

uint64_t node_field(const ProblemInstance& inst, const AllocationBits& x, int node) {
  const uint64_t mask = (inst.m >= 64) ? ~0ULL : ((1ULL << inst.m) - 1);
  return (x.word >> (node * inst.m)) & mask;
}

double log2_binomial(int m, int k) {
  return (std::lgamma(m + 1.0) - std::lgamma(k + 1.0) - std::lgamma(m - k + 1.0)) /
         std::log(2.0);
}

} // namespace

int ProblemInstance::degree(int node) const {
  int d = 0;
  for (const auto& [a, b] : edges)
    if (a == node || b == node) ++d;
  return d;
}

void ProblemInstance::normalize_and_validate() {
  if (n < 1) throw std::invalid_argument("instance needs n >= 1 nodes");
  if (m < 1) throw std::invalid_argument("instance needs m >= 1 channels");
  if (static_cast<int>(demands.size()) != n)
    throw std::invalid_argument("demands length " + std::to_string(demands.size()) +
                                " != n = " + std::to_string(n));
  for (int i = 0; i < n; ++i) {
    if (demands[i] < 0 || demands[i] > m)
      throw std::invalid_argument("demand k[" + std::to_string(i) + "] = " +
                                  std::to_string(demands[i]) + " outside [0, m]");
  }
  for (auto& [a, b] : edges) {
    if (a == b)
      throw std::invalid_argument("self-loop on node " + std::to_string(a));
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw std::invalid_argument("edge (" + std::to_string(a) + "," + std::to_string(b) +
                                  ") references a node outside [0, n)");
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("duplicate edge in edge list");
  if (capacities) {
    if (static_cast<int>(capacities->size()) != m)
      throw std::invalid_argument("capacities length " + std::to_string(capacities->size()) +
                                  " != m = " + std::to_string(m));
    long long cap_sum = 0;
    for (int c = 0; c < m; ++c) {
      int L = (*capacities)[c];
      if (L < 0 || L > n)
        throw std::invalid_argument("capacity L[" + std::to_string(c) + "] = " +
                                    std::to_string(L) + " outside [0, n]");
      cap_sum += L;
    }
    const long long demand_sum = std::accumulate(demands.begin(), demands.end(), 0LL);
    if (cap_sum != demand_sum)
      throw std::invalid_argument("sum of demands (" + std::to_string(demand_sum) +
                                  ") != sum of capacities (" + std::to_string(cap_sum) +
                                  "); dual feasibility requires balance");
  }
}

ProblemInstance make_instance(int n, int m, std::vector<std::pair<int, int>> edges,
                              std::vector<int> demands,
                              std::optional<std::vector<int>> capacities,
                              std::string name) {
  ProblemInstance inst;
  inst.n = n;
  inst.m = m;
  inst.edges = std::move(edges);
  inst.demands = std::move(demands);
  inst.capacities = std::move(capacities);
  inst.name = std::move(name);
  inst.normalize_and_validate();
  return inst;
}

AllocationBits AllocationBits::parse(std::string_view s) {
  AllocationBits out;
  for (char ch : s) {
    if (ch == '|' || ch == ' ' || ch == '_') continue;
    if (ch != '0' && ch != '1')
      throw std::invalid_argument("allocation string has non-binary character");
    if (out.n_bits >= 63)
      throw std::invalid_argument("allocation string longer than 63 bits");
    if (ch == '1') out.word |= 1ULL << out.n_bits;
    ++out.n_bits;
  }
  return out;
}

std::string AllocationBits::to_string() const {
  std::string s(n_bits, '0');
  for (uint32_t i = 0; i < n_bits; ++i)
    if (bit(i)) s[i] = '1';
  return s;
}

std::string AllocationBits::to_string_grouped(int m) const {
  std::string flat = to_string(), out;
  for (size_t i = 0; i < flat.size(); ++i) {
    if (i > 0 && m > 0 && i % static_cast<size_t>(m) == 0) out.push_back('|');
    out.push_back(flat[i]);
  }
  return out;
}

uint32_t conflict_count(const ProblemInstance& inst, const AllocationBits& x) {
  require_length(inst, x);
  uint32_t conflicts = 0;
  for (const auto& [i, j] : inst.edges)
    conflicts += std::popcount(node_field(inst, x, i) & node_field(inst, x, j));
  return conflicts;
}

uint32_t node_deviation(const ProblemInstance& inst, const AllocationBits& x) {
  require_length(inst, x);
  uint32_t dev = 0;
  for (int i = 0; i < inst.n; ++i) {
    const int w = std::popcount(node_field(inst, x, i));
    dev += static_cast<uint32_t>(std::abs(w - inst.demands[i]));
  }
  return dev;
}

std::vector<int> channel_loads(const ProblemInstance& inst, const AllocationBits& x) {
  require_length(inst, x);
  std::vector<int> loads(inst.m, 0);
  for (int i = 0; i < inst.n; ++i)
    for (int c = 0; c < inst.m; ++c)
      loads[c] += x.bit(inst.bit_index(i, c)) ? 1 : 0;
  return loads;
}

bool node_feasible(const ProblemInstance& inst, const AllocationBits& x) {
  return node_deviation(inst, x) == 0;
}

bool channel_feasible(const ProblemInstance& inst, const AllocationBits& x) {
  if (!inst.capacities)
    throw std::logic_error("channel_feasible requires an instance with capacities");
  return channel_loads(inst, x) == *inst.capacities;
}

double penalty_cost(const ProblemInstance& inst, const AllocationBits& x, double lambda) {
  if (lambda < 0) throw std::invalid_argument("penalty coefficient must be >= 0");
  require_length(inst, x);
  double pen = 0.0;
  for (int i = 0; i < inst.n; ++i) {
    const double d = std::popcount(node_field(inst, x, i)) - inst.demands[i];
    pen += d * d;
  }
  return conflict_count(inst, x) + lambda * pen;
}

MetricsReport evaluate_metrics(const ProblemInstance& inst, const AllocationBits& x,
                               double lambda) {
  MetricsReport r;
  r.conflicts = conflict_count(inst, x);
  r.deviation = node_deviation(inst, x);
  r.node_feasible = (r.deviation == 0);
  r.channel_feasible = inst.capacities ? channel_feasible(inst, x) : false;
  r.penalty_cost = penalty_cost(inst, x, lambda);
  return r;
}

SearchSpaceStats search_space_stats(const ProblemInstance& inst) {
  SearchSpaceStats s;
  const int nm = inst.qubit_count();
  s.log2_full_dim = nm;
  s.log2_feasible = 0.0;
  for (int i = 0; i < inst.n; ++i)
    s.log2_feasible += log2_binomial(inst.m, inst.demands[i]);

  if (nm <= 63) {
    s.exact = true;
    s.full_dim = 1ULL << nm;
    // feasible_count = prod C(m, k_i) <= 2^(nm), so it cannot overflow here.
    uint64_t count = 1;
    for (int i = 0; i < inst.n; ++i) {
      uint64_t binom = 1;
      const int k = std::min(inst.demands[i], inst.m - inst.demands[i]);
      for (int t = 0; t < k; ++t)
        binom = binom * static_cast<uint64_t>(inst.m - t) / static_cast<uint64_t>(t + 1);
      count *= binom;
    }
    s.feasible_count = count;
    s.reduction_factor = static_cast<double>(s.full_dim) / static_cast<double>(count);
    s.feasible_fraction = static_cast<double>(count) / static_cast<double>(s.full_dim);
  } else {
    s.exact = false;
    s.full_dim = 0;
    s.feasible_count = 0;
    s.reduction_factor = std::exp2(s.log2_full_dim - s.log2_feasible);
    s.feasible_fraction = std::exp2(s.log2_feasible - s.log2_full_dim);
  }
  return s;
}

namespace {

template <typename Fn>
double histogram_mean(const SampleHistogram& h, Fn&& value) {
  if (h.shots == 0) return 0.0;
  double acc = 0.0;
  for (const auto& [x, c] : h.counts) acc += value(x) * static_cast<double>(c);
  return acc / static_cast<double>(h.shots);
}

} // namespace

double feasibility_ratio(const SampleHistogram& h, const ProblemInstance& inst) {
  return histogram_mean(h, [&](const AllocationBits& x) {
    return node_feasible(inst, x) ? 1.0 : 0.0;
  });
}

double channel_feasibility_ratio(const SampleHistogram& h, const ProblemInstance& inst) {
  return histogram_mean(h, [&](const AllocationBits& x) {
    return channel_feasible(inst, x) ? 1.0 : 0.0;
  });
}

double dual_feasibility_ratio(const SampleHistogram& h, const ProblemInstance& inst) {
  return histogram_mean(h, [&](const AllocationBits& x) {
    return (node_feasible(inst, x) && channel_feasible(inst, x)) ? 1.0 : 0.0;
  });
}

double mean_conflict(const SampleHistogram& h, const ProblemInstance& inst) {
  return histogram_mean(h, [&](const AllocationBits& x) {
    return static_cast<double>(conflict_count(inst, x));
  });
}

double mean_deviation(const SampleHistogram& h, const ProblemInstance& inst) {
  return histogram_mean(h, [&](const AllocationBits& x) {
    return static_cast<double>(node_deviation(inst, x));
  });
}

double mean_penalty(const SampleHistogram& h, const ProblemInstance& inst, double lambda) {
  return histogram_mean(h, [&](const AllocationBits& x) {
    return penalty_cost(inst, x, lambda);
  });
}

std::optional<uint32_t> best_feasible_conflict(const SampleHistogram& h,
                                               const ProblemInstance& inst) {
  std::optional<uint32_t> best;
  for (const auto& [x, c] : h.counts) {
    (void)c;
    if (!node_feasible(inst, x)) continue;
    const uint32_t v = conflict_count(inst, x);
    if (!best || v < *best) best = v;
  }
  return best;
}

} // namespace sqaoa
