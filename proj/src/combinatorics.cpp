#include "sqaoa/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sqaoa {

uint64_t binomial(int m, int k) {
  if (k < 0 || k > m) return 0;
  k = std::min(k, m - k);
  uint64_t b = 1;
  for (int t = 0; t < k; ++t)
    b = b * static_cast<uint64_t>(m - t) / static_cast<uint64_t>(t + 1);
  return b;
}

size_t JohnsonBasis::rank_mask(uint32_t mask) const {
  auto it = std::lower_bound(masks.begin(), masks.end(), mask);
  if (it == masks.end() || *it != mask)
    throw std::invalid_argument("mask is not a weight-" + std::to_string(k) +
                                " member of J(" + std::to_string(m) + "," +
                                std::to_string(k) + ")");
  return static_cast<size_t>(it - masks.begin());
}

JohnsonBasis enumerate_johnson(int m, int k) {
  if (m < 0 || m > 30) throw std::domain_error("Johnson basis requires 0 <= m <= 30");
  if (k < 0 || k > m) throw std::domain_error("Johnson basis requires 0 <= k <= m");
  JohnsonBasis b;
  b.m = m;
  b.k = k;
  b.masks.reserve(binomial(m, k));
  if (k == 0) {
    b.masks.push_back(0);
    return b;
  }
  // Gosper's hack walks weight-k masks in ascending (colex) order.
  uint32_t v = (1u << k) - 1;
  const uint32_t limit = (m >= 31) ? ~0u : (1u << m);
  while (v < limit) {
    b.masks.push_back(v);
    uint32_t t = v | (v - 1);
    v = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
  }
  return b;
}

ProductBasis product_basis(const ProblemInstance& inst) {
  ProductBasis pb;
  pb.n = inst.n;
  pb.m = inst.m;
  pb.per_node.reserve(inst.n);
  for (int i = 0; i < inst.n; ++i)
    pb.per_node.push_back(enumerate_johnson(inst.m, inst.demands[i]));
  pb.strides.assign(inst.n, 1);
  for (int i = inst.n - 2; i >= 0; --i)
    pb.strides[i] = pb.strides[i + 1] * pb.per_node[i + 1].size();
  pb.total = pb.strides.empty() ? 1 : pb.strides[0] * pb.per_node[0].size();
  return pb;
}

uint64_t ProductBasis::word_at(uint64_t r) const {
  if (r >= total) throw std::out_of_range("product basis rank out of range");
  uint64_t word = 0;
  for (int i = 0; i < n; ++i) {
    const uint64_t d = (r / strides[i]) % per_node[i].size();
    word |= static_cast<uint64_t>(per_node[i].masks[d]) << (i * m);
  }
  return word;
}

AllocationBits ProductBasis::unrank(uint64_t r) const {
  return AllocationBits{static_cast<uint32_t>(n * m), word_at(r)};
}

uint64_t ProductBasis::rank(const AllocationBits& x) const {
  if (static_cast<int>(x.n_bits) != n * m)
    throw std::invalid_argument("allocation length does not match basis");
  const uint64_t field_mask = (1ULL << m) - 1;
  uint64_t r = 0;
  for (int i = 0; i < n; ++i) {
    const uint32_t mask = static_cast<uint32_t>((x.word >> (i * m)) & field_mask);
    r += strides[i] * per_node[i].rank_mask(mask);
  }
  return r;
}

bool ProductBasis::contains(const AllocationBits& x) const {
  if (static_cast<int>(x.n_bits) != n * m) return false;
  const uint64_t field_mask = (1ULL << m) - 1;
  for (int i = 0; i < n; ++i) {
    const uint32_t mask = static_cast<uint32_t>((x.word >> (i * m)) & field_mask);
    if (std::popcount(mask) != per_node[i].k) return false;
  }
  return true;
}

DualBasis enumerate_dual_basis(const ProblemInstance& inst) {
  if (!inst.capacities)
    throw std::logic_error("dual basis requires an instance with capacities");
  const long long demand_sum = std::accumulate(inst.demands.begin(), inst.demands.end(), 0LL);
  const long long cap_sum =
      std::accumulate(inst.capacities->begin(), inst.capacities->end(), 0LL);
  if (demand_sum != cap_sum)
    throw std::logic_error("dual basis requires sum(k) == sum(L)");
  if (inst.qubit_count() > 63)
    throw std::domain_error("dual basis enumeration limited to n*m <= 63");

  DualBasis db;
  db.n = inst.n;
  db.m = inst.m;

  std::vector<JohnsonBasis> rows;
  rows.reserve(inst.n);
  for (int i = 0; i < inst.n; ++i)
    rows.push_back(enumerate_johnson(inst.m, inst.demands[i]));

  std::vector<int> remaining = *inst.capacities;
  std::vector<long long> demand_tail(inst.n + 1, 0);
  for (int i = inst.n - 1; i >= 0; --i)
    demand_tail[i] = demand_tail[i + 1] + inst.demands[i];

  uint64_t word = 0;
  auto dfs = [&](auto&& self, int node) -> void {
    if (node == inst.n) {
      for (int c = 0; c < inst.m; ++c)
        if (remaining[c] != 0) return;
      db.words.push_back(word);
      return;
    }
    // Remaining capacity usable by the rows below must cover their demand.
    long long usable = 0;
    for (int c = 0; c < inst.m; ++c)
      usable += std::min<long long>(remaining[c], inst.n - node);
    if (usable < demand_tail[node]) return;

    for (uint32_t mask : rows[node].masks) {
      bool fits = true;
      for (uint32_t bits = mask; bits; bits &= bits - 1) {
        if (remaining[std::countr_zero(bits)] == 0) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      for (uint32_t bits = mask; bits; bits &= bits - 1)
        --remaining[std::countr_zero(bits)];
      word |= static_cast<uint64_t>(mask) << (node * inst.m);
      self(self, node + 1);
      word &= ~(((1ULL << inst.m) - 1) << (node * inst.m));
      for (uint32_t bits = mask; bits; bits &= bits - 1)
        ++remaining[std::countr_zero(bits)];
    }
  };
  dfs(dfs, 0);
  std::sort(db.words.begin(), db.words.end());
  return db;
}

AllocationBits DualBasis::at(size_t r) const {
  if (r >= words.size()) throw std::out_of_range("dual basis rank out of range");
  return AllocationBits{static_cast<uint32_t>(n * m), words[r]};
}

std::optional<size_t> DualBasis::find_word(uint64_t word) const {
  auto it = std::lower_bound(words.begin(), words.end(), word);
  if (it == words.end() || *it != word) return std::nullopt;
  return static_cast<size_t>(it - words.begin());
}

size_t DualBasis::rank(const AllocationBits& x) const {
  if (static_cast<int>(x.n_bits) != n * m)
    throw std::invalid_argument("allocation length does not match dual basis");
  auto r = find_word(x.word);
  if (!r) throw std::invalid_argument("allocation is not a member of the dual basis");
  return *r;
}

AllocationBits greedy_dual_fill(const ProblemInstance& inst) {
  if (!inst.capacities)
    throw std::logic_error("greedy dual fill requires an instance with capacities");
  std::vector<int> need = inst.demands;
  std::vector<int> remaining = *inst.capacities;
  AllocationBits x{static_cast<uint32_t>(inst.qubit_count()), 0};
  for (int i = 0; i < inst.n; ++i) {
    for (int c = 0; c < inst.m && need[i] > 0; ++c) {
      if (remaining[c] > 0) {
        x.set(inst.bit_index(i, c), true);
        --need[i];
        --remaining[c];
      }
    }
  }
  if (std::any_of(need.begin(), need.end(), [](int v) { return v != 0; })) {
    // Traversal starved a later row; fall back to the enumerated basis.
    DualBasis db = enumerate_dual_basis(inst);
    if (db.size() == 0)
      throw std::runtime_error("greedy dual fill failed and the dual basis is empty");
    return db.at(0);
  }
  return x;
}

DickeVector dicke(int m, int k) {
  if (k < 1 || k > m) throw std::domain_error("Dicke state requires 1 <= k <= m");
  DickeVector d;
  d.m = m;
  d.k = k;
  d.support_size = binomial(m, k);
  d.amplitude = 1.0 / std::sqrt(static_cast<double>(d.support_size));
  return d;
}

std::vector<double> DickeVector::dense() const {
  std::vector<double> v(1ULL << m, 0.0);
  for (uint32_t mask = 0; mask < v.size(); ++mask)
    if (std::popcount(mask) == k) v[mask] = amplitude;
  return v;
}

} // namespace sqaoa
