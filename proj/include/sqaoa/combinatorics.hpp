#pragma once

#include "sqaoa/model.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace sqaoa {

uint64_t binomial(int m, int k);

// All m-bit masks of popcount k in colexicographic order (= ascending as
// integers). These label the vertices of the Johnson graph J(m,k).
struct JohnsonBasis {
  int m = 0;
  int k = 0;
  std::vector<uint32_t> masks;

  size_t size() const { return masks.size(); }
  // Position of a weight-k mask in colex order; throws if not a member.
  size_t rank_mask(uint32_t mask) const;
};

JohnsonBasis enumerate_johnson(int m, int k);

// Tensor product of per-node Johnson bases: the node-feasible subspace.
// Ranks are mixed-radix with node n-1 fastest-varying.
struct ProductBasis {
  int n = 0;
  int m = 0;
  std::vector<JohnsonBasis> per_node;
  std::vector<uint64_t> strides;
  uint64_t total = 0;

  uint64_t size() const { return total; }
  uint64_t word_at(uint64_t r) const;
  AllocationBits unrank(uint64_t r) const;
  // Inverse of unrank; throws std::invalid_argument for bitstrings that
  // violate any node's Hamming-weight constraint.
  uint64_t rank(const AllocationBits& x) const;
  bool contains(const AllocationBits& x) const;
};

ProductBasis product_basis(const ProblemInstance& inst);

// Allocations satisfying both row sums k_i and column sums L_c, enumerated
// exhaustively by backtracking over rows with capacity pruning, stored
// sorted by packed word.
struct DualBasis {
  int n = 0;
  int m = 0;
  std::vector<uint64_t> words;

  size_t size() const { return words.size(); }
  AllocationBits at(size_t r) const;
  std::optional<size_t> find_word(uint64_t word) const;
  size_t rank(const AllocationBits& x) const; // throws if not a member
};

DualBasis enumerate_dual_basis(const ProblemInstance& inst);

// Deterministic row-major greedy fill: nodes ascending, channels ascending,
// place a one whenever both residual demand and residual capacity are
// positive. Falls back to the first DualBasis element if the traversal
// cannot meet some demand (possible for adversarial capacity profiles).
AllocationBits greedy_dual_fill(const ProblemInstance& inst);

// |D_k^m>: uniform amplitude 1/sqrt(C(m,k)) on every weight-k mask.
struct DickeVector {
  int m = 0;
  int k = 0;
  double amplitude = 0.0;
  uint64_t support_size = 0;

  // Dense real amplitude vector of length 2^m (test and embedding aid).
  std::vector<double> dense() const;
};

DickeVector dicke(int m, int k);

} // namespace sqaoa
