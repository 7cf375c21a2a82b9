#pragma once

#include "sqaoa/combinatorics.hpp"
#include "sqaoa/linalg.hpp"
#include "sqaoa/model.hpp"

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace sqaoa {

using cd = std::complex<double>;

// Amplitudes over an enumerated feasible basis (node-feasible product basis
// or row+column dual basis). Exactly one basis pointer is set; the caller
// keeps the basis alive for the lifetime of the state.
struct SubspaceState {
  const ProductBasis* product = nullptr;
  const DualBasis* dual = nullptr;
  std::vector<cd> amp;

  uint64_t size() const { return amp.size(); }
  uint64_t word_at(uint64_t r) const;
  uint32_t n_bits() const;
  AllocationBits allocation_at(uint64_t r) const;
  double norm_sq() const;
};

// Tensor product of node-wise Dicke states == uniform amplitude 1/sqrt(|F|)
// over the whole product basis.
SubspaceState init_dicke_product(const ProblemInstance& inst, const ProductBasis& basis);

// One-hot amplitude on a dual-feasible allocation; throws if x0 is not a
// basis member.
SubspaceState init_basis_state(const DualBasis& basis, const AllocationBits& x0);

// amp[r] *= exp(-i * gamma * conflict_count(state r))
void apply_cost_phase(SubspaceState& state, const ProblemInstance& inst, double gamma);

enum class MixerTopology { Complete, Ring };

// Intra-node qubit pairs allowed to exchange an excitation.
std::vector<std::pair<int, int>> mixer_pairs(int m, MixerTopology topology);

// Restricted XY Hamiltonian on the weight-k subspace of one node register:
// H[r][s] = 1 iff masks r and s differ by one transposition along a mixer
// pair. For Complete topology this is the Johnson graph adjacency matrix.
// Returned row-major, dim = basis.size().
std::vector<double> xy_restricted_hamiltonian(const JohnsonBasis& basis,
                                              MixerTopology topology);

// Per-node eigendecompositions of the restricted XY blocks; built once and
// reused across mixer applications at different angles.
struct XYMixerSpec {
  MixerTopology topology = MixerTopology::Complete;
  std::vector<SymEigen> nodes; // aligned with basis.per_node
};

XYMixerSpec make_xy_mixer_spec(const ProductBasis& basis, MixerTopology topology);

// Exact application of the tensor product over nodes of exp(-i*beta*H_XY^(i))
// (dense eigendecomposition per node, no Trotterization).
void apply_xy_mixer(SubspaceState& state, const XYMixerSpec& spec, double beta);

// Plaquettes (i<j, c<c') in lexicographic order, each carrying the index
// pairs of dual-basis states exchanged by that 1001 <-> 0110 swap pattern.
struct PlaquetteSpec {
  struct Plaquette {
    int i = 0, j = 0, c = 0, cp = 0;
    std::vector<std::pair<uint32_t, uint32_t>> pairs;
  };
  std::vector<Plaquette> plaquettes;
};

PlaquetteSpec make_plaquette_spec(const ProblemInstance& inst, const DualBasis& basis);

// Ordered product of Givens rotations exp(-i*beta*H_plaquette), one per
// plaquette in spec order (first-order Trotter step of the dual mixer).
// Every factor preserves both row and column sums exactly.
void apply_plaquette_layer(SubspaceState& state, const PlaquetteSpec& spec, double beta);

// Size of the plaquette-move connected component containing `start`.
size_t plaquette_component_size(const PlaquetteSpec& spec, size_t basis_size, size_t start);

// Seeded multinomial draw from |amp|^2.
SampleHistogram sample_state(const SubspaceState& state, uint64_t shots, uint64_t seed);

double expectation_conflicts(const SubspaceState& state, const ProblemInstance& inst);

// Embed into the full 2^(n*m) register (cross-check aid; n*m <= 26).
std::vector<cd> to_full_statevector(const SubspaceState& state);

} // namespace sqaoa
