#pragma once

#include "sqaoa/model.hpp"
#include "sqaoa/rng.hpp"
#include "sqaoa/subspace_engine.hpp" // cd, MixerTopology

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace sqaoa {

// Dense amplitudes over all 2^n_qubits basis states; basis index bit b is
// qubit b = index(i,c). Guarded at 26 qubits (1 GiB of amplitudes).
struct FullState {
  int n_qubits = 0;
  std::vector<cd> amp;
};

FullState init_zero(int n_qubits);
FullState init_plus(int n_qubits);
double norm_sq(const FullState& state);

// Precomputed per-basis-state conflict count and quadratic demand penalty
// sum_i (w_i - k_i)^2, so repeated phase applications cost two table lookups
// per amplitude.
struct PenaltyTables {
  std::vector<uint16_t> conflicts;
  std::vector<uint16_t> quad;
};

PenaltyTables build_penalty_tables(const ProblemInstance& inst);

// amp[z] *= exp(-i*gamma*(conflicts(z) + lambda*quad(z)))
void apply_penalty_phase(FullState& state, const PenaltyTables& tables, double gamma,
                         double lambda);
void apply_penalty_phase(FullState& state, const ProblemInstance& inst, double gamma,
                         double lambda);

// Product over qubits of exp(-i*beta*X) (terms commute, application exact).
void apply_x_mixer(FullState& state, double beta);

SampleHistogram sample_state(const FullState& state, uint64_t shots, uint64_t seed);
AllocationBits measure_one(const FullState& state, Rng& rng);

double expectation_penalty(const FullState& state, const PenaltyTables& tables,
                           double lambda);

struct NoiseModel {
  double p_err = 0.0; // per-gate depolarizing probability
};

// Gate-level circuit description used by the noisy trajectory runner.
//   Hadamard    q0
//   Phase1      q0        diag(1, e^{-i theta})
//   Phase2      q0,q1     phase e^{-i theta} on |11>
//   RotX        q0        exp(-i theta X)
//   RotXXYY     q0,q1     exp(-i theta (XX+YY)/2): rotation inside {01,10}
//   DickeInit   register [base, base+width) set to |D_weight^width>; the
//               register must still be in |0...0>. Counts as width-1
//               two-qubit ladder gates for noise purposes.
enum class GateKind { Hadamard, Phase1, Phase2, RotX, RotXXYY, DickeInit };

struct Gate {
  GateKind kind = GateKind::Hadamard;
  int q0 = -1;
  int q1 = -1;
  double theta = 0.0;
  int base = 0, width = 0, weight = 0; // DickeInit only
};

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;
};

// Number of noise-exposure slots (each gate once; DickeInit width-1 times).
int noise_slot_count(const Circuit& c);

Circuit standard_penalty_circuit(const ProblemInstance& inst, std::span<const double> gammas,
                                 std::span<const double> betas, double lambda);
Circuit dicke_xy_circuit(const ProblemInstance& inst, std::span<const double> gammas,
                         std::span<const double> betas, MixerTopology topology);

void apply_gate(FullState& state, const Gate& g);
FullState run_circuit(const Circuit& c);

// Quantum-trajectory unraveling of depolarizing noise: after every noise
// slot, with probability p_err a uniformly random non-identity Pauli acts on
// that gate's support (3 choices for 1-qubit support, 15 for 2-qubit).
FullState run_circuit_noisy(const Circuit& c, const NoiseModel& noise, Rng& rng);
AllocationBits run_noisy_trajectory(const Circuit& c, const NoiseModel& noise, uint64_t seed);

} // namespace sqaoa
