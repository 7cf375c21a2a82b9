#include "sqaoa/full_engine.hpp"

#include "sqaoa/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace sqaoa {

namespace {

constexpr int kMaxQubits = 26;
constexpr uint64_t kBlock = 1ULL << 16; // fixed reduction block (determinism)

void check_size(int n_qubits) {
  if (n_qubits < 0 || n_qubits > kMaxQubits)
    throw std::domain_error("full statevector limited to " + std::to_string(kMaxQubits) +
                            " qubits, got " + std::to_string(n_qubits));
}

} // namespace

FullState init_zero(int n_qubits) {
  check_size(n_qubits);
  FullState st;
  st.n_qubits = n_qubits;
  st.amp.assign(1ULL << n_qubits, cd{0.0, 0.0});
  st.amp[0] = cd{1.0, 0.0};
  return st;
}

FullState init_plus(int n_qubits) {
  check_size(n_qubits);
  FullState st;
  st.n_qubits = n_qubits;
  const double a = std::pow(2.0, -0.5 * n_qubits);
  st.amp.assign(1ULL << n_qubits, cd{a, 0.0});
  return st;
}

double norm_sq(const FullState& state) {
  const uint64_t dim = state.amp.size();
  const uint64_t blocks = (dim + kBlock - 1) / kBlock;
  std::vector<double> partial(blocks, 0.0);
  parallel_chunks(0, blocks, 1, [&](uint64_t bb, uint64_t be) {
    for (uint64_t b = bb; b < be; ++b) {
      double s = 0.0;
      const uint64_t end = std::min(dim, (b + 1) * kBlock);
      for (uint64_t z = b * kBlock; z < end; ++z) s += std::norm(state.amp[z]);
      partial[b] = s;
    }
  });
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

PenaltyTables build_penalty_tables(const ProblemInstance& inst) {
  const int nq = inst.qubit_count();
  check_size(nq);
  const uint64_t dim = 1ULL << nq;
  PenaltyTables t;
  t.conflicts.resize(dim);
  t.quad.resize(dim);
  const uint64_t field = (1ULL << inst.m) - 1;
  parallel_chunks(0, dim, kBlock, [&](uint64_t zb, uint64_t ze) {
    for (uint64_t z = zb; z < ze; ++z) {
      uint32_t conf = 0;
      for (const auto& [i, j] : inst.edges)
        conf += std::popcount((z >> (i * inst.m)) & (z >> (j * inst.m)) & field);
      uint32_t quad = 0;
      for (int i = 0; i < inst.n; ++i) {
        const int d = std::popcount((z >> (i * inst.m)) & field) - inst.demands[i];
        quad += static_cast<uint32_t>(d * d);
      }
      t.conflicts[z] = static_cast<uint16_t>(conf);
      t.quad[z] = static_cast<uint16_t>(quad);
    }
  });
  return t;
}

void apply_penalty_phase(FullState& state, const PenaltyTables& tables, double gamma,
                         double lambda) {
  if (tables.conflicts.size() != state.amp.size())
    throw std::invalid_argument("penalty tables do not match state dimension");
  uint16_t max_c = 0, max_q = 0;
  for (uint16_t v : tables.conflicts) max_c = std::max(max_c, v);
  for (uint16_t v : tables.quad) max_q = std::max(max_q, v);
  std::vector<cd> pc(max_c + 1), pq(max_q + 1);
  for (int v = 0; v <= max_c; ++v) pc[v] = std::polar(1.0, -gamma * v);
  for (int v = 0; v <= max_q; ++v) pq[v] = std::polar(1.0, -gamma * lambda * v);
  parallel_chunks(0, state.amp.size(), kBlock, [&](uint64_t zb, uint64_t ze) {
    for (uint64_t z = zb; z < ze; ++z)
      state.amp[z] *= pc[tables.conflicts[z]] * pq[tables.quad[z]];
  });
}

void apply_penalty_phase(FullState& state, const ProblemInstance& inst, double gamma,
                         double lambda) {
  apply_penalty_phase(state, build_penalty_tables(inst), gamma, lambda);
}

namespace {

// Pairs (z0, z1 = z0 | bit) for one qubit, enumerated by compressed index.
inline uint64_t expand_index(uint64_t idx, int q) {
  const uint64_t low = idx & ((1ULL << q) - 1);
  return ((idx >> q) << (q + 1)) | low;
}

} // namespace

void apply_x_mixer(FullState& state, double beta) {
  const double c = std::cos(beta);
  const cd mis{0.0, -std::sin(beta)};
  const uint64_t half = state.amp.size() >> 1;
  for (int q = 0; q < state.n_qubits; ++q) {
    const uint64_t bit = 1ULL << q;
    parallel_chunks(0, half, kBlock, [&](uint64_t ib, uint64_t ie) {
      for (uint64_t idx = ib; idx < ie; ++idx) {
        const uint64_t z0 = expand_index(idx, q);
        const uint64_t z1 = z0 | bit;
        const cd a = state.amp[z0];
        const cd b = state.amp[z1];
        state.amp[z0] = c * a + mis * b;
        state.amp[z1] = c * b + mis * a;
      }
    });
  }
}

SampleHistogram sample_state(const FullState& state, uint64_t shots, uint64_t seed) {
  if (shots == 0) throw std::domain_error("shot count must be positive");
  const uint64_t dim = state.amp.size();
  const uint64_t blocks = (dim + kBlock - 1) / kBlock;

  std::vector<double> block_sum(blocks, 0.0);
  parallel_chunks(0, blocks, 1, [&](uint64_t bb, uint64_t be) {
    for (uint64_t b = bb; b < be; ++b) {
      double s = 0.0;
      const uint64_t end = std::min(dim, (b + 1) * kBlock);
      for (uint64_t z = b * kBlock; z < end; ++z) s += std::norm(state.amp[z]);
      block_sum[b] = s;
    }
  });
  double total = 0.0;
  for (double s : block_sum) total += s;

  Rng rng(seed);
  std::vector<double> draws(shots);
  for (uint64_t s = 0; s < shots; ++s) draws[s] = rng.uniform() * total;
  std::sort(draws.begin(), draws.end());

  SampleHistogram hist;
  hist.shots = shots;
  const uint32_t n_bits = static_cast<uint32_t>(state.n_qubits);
  uint64_t s_idx = 0;
  double cum = 0.0;
  for (uint64_t b = 0; b < blocks && s_idx < shots; ++b) {
    const double block_end = cum + block_sum[b];
    if (draws[s_idx] >= block_end) {
      cum = block_end;
      continue;
    }
    // At least one draw lands here: scan the block.
    const uint64_t end = std::min(dim, (b + 1) * kBlock);
    for (uint64_t z = b * kBlock; z < end && s_idx < shots; ++z) {
      cum += std::norm(state.amp[z]);
      while (s_idx < shots && draws[s_idx] < cum) {
        ++hist.counts[AllocationBits{n_bits, z}];
        ++s_idx;
      }
    }
    cum = block_end;
  }
  // Guard against draws equal to the total weight (roundoff).
  for (; s_idx < shots; ++s_idx) ++hist.counts[AllocationBits{n_bits, dim - 1}];
  return hist;
}

AllocationBits measure_one(const FullState& state, Rng& rng) {
  double total = 0.0;
  for (const cd& a : state.amp) total += std::norm(a);
  const double u = rng.uniform() * total;
  double cum = 0.0;
  const uint32_t n_bits = static_cast<uint32_t>(state.n_qubits);
  for (uint64_t z = 0; z < state.amp.size(); ++z) {
    cum += std::norm(state.amp[z]);
    if (u < cum) return AllocationBits{n_bits, z};
  }
  return AllocationBits{n_bits, state.amp.size() - 1};
}

double expectation_penalty(const FullState& state, const PenaltyTables& tables,
                           double lambda) {
  const uint64_t dim = state.amp.size();
  const uint64_t blocks = (dim + kBlock - 1) / kBlock;
  std::vector<double> partial(blocks, 0.0);
  parallel_chunks(0, blocks, 1, [&](uint64_t bb, uint64_t be) {
    for (uint64_t b = bb; b < be; ++b) {
      double s = 0.0;
      const uint64_t end = std::min(dim, (b + 1) * kBlock);
      for (uint64_t z = b * kBlock; z < end; ++z)
        s += std::norm(state.amp[z]) * (tables.conflicts[z] + lambda * tables.quad[z]);
      partial[b] = s;
    }
  });
  double acc = 0.0;
  for (double s : partial) acc += s;
  return acc;
}

int noise_slot_count(const Circuit& c) {
  int slots = 0;
  for (const Gate& g : c.gates)
    slots += (g.kind == GateKind::DickeInit) ? std::max(0, g.width - 1) : 1;
  return slots;
}

Circuit standard_penalty_circuit(const ProblemInstance& inst, std::span<const double> gammas,
                                 std::span<const double> betas, double lambda) {
  if (gammas.size() != betas.size())
    throw std::invalid_argument("gamma/beta lists must have equal length");
  Circuit c;
  c.n_qubits = inst.qubit_count();
  check_size(c.n_qubits);
  for (int q = 0; q < c.n_qubits; ++q)
    c.gates.push_back({GateKind::Hadamard, q});
  for (size_t l = 0; l < gammas.size(); ++l) {
    const double g = gammas[l];
    // Conflict terms: one two-qubit diagonal gate per (edge, channel).
    for (const auto& [i, j] : inst.edges)
      for (int ch = 0; ch < inst.m; ++ch)
        c.gates.push_back(
            {GateKind::Phase2, inst.bit_index(i, ch), inst.bit_index(j, ch), g});
    // Quadratic demand penalty, expanded over binary variables:
    // (w_i - k_i)^2 = (1-2k_i) sum_c x_c + 2 sum_{c<c'} x_c x_c' + k_i^2.
    for (int i = 0; i < inst.n; ++i) {
      const double lin = g * lambda * (1.0 - 2.0 * inst.demands[i]);
      for (int ch = 0; ch < inst.m; ++ch)
        c.gates.push_back({GateKind::Phase1, inst.bit_index(i, ch), -1, lin});
      for (int ch = 0; ch < inst.m; ++ch)
        for (int cp = ch + 1; cp < inst.m; ++cp)
          c.gates.push_back({GateKind::Phase2, inst.bit_index(i, ch),
                             inst.bit_index(i, cp), 2.0 * g * lambda});
    }
    for (int q = 0; q < c.n_qubits; ++q)
      c.gates.push_back({GateKind::RotX, q, -1, betas[l]});
  }
  return c;
}

Circuit dicke_xy_circuit(const ProblemInstance& inst, std::span<const double> gammas,
                         std::span<const double> betas, MixerTopology topology) {
  if (gammas.size() != betas.size())
    throw std::invalid_argument("gamma/beta lists must have equal length");
  Circuit c;
  c.n_qubits = inst.qubit_count();
  check_size(c.n_qubits);
  for (int i = 0; i < inst.n; ++i) {
    Gate g;
    g.kind = GateKind::DickeInit;
    g.base = i * inst.m;
    g.width = inst.m;
    g.weight = inst.demands[i];
    c.gates.push_back(g);
  }
  const auto pairs = mixer_pairs(inst.m, topology);
  for (size_t l = 0; l < gammas.size(); ++l) {
    for (const auto& [i, j] : inst.edges)
      for (int ch = 0; ch < inst.m; ++ch)
        c.gates.push_back(
            {GateKind::Phase2, inst.bit_index(i, ch), inst.bit_index(j, ch), gammas[l]});
    for (int i = 0; i < inst.n; ++i)
      for (const auto& [a, b] : pairs)
        c.gates.push_back(
            {GateKind::RotXXYY, inst.bit_index(i, a), inst.bit_index(i, b), betas[l]});
  }
  return c;
}

namespace {

void apply_hadamard(FullState& st, int q) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const uint64_t bit = 1ULL << q;
  const uint64_t half = st.amp.size() >> 1;
  for (uint64_t idx = 0; idx < half; ++idx) {
    const uint64_t z0 = expand_index(idx, q);
    const uint64_t z1 = z0 | bit;
    const cd a = st.amp[z0], b = st.amp[z1];
    st.amp[z0] = inv_sqrt2 * (a + b);
    st.amp[z1] = inv_sqrt2 * (a - b);
  }
}

void apply_rot_x(FullState& st, int q, double theta) {
  const double c = std::cos(theta);
  const cd mis{0.0, -std::sin(theta)};
  const uint64_t bit = 1ULL << q;
  const uint64_t half = st.amp.size() >> 1;
  for (uint64_t idx = 0; idx < half; ++idx) {
    const uint64_t z0 = expand_index(idx, q);
    const uint64_t z1 = z0 | bit;
    const cd a = st.amp[z0], b = st.amp[z1];
    st.amp[z0] = c * a + mis * b;
    st.amp[z1] = c * b + mis * a;
  }
}

void apply_phase1(FullState& st, int q, double theta) {
  const cd ph = std::polar(1.0, -theta);
  const uint64_t bit = 1ULL << q;
  for (uint64_t z = 0; z < st.amp.size(); ++z)
    if (z & bit) st.amp[z] *= ph;
}

void apply_phase2(FullState& st, int q0, int q1, double theta) {
  const cd ph = std::polar(1.0, -theta);
  const uint64_t bits = (1ULL << q0) | (1ULL << q1);
  for (uint64_t z = 0; z < st.amp.size(); ++z)
    if ((z & bits) == bits) st.amp[z] *= ph;
}

void apply_rot_xxyy(FullState& st, int q0, int q1, double theta) {
  const double c = std::cos(theta);
  const cd mis{0.0, -std::sin(theta)};
  const uint64_t b0 = 1ULL << q0;
  const uint64_t b1 = 1ULL << q1;
  for (uint64_t z = 0; z < st.amp.size(); ++z) {
    if ((z & b0) && !(z & b1)) { // visits each {01,10} pair once
      const uint64_t zp = (z ^ b0) | b1;
      const cd a = st.amp[z], b = st.amp[zp];
      st.amp[z] = c * a + mis * b;
      st.amp[zp] = c * b + mis * a;
    }
  }
}

void apply_dicke_init(FullState& st, const Gate& g) {
  const uint64_t mask = (1ULL << g.width) - 1;
  const double a = 1.0 / std::sqrt(static_cast<double>(binomial(g.width, g.weight)));
  for (uint64_t z = st.amp.size(); z-- > 0;) {
    const uint64_t s = (z >> g.base) & mask;
    if (s == 0) {
      if (g.weight != 0) st.amp[z] = cd{0.0, 0.0};
      continue;
    }
    const uint64_t rest = z & ~(mask << g.base);
    // Descending z: rest < z for s != 0, so amp[rest] still holds the
    // pre-init value when it is consumed here.
    st.amp[z] = (std::popcount(s) == g.weight) ? a * st.amp[rest] : cd{0.0, 0.0};
  }
}

void apply_pauli(FullState& st, int q, int pauli) { // 1=X, 2=Y, 3=Z
  const uint64_t bit = 1ULL << q;
  const uint64_t half = st.amp.size() >> 1;
  switch (pauli) {
    case 1:
      for (uint64_t idx = 0; idx < half; ++idx) {
        const uint64_t z0 = expand_index(idx, q);
        std::swap(st.amp[z0], st.amp[z0 | bit]);
      }
      break;
    case 2:
      for (uint64_t idx = 0; idx < half; ++idx) {
        const uint64_t z0 = expand_index(idx, q);
        const uint64_t z1 = z0 | bit;
        const cd a = st.amp[z0], b = st.amp[z1];
        st.amp[z0] = cd{0.0, -1.0} * b; // Y|1> = -i|0>
        st.amp[z1] = cd{0.0, 1.0} * a;  // Y|0> =  i|1>
      }
      break;
    case 3:
      for (uint64_t z = 0; z < st.amp.size(); ++z)
        if (z & bit) st.amp[z] = -st.amp[z];
      break;
    default:
      break;
  }
}

void inject_noise_1q(FullState& st, int q, double p_err, Rng& rng) {
  if (rng.uniform() < p_err)
    apply_pauli(st, q, 1 + static_cast<int>(rng.below(3)));
}

void inject_noise_2q(FullState& st, int q0, int q1, double p_err, Rng& rng) {
  if (rng.uniform() >= p_err) return;
  const int code = 1 + static_cast<int>(rng.below(15)); // 1..15, skipping II
  const int p0 = code / 4;
  const int p1 = code % 4;
  if (p0) apply_pauli(st, q0, p0);
  if (p1) apply_pauli(st, q1, p1);
}

} // namespace

void apply_gate(FullState& state, const Gate& g) {
  switch (g.kind) {
    case GateKind::Hadamard: apply_hadamard(state, g.q0); break;
    case GateKind::Phase1: apply_phase1(state, g.q0, g.theta); break;
    case GateKind::Phase2: apply_phase2(state, g.q0, g.q1, g.theta); break;
    case GateKind::RotX: apply_rot_x(state, g.q0, g.theta); break;
    case GateKind::RotXXYY: apply_rot_xxyy(state, g.q0, g.q1, g.theta); break;
    case GateKind::DickeInit: apply_dicke_init(state, g); break;
  }
}

FullState run_circuit(const Circuit& c) {
  FullState st = init_zero(c.n_qubits);
  for (const Gate& g : c.gates) apply_gate(st, g);
  return st;
}

FullState run_circuit_noisy(const Circuit& c, const NoiseModel& noise, Rng& rng) {
  if (noise.p_err < 0.0 || noise.p_err > 1.0)
    throw std::domain_error("depolarizing probability must lie in [0, 1]");
  FullState st = init_zero(c.n_qubits);
  for (const Gate& g : c.gates) {
    apply_gate(st, g);
    switch (g.kind) {
      case GateKind::Hadamard:
      case GateKind::Phase1:
      case GateKind::RotX:
        inject_noise_1q(st, g.q0, noise.p_err, rng);
        break;
      case GateKind::Phase2:
      case GateKind::RotXXYY:
        inject_noise_2q(st, g.q0, g.q1, noise.p_err, rng);
        break;
      case GateKind::DickeInit:
        // Idealized ladder: width-1 two-qubit preparation gates per register.
        for (int c2 = 0; c2 + 1 < g.width; ++c2)
          inject_noise_2q(st, g.base + c2, g.base + c2 + 1, noise.p_err, rng);
        break;
    }
  }
  return st;
}

AllocationBits run_noisy_trajectory(const Circuit& c, const NoiseModel& noise,
                                    uint64_t seed) {
  Rng rng(seed);
  FullState st = run_circuit_noisy(c, noise, rng);
  return measure_one(st, rng);
}

} // namespace sqaoa
