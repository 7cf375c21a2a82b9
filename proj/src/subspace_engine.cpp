#include "sqaoa/subspace_engine.hpp"

#include "sqaoa/parallel.hpp"
#include "sqaoa/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace sqaoa {

uint64_t SubspaceState::word_at(uint64_t r) const {
  if (product) return product->word_at(r);
  if (dual) return dual->words.at(r);
  throw std::logic_error("subspace state has no basis");
}

uint32_t SubspaceState::n_bits() const {
  if (product) return static_cast<uint32_t>(product->n * product->m);
  if (dual) return static_cast<uint32_t>(dual->n * dual->m);
  throw std::logic_error("subspace state has no basis");
}

AllocationBits SubspaceState::allocation_at(uint64_t r) const {
  return AllocationBits{n_bits(), word_at(r)};
}

double SubspaceState::norm_sq() const {
  double s = 0.0;
  for (const cd& a : amp) s += std::norm(a);
  return s;
}

SubspaceState init_dicke_product(const ProblemInstance& inst, const ProductBasis& basis) {
  if (basis.n != inst.n || basis.m != inst.m)
    throw std::invalid_argument("product basis does not match instance");
  SubspaceState st;
  st.product = &basis;
  const double a = 1.0 / std::sqrt(static_cast<double>(basis.size()));
  st.amp.assign(basis.size(), cd{a, 0.0});
  return st;
}

SubspaceState init_basis_state(const DualBasis& basis, const AllocationBits& x0) {
  SubspaceState st;
  st.dual = &basis;
  st.amp.assign(basis.size(), cd{0.0, 0.0});
  st.amp[basis.rank(x0)] = cd{1.0, 0.0};
  return st;
}

namespace {

uint32_t word_conflicts(const ProblemInstance& inst, uint64_t word) {
  const uint64_t field = (1ULL << inst.m) - 1;
  uint32_t conflicts = 0;
  for (const auto& [i, j] : inst.edges)
    conflicts += std::popcount((word >> (i * inst.m)) & (word >> (j * inst.m)) & field);
  return conflicts;
}

} // namespace

void apply_cost_phase(SubspaceState& state, const ProblemInstance& inst, double gamma) {
  // Conflict counts are small integers (at most m per edge), so phase
  // factors come from a lookup table.
  const uint32_t max_c = static_cast<uint32_t>(inst.edges.size() * inst.m);
  std::vector<cd> phase(max_c + 1);
  for (uint32_t c = 0; c <= max_c; ++c)
    phase[c] = std::polar(1.0, -gamma * static_cast<double>(c));
  parallel_chunks(0, state.size(), 4096, [&](uint64_t b, uint64_t e) {
    for (uint64_t r = b; r < e; ++r)
      state.amp[r] *= phase[word_conflicts(inst, state.word_at(r))];
  });
}

std::vector<std::pair<int, int>> mixer_pairs(int m, MixerTopology topology) {
  std::vector<std::pair<int, int>> pairs;
  if (topology == MixerTopology::Complete) {
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) pairs.emplace_back(a, b);
  } else {
    if (m == 2) pairs.emplace_back(0, 1);
    else if (m >= 3) {
      for (int a = 0; a + 1 < m; ++a) pairs.emplace_back(a, a + 1);
      pairs.emplace_back(0, m - 1);
    }
  }
  return pairs;
}

std::vector<double> xy_restricted_hamiltonian(const JohnsonBasis& basis,
                                              MixerTopology topology) {
  const int dim = static_cast<int>(basis.size());
  const auto pairs = mixer_pairs(basis.m, topology);
  std::vector<double> h(static_cast<size_t>(dim) * dim, 0.0);
  for (int r = 0; r < dim; ++r) {
    for (int s = r + 1; s < dim; ++s) {
      const uint32_t x = basis.masks[r] ^ basis.masks[s];
      if (std::popcount(x) != 2) continue;
      const int lo = std::countr_zero(x);
      const int hi = 31 - std::countl_zero(x);
      const bool allowed =
          std::find(pairs.begin(), pairs.end(), std::make_pair(lo, hi)) != pairs.end();
      if (!allowed) continue;
      h[static_cast<size_t>(r) * dim + s] = 1.0;
      h[static_cast<size_t>(s) * dim + r] = 1.0;
    }
  }
  return h;
}

XYMixerSpec make_xy_mixer_spec(const ProductBasis& basis, MixerTopology topology) {
  XYMixerSpec spec;
  spec.topology = topology;
  spec.nodes.reserve(basis.per_node.size());
  for (const auto& jb : basis.per_node) {
    const int dim = static_cast<int>(jb.size());
    spec.nodes.push_back(jacobi_eigensolve(xy_restricted_hamiltonian(jb, topology), dim));
  }
  return spec;
}

void apply_xy_mixer(SubspaceState& state, const XYMixerSpec& spec, double beta) {
  if (!state.product)
    throw std::invalid_argument("XY mixer applies to product-basis states");
  const ProductBasis& basis = *state.product;
  if (spec.nodes.size() != basis.per_node.size())
    throw std::invalid_argument("mixer spec does not match basis");

  for (int node = 0; node < basis.n; ++node) {
    const SymEigen& eig = spec.nodes[node];
    const int dim = eig.dim;
    if (dim == 1) continue; // exp(-i*beta*0) = 1 for the degenerate blocks

    // U = V diag(exp(-i*beta*lambda)) V^T, dim x dim.
    std::vector<cd> u(static_cast<size_t>(dim) * dim, cd{0.0, 0.0});
    for (int a = 0; a < dim; ++a) {
      for (int b = 0; b < dim; ++b) {
        cd acc{0.0, 0.0};
        for (int t = 0; t < dim; ++t) {
          acc += eig.vectors[static_cast<size_t>(t) * dim + a] *
                 std::polar(1.0, -beta * eig.eigenvalues[t]) *
                 eig.vectors[static_cast<size_t>(t) * dim + b];
        }
        u[static_cast<size_t>(a) * dim + b] = acc;
      }
    }

    const uint64_t stride = basis.strides[node];
    const uint64_t fibers = state.size() / dim;
    parallel_chunks(0, fibers, 1024, [&](uint64_t fb, uint64_t fe) {
      std::vector<cd> in(dim), out(dim);
      for (uint64_t f = fb; f < fe; ++f) {
        const uint64_t high = f / stride;
        const uint64_t low = f % stride;
        const uint64_t base = high * stride * dim + low;
        for (int d = 0; d < dim; ++d) in[d] = state.amp[base + d * stride];
        for (int a = 0; a < dim; ++a) {
          cd acc{0.0, 0.0};
          for (int b = 0; b < dim; ++b) acc += u[static_cast<size_t>(a) * dim + b] * in[b];
          out[a] = acc;
        }
        for (int d = 0; d < dim; ++d) state.amp[base + d * stride] = out[d];
      }
    });
  }
}

PlaquetteSpec make_plaquette_spec(const ProblemInstance& inst, const DualBasis& basis) {
  PlaquetteSpec spec;
  for (int i = 0; i < inst.n; ++i) {
    for (int j = i + 1; j < inst.n; ++j) {
      for (int c = 0; c < inst.m; ++c) {
        for (int cp = c + 1; cp < inst.m; ++cp) {
          PlaquetteSpec::Plaquette pl;
          pl.i = i;
          pl.j = j;
          pl.c = c;
          pl.cp = cp;
          const uint64_t b_ic = 1ULL << inst.bit_index(i, c);
          const uint64_t b_icp = 1ULL << inst.bit_index(i, cp);
          const uint64_t b_jc = 1ULL << inst.bit_index(j, c);
          const uint64_t b_jcp = 1ULL << inst.bit_index(j, cp);
          const uint64_t all = b_ic | b_icp | b_jc | b_jcp;
          for (size_t r = 0; r < basis.size(); ++r) {
            const uint64_t w = basis.words[r];
            // 1001 pattern on (i,c),(i,c'),(j,c),(j,c').
            if ((w & all) != (b_ic | b_jcp)) continue;
            auto partner = basis.find_word(w ^ all);
            if (!partner)
              throw std::logic_error("plaquette partner missing from dual basis");
            pl.pairs.emplace_back(static_cast<uint32_t>(r),
                                  static_cast<uint32_t>(*partner));
          }
          spec.plaquettes.push_back(std::move(pl));
        }
      }
    }
  }
  return spec;
}

void apply_plaquette_layer(SubspaceState& state, const PlaquetteSpec& spec, double beta) {
  if (!state.dual)
    throw std::invalid_argument("plaquette layer applies to dual-basis states");
  const double c = std::cos(beta);
  const cd mis{0.0, -std::sin(beta)};
  for (const auto& pl : spec.plaquettes) {
    for (const auto& [ra, rb] : pl.pairs) {
      const cd a = state.amp[ra];
      const cd b = state.amp[rb];
      state.amp[ra] = c * a + mis * b;
      state.amp[rb] = c * b + mis * a;
    }
  }
}

size_t plaquette_component_size(const PlaquetteSpec& spec, size_t basis_size, size_t start) {
  std::vector<std::vector<uint32_t>> adj(basis_size);
  for (const auto& pl : spec.plaquettes) {
    for (const auto& [a, b] : pl.pairs) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
  }
  std::vector<char> seen(basis_size, 0);
  std::vector<uint32_t> stack{static_cast<uint32_t>(start)};
  seen[start] = 1;
  size_t count = 0;
  while (!stack.empty()) {
    const uint32_t v = stack.back();
    stack.pop_back();
    ++count;
    for (uint32_t w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return count;
}

SampleHistogram sample_state(const SubspaceState& state, uint64_t shots, uint64_t seed) {
  if (shots == 0) throw std::domain_error("shot count must be positive");
  const uint64_t dim = state.size();

  double total = 0.0;
  std::vector<double> prob(dim);
  for (uint64_t r = 0; r < dim; ++r) {
    prob[r] = std::norm(state.amp[r]);
    total += prob[r];
  }

  Rng rng(seed);
  std::vector<double> draws(shots);
  for (uint64_t s = 0; s < shots; ++s) draws[s] = rng.uniform() * total;
  std::sort(draws.begin(), draws.end());

  SampleHistogram hist;
  hist.shots = shots;
  double cum = 0.0;
  uint64_t r = 0;
  cum = prob.empty() ? 0.0 : prob[0];
  for (double d : draws) {
    while (r + 1 < dim && d >= cum) {
      ++r;
      cum += prob[r];
    }
    ++hist.counts[state.allocation_at(r)];
  }
  return hist;
}

double expectation_conflicts(const SubspaceState& state, const ProblemInstance& inst) {
  double acc = 0.0;
  for (uint64_t r = 0; r < state.size(); ++r)
    acc += std::norm(state.amp[r]) * word_conflicts(inst, state.word_at(r));
  return acc;
}

std::vector<cd> to_full_statevector(const SubspaceState& state) {
  const uint32_t nb = state.n_bits();
  if (nb > 26) throw std::domain_error("full-space embedding limited to 26 qubits");
  std::vector<cd> full(1ULL << nb, cd{0.0, 0.0});
  for (uint64_t r = 0; r < state.size(); ++r) full[state.word_at(r)] = state.amp[r];
  return full;
}

} // namespace sqaoa
