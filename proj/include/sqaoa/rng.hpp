#pragma once

#include <cstdint>
#include <random>

namespace sqaoa {

// Stateless 64-bit mix (splitmix64 finalizer). Used to derive independent
// stream seeds from a base seed plus context tags, so that parallel workers
// and per-cell/per-trajectory streams never share state.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t base, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
  uint64_t s = mix64(base);
  s = mix64(s ^ (a * 0xd6e8feb86659fd93ULL));
  s = mix64(s ^ (b * 0xa0761d6478bd642fULL));
  s = mix64(s ^ (c * 0xe7037ed1a0b428dbULL));
  return s;
}

// mt19937_64 wrapper with hand-rolled distributions. The standard pins the
// engine's output sequence but not the library distributions, so uniform
// doubles and index draws are implemented here to keep every sampled byte
// reproducible across compilers.
class Rng {
public:
  explicit Rng(uint64_t seed) : eng_(mix64(seed)) {}

  uint64_t next() { return eng_(); }

  // Uniform in [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Unbiased integer in [0,n) by rejection.
  uint64_t below(uint64_t n) {
    if (n <= 1) return 0;
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return v % n;
  }

private:
  std::mt19937_64 eng_;
};

} // namespace sqaoa
