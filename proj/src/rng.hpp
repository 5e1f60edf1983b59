#pragma once

#include <cstdint>

namespace netvec {

// splitmix64. Used everywhere instead of <random> so that seeded runs are
// byte-identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform integer in [0, n), n > 0; Lemire multiply-shift
  uint64_t next_below(uint64_t n) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(next_u64()) * n) >> 64);
  }

  // uniform in [lo, hi)
  double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

 private:
  uint64_t state_;
};

// Deterministic seed derivation for independent streams (per walk, per worker).
inline uint64_t mix_seed(uint64_t a, uint64_t b, uint64_t c = 0, uint64_t d = 0) {
  Rng r(a ^ (b * 0x9e3779b97f4a7c15ULL) ^ (c * 0xc2b2ae3d27d4eb4fULL) ^ (d * 0x165667b19e3779f9ULL));
  return r.next_u64();
}

}  // namespace netvec
