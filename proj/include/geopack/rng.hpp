#pragma once

#include <cstdint>

namespace geopack {

// splitmix64: tiny deterministic generator used for all sampling so results
// do not depend on the standard library's distribution implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

 private:
  std::uint64_t state_;
};

// Mixes a base seed with a stream index (e.g. restart number) into an
// independent generator seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 g(seed ^ (0x9E3779B97F4A7C15ULL + stream * 0xD1B54A32D192ED03ULL));
  return g.next_u64();
}

// Radical-inverse Halton value, index >= 0, prime base.
inline double halton(std::uint64_t index, unsigned base) {
  double f = 1.0;
  double r = 0.0;
  std::uint64_t i = index + 1;  // skip the zero at index 0
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

inline unsigned nth_prime(unsigned k) {
  static constexpr unsigned primes[] = {
      2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
      43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  constexpr unsigned count = sizeof(primes) / sizeof(primes[0]);
  if (k < count) return primes[k];
  // Dimensions beyond the table fall back to a spaced odd sequence; the
  // low-discrepancy property degrades but sampling stays well-defined.
  return 101 + 2 * (k - count);
}

}  // namespace geopack
