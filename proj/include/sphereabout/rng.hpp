#pragma once

#include <cstdint>
#include <random>

namespace sphereabout {

// All randomness in the project goes through mt19937_64 (bit-exact per the
// C++ standard) with the helpers below; std::*_distribution is avoided
// because its output is implementation-defined.

/// SplitMix64 step; used to derive independent per-experiment sub-seeds
/// from a master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Sub-seed for experiment index `i` under `master`.
inline std::uint64_t derive_subseed(std::uint64_t master, std::uint64_t i) {
  std::uint64_t s = master + 0x9E3779B97F4A7C15ULL * (i + 1);
  return splitmix64(s);
}

/// Uniform double in [0, 1), 53-bit resolution.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform_range(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

/// Uniform integer in [0, n) by rejection; unbiased and portable.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

/// Fair coin.
inline bool coin_flip(std::mt19937_64& rng) { return (rng() & 1ULL) != 0; }

}  // namespace sphereabout
