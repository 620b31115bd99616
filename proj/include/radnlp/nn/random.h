#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace radnlp::nn {

// All seeded randomness goes through this engine. The helpers below avoid
// the standard distributions, whose output is implementation defined.
using Rng = std::mt19937_64;

// Uniform in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform in the open interval (lo, hi).
inline double uniform_open(Rng& rng, double lo, double hi) {
  while (true) {
    const double v = lo + (hi - lo) * uniform01(rng);
    if (v > lo && v < hi) return v;
  }
}

// Uniform integer in [0, n); n > 0.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

// Fisher-Yates with uniform_index, so orderings are stable across toolchains.
template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[uniform_index(rng, i)]);
  }
}

}  // namespace radnlp::nn
