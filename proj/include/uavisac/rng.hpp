#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace uavisac::rng {

// All randomness in the project flows through these helpers. The standard
// distribution classes are implementation-defined, so raw mt19937_64 output
// is mapped to values by hand; identical seeds give identical streams on any
// conforming compiler/libc++.

// Uniform double in [0, 1), 53 significant bits.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * uniform01(gen);
}

// Uniform integer in [lo, hi], both inclusive.
inline int uniform_int(std::mt19937_64& gen, int lo, int hi) {
  const double span = static_cast<double>(hi) - static_cast<double>(lo) + 1.0;
  int v = lo + static_cast<int>(uniform01(gen) * span);
  return v > hi ? hi : v;  // guards the (never observed) u == 1 - ulp edge
}

// Box-Muller transform; avoids log(0) by mirroring the uniform draw to (0, 1].
inline double gaussian(std::mt19937_64& gen, double mean, double stddev) {
  const double u1 = 1.0 - uniform01(gen);
  const double u2 = uniform01(gen);
  return mean + stddev * std::sqrt(-2.0 * std::log(u1)) *
                    std::cos(2.0 * std::numbers::pi * u2);
}

// k distinct elements of pool, order randomized (partial Fisher-Yates).
inline std::vector<int> sample_without_replacement(std::mt19937_64& gen,
                                                   std::vector<int> pool,
                                                   int k) {
  if (k < 0 || static_cast<std::size_t>(k) > pool.size())
    throw std::invalid_argument("sample_without_replacement: k out of range");
  for (int i = 0; i < k; ++i) {
    const int j = uniform_int(gen, i, static_cast<int>(pool.size()) - 1);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace uavisac::rng
