#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace tempnet {

// All randomized code in the library draws from a std::mt19937_64 through the
// helpers below. The engine's output sequence is fixed by the C++ standard,
// and the helpers avoid std::*_distribution (whose mappings are
// implementation-defined), so runs are reproducible across compilers.
using Rng = std::mt19937_64;

// Uniform integer in [0, bound). Unbiased via rejection.
inline std::uint64_t uniform_u64(Rng& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

inline std::size_t uniform_index(Rng& rng, std::size_t bound) {
  return static_cast<std::size_t>(uniform_u64(rng, bound));
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_real(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller (cosine branch only, keeps state trivial).
inline double normal(Rng& rng) {
  const double u1 = 1.0 - uniform_real(rng);  // (0, 1]
  const double u2 = uniform_real(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

// Index sampled proportionally to non-negative weights. Zero-total is the
// caller's bug; the last positive weight absorbs rounding slack.
inline std::size_t weighted_index(Rng& rng, std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  const double x = uniform_real(rng) * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    acc += weights[i];
    last_positive = i;
    if (x < acc) return i;
  }
  return last_positive;
}

}  // namespace tempnet
