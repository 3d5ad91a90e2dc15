#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace hlawka {

// Counter-based deterministic RNG. Every sample index gets its own stream
// derived from (seed, index), so a loop over indices can be partitioned
// across threads without changing the values drawn. SplitMix64 generator,
// Box-Muller for normals; no hidden state beyond the 64-bit counter, so
// streams are reproducible bit-for-bit on any platform with IEEE doubles.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream) noexcept
      : state_(mix(seed + 0x9E3779B97F4A7C15ULL * (stream + 1))) {}

  std::uint64_t next_u64() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits of mantissa.
  double uniform01() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * uniform01();
  }

  // Standard normal via Box-Muller (cosine branch only).
  double normal() noexcept {
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  // Heavy-tailed draw: normal scaled by a log-normal factor. Probes
  // large dynamic ranges without losing finiteness.
  double heavy_tail() noexcept {
    const double n = normal();
    return n * std::exp(normal());
  }

 private:
  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace hlawka
