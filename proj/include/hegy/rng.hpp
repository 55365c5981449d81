#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace hegy {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Independent stream for (root seed, stream index). Streams are stable
/// across platforms and thread counts, so replicate r always sees the
/// same draws no matter how work is scheduled.
inline Rng make_stream(std::uint64_t root_seed, std::uint64_t stream) {
  return Rng(splitmix64(splitmix64(root_seed) ^ splitmix64(stream + 0x51ED2701ULL)));
}

/// Uniform on [0, 1). Implemented on top of the raw 64-bit output so the
/// value sequence does not depend on the standard library.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller; stateless, two uniforms per draw.
inline double standard_normal(Rng& rng) {
  const double u1 = static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

/// Exact uniform index in [0, n) (Lemire with rejection).
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  const std::uint64_t range = static_cast<std::uint64_t>(n);
  std::uint64_t x = rng();
  __uint128_t m = static_cast<__uint128_t>(x) * range;
  std::uint64_t low = static_cast<std::uint64_t>(m);
  if (low < range) {
    const std::uint64_t threshold = (0 - range) % range;
    while (low < threshold) {
      x = rng();
      m = static_cast<__uint128_t>(x) * range;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::size_t>(m >> 64);
}

}  // namespace hegy
