#pragma once

#include <cstdint>
#include <random>

namespace sonnetssl {

// std::mt19937_64 is specified bit-exactly by the standard; the distribution
// classes are not, so the helpers below derive draws directly from raw output.
using Rng = std::mt19937_64;

// Uniform in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n). n must be positive.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % n;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Mixes a master seed with any number of cell coordinates.
template <typename... Parts>
std::uint64_t derive_seed(std::uint64_t master, Parts... parts) {
  std::uint64_t h = splitmix64(master);
  ((h = splitmix64(h ^ static_cast<std::uint64_t>(parts))), ...);
  return h;
}

}  // namespace sonnetssl
