#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace edo {

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for one run: a pure function of the master seed and the run's
/// coordinates (experiment cell fields, repetition index).
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> coords) noexcept {
  std::uint64_t h = mix64(master);
  for (std::uint64_t c : coords) h = mix64(h ^ mix64(c + 0x632be59bd9b4e019ULL));
  return h;
}

/// Uniform integer in [0, bound).
inline int uniform_below(Rng& rng, int bound) {
  return std::uniform_int_distribution<int>(0, bound - 1)(rng);
}

}  // namespace edo
