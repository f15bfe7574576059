#pragma once

// Reproducible randomness. Engines are std::mt19937_64, whose output
// sequence is fixed by the C++ standard; per-task seeds come from SplitMix64
// and bounded draws use rejection sampling, so results do not depend on the
// standard library's distribution implementations.

#include <cstdint>
#include <random>

namespace ncfinfer {

using Engine = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Seed for task `index` of a run seeded with `seed`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ull));
}

/// Uniform integer in [0, bound). bound must be positive.
inline std::uint64_t uniform_below(Engine& engine, std::uint64_t bound) {
  if ((bound & (bound - 1)) == 0) {
    return bound == 1 ? 0 : engine() >> (64 - __builtin_ctzll(bound));
  }
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do {
    x = engine();
  } while (x >= limit);
  return x % bound;
}

}  // namespace ncfinfer
