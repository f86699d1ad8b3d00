#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace tempsel {

using Rng = std::mt19937_64;

// splitmix64 finalizer; good avalanche for seed derivation.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministically derive a sub-seed from (master, index, stage tag) so that
// repetitions and pipeline stages get independent, reproducible streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index,
                                 std::string_view tag) {
  std::uint64_t h = mix64(master);
  h = mix64(h ^ index);
  for (char c : tag) h = mix64(h ^ static_cast<std::uint64_t>(static_cast<unsigned char>(c)));
  return h;
}

inline double draw_normal(Rng& rng) {
  std::normal_distribution<double> d;
  return d(rng);
}

inline double draw_uniform(Rng& rng) {
  std::uniform_real_distribution<double> d(0.0, 1.0);
  return d(rng);
}

}  // namespace tempsel
