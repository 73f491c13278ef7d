#pragma once

#include <cstdint>
#include <random>

namespace ter {

using Rng = std::mt19937_64;

// Derives an independent generator from a parent stream. Streams spawned in a
// fixed order from a seeded parent are themselves deterministic.
inline Rng spawn_stream(Rng& parent) { return Rng(parent()); }

inline double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Uniform integer on [lo, hi], both ends inclusive.
inline std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace ter
