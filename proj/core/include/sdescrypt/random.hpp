#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace sdescrypt {

using Rng = std::mt19937_64;

/// One step of the splitmix64 output function.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives a child seed from a master seed and a path of counters, e.g.
/// (master, stream, length index, message, run). Each component is folded in
/// with splitmix64, so distinct paths give statistically independent seeds and
/// any single run can be regenerated without replaying the others.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> path) {
  std::uint64_t state = splitmix64(master);
  for (std::uint64_t component : path) {
    state = splitmix64(state ^ splitmix64(component + 0x632be59bd9b4e019ULL));
  }
  return state;
}

/// Uniform integer in [0, bound). Uses rejection on the raw 64-bit engine
/// output so results do not depend on the standard library's distributions.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = Rng::max() - (Rng::max() % bound + 1) % bound;
  std::uint64_t draw = rng();
  while (draw > limit) draw = rng();
  return draw % bound;
}

/// Uniform double in [0, 1) with 53 bits of resolution.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace sdescrypt
