#pragma once

// Keyed random streams. Every consumer derives its own generator from
// (seed, stream tag, iteration, particle), so draws never depend on the order
// in which particles are evaluated -- a requirement for results that do not
// change with the worker count.

#include <cstdint>

#include "lbd/math.hpp"

namespace lbd {

/// splitmix64: one 64-bit word of state, passes the usual batteries.
/// Cheap enough to construct per particle per iteration.
struct SplitMix64 {
  using result_type = std::uint64_t;
  std::uint64_t state = 0;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~std::uint64_t{0}; }

  result_type operator()() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
};

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}
}  // namespace detail

/// Derives an independent generator for the given key words. Each word is run
/// through the splitmix finalizer, so nearby keys land far apart.
inline SplitMix64 keyed_stream(std::uint64_t seed, std::uint64_t stream, std::uint64_t a = 0,
                               std::uint64_t b = 0) {
  std::uint64_t s = detail::mix64(seed + 0x9E3779B97F4A7C15ull);
  s = detail::mix64(s ^ detail::mix64(stream + 0xD1B54A32D192ED03ull));
  s = detail::mix64(s ^ detail::mix64(a + 0x8CB92BA72F3D8DD7ull));
  s = detail::mix64(s ^ detail::mix64(b + 0xEB44ACCAB455D165ull));
  return SplitMix64{s};
}

/// Uniform on the open interval (0, 1); endpoints are unreachable.
inline double uniform_open(SplitMix64& g) {
  return (static_cast<double>(g() >> 11) + 0.5) * 0x1p-53;
}

/// Uniform integer in [0, n). Multiply-shift; bias is O(n / 2^64).
inline std::uint64_t uniform_below(SplitMix64& g, std::uint64_t n) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(g()) * n) >> 64);
}

/// Standard normal by quantile inversion; consumes exactly one draw.
inline double standard_normal(SplitMix64& g) { return normal_quantile(uniform_open(g)); }

}  // namespace lbd
