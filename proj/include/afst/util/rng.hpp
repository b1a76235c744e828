#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

namespace afst::util {

// Mixes a base seed with a stream id so that independent RNG streams
// (rollout workers, scenario samplers, weight init) never overlap.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  return Rng(mix_seed(seed, stream));
}

// Uniform in [0, 1). 53-bit resolution, implementation independent
// (std::uniform_real_distribution is not portable across libraries).
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform in [lo, hi).
inline double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

inline int uniform_int(Rng& rng, int lo_inclusive, int hi_inclusive) {
  const auto span = static_cast<std::uint64_t>(hi_inclusive - lo_inclusive) + 1;
  return lo_inclusive + static_cast<int>(rng() % span);
}

// One Box-Muller pair of standard normals. Always consumes exactly two
// uniforms, which keeps sample streams reproducible across call sites.
inline std::pair<double, double> normal_pair(Rng& rng) {
  const double u1 = static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
  const double u2 = uniform01(rng);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

inline double normal(Rng& rng) { return normal_pair(rng).first; }

}  // namespace afst::util
