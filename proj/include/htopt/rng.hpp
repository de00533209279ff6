#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace htopt {

// Deterministic, splittable pseudorandom source.
//
// The project uses one fixed generator (std::mt19937_64, whose output
// sequence is pinned by the C++ standard) plus a splitmix64 mixer for
// deriving stream seeds, so every trace is bit-reproducible across runs
// and platforms. Uniform and normal variates are produced from raw
// 64-bit words by fixed formulas rather than through the
// implementation-defined std::*_distribution adapters.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream), engine_(mix(seed, stream)) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of precision.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1): rejects exact zeros (probability 2^-53 per draw).
  double uniform_open() {
    double u;
    do {
      u = uniform();
    } while (u == 0.0);
    return u;
  }

  // Standard normal via Box-Muller. Two uniforms per draw, no cached
  // spare, so the consumed-word count per call is fixed.
  double normal() {
    double u1 = uniform_open();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  bool bernoulli(double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("bernoulli: p outside [0,1]");
    return uniform() < p;
  }

  // Child source with a distinct stream id; statistically independent of
  // the parent and of siblings with different child indices.
  RandomSource split(std::uint64_t child) const {
    std::uint64_t child_stream = mix(stream_, child + 1);
    return RandomSource(seed_, child_stream);
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ splitmix64(b));
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

}  // namespace htopt
