// SPDX-License-Identifier: MIT
//
// Seeded, splittable random number generator plus the exact-arithmetic
// samplers the simulators need. The core is xoshiro256++ seeded through a
// SplitMix64 chain; substreams are derived by hashing (seed, index) so that
// user k's stream does not depend on how many other users exist or on how
// much randomness they consumed. Every mapping from raw bits to variates is
// spelled out here (none of the std::*_distribution adaptors, whose output
// is implementation-defined) so identical seeds reproduce byte-identical
// traces on every platform and toolchain.
#pragma once

#include <cmath>
#include <cstdint>

namespace mrt {

// One step of the SplitMix64 sequence; also usable as a standalone mixer.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64_next(sm);
  }

  // Stable substream seed for (seed, index); index 0 is NOT the root stream.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t sm = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    return splitmix64_next(sm);
  }
  // Two-level derivation: per-entity substream `index`, then a role channel
  // (`stream`) inside it, e.g. stream 0 = session shape, stream 1 = budgets.
  static std::uint64_t derive2(std::uint64_t seed, std::uint64_t index,
                               std::uint64_t stream) {
    return derive(derive(seed, index), stream);
  }
  static Rng substream(std::uint64_t seed, std::uint64_t index) {
    return Rng(derive(seed, index));
  }

  // xoshiro256++ core.
  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). Plain modulo: the bias for the n << 2^64 used
  // here (cycle lengths, phase offsets) is far below anything observable.
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  double uniform(double a, double b) { return a + (b - a) * next_double(); }

  // Mean-parameterized exponential; u in [0,1) keeps the log argument in
  // (0,1] so the result is finite and >= 0.
  double exponential(double mean) {
    return -mean * std::log(1.0 - next_double());
  }

  // Box-Muller with the second variate cached, so draws come in a fixed,
  // reproducible order.
  double normal(double mean, double sd) {
    if (have_spare_) {
      have_spare_ = false;
      return mean + sd * spare_;
    }
    double u1 = 1.0 - next_double();  // (0, 1]
    double u2 = next_double();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return mean + sd * r * std::cos(theta);
  }

  // Pareto with tail exponent p and minimum `scale`:
  // P(X > x) = (scale/x)^p for x >= scale.
  double pareto(double p, double scale) {
    return scale * std::pow(1.0 - next_double(), -1.0 / p);
  }

  // Integer-valued heavy tail: ceiling of the Pareto variate (>= 1 when
  // scale <= 1; always >= ceil(scale)).
  std::uint64_t pareto_integer(double p, double scale) {
    return static_cast<std::uint64_t>(std::ceil(pareto(p, scale)));
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4]{};
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace mrt
