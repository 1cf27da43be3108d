#pragma once

#include <cmath>
#include <cstdint>

#include "common.hpp"

namespace heavytail {

// Counter-based deterministic stream: each (seed, index) pair opens an
// independent substream, so sample i is reproducible regardless of how work
// is split across threads.  Core generator is splitmix64 seeded by a mix of
// seed and index.
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t index) {
    state_ = mix(seed + 0x9e3779b97f4a7c15ULL * (index + 1));
    state_ = mix(state_ ^ (index * 0xbf58476d1ce4e5b9ULL + 0x94d049bb133111ebULL));
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  // uniform in (0,1); never returns 0 or 1
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
  }

  // standard normal via Box-Muller (cosine branch)
  double gaussian() {
    double u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  double exponential() { return -std::log(uniform()); }

  // Gamma(shape, 1) via Marsaglia-Tsang; shapes < 1 boosted through
  // G(a) = G(a+1) * U^{1/a}.
  double gamma(double shape) {
    if (!(shape > 0)) throw param_error("gamma: shape must be positive");
    if (shape < 1.0) {
      double u = uniform();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = gaussian();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  // chi(dof): sqrt of chi-square
  double chi(double dof) { return std::sqrt(2.0 * gamma(0.5 * dof)); }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_;
};

}  // namespace heavytail
