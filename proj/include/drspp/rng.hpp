// Copyright 2026 The drspp Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DRSPP_RNG_HPP
#define DRSPP_RNG_HPP

#include <cmath>
#include <cstdint>

namespace drspp {

// Counter-based pseudo-random generator (SplitMix64 output function over a
// hashed (seed, stream) base).  Every draw is a pure function of
// (seed, stream, counter), so independent substreams can be consumed in any
// order without affecting each other.  Substreams are derived by hashing a
// key into the stream id; the experiment pipeline gives each arc its own
// substream so per-arc sampling is order-independent.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : base_(mix64(seed ^ mix64(stream + kStreamSalt))), counter_(0) {}

  // Derives an independent generator; drawing from the child never advances
  // the parent.
  Rng substream(std::uint64_t key) const {
    Rng child(0);
    child.base_ = mix64(base_ ^ mix64(key + kSubstreamSalt));
    child.counter_ = 0;
    return child;
  }

  std::uint64_t next_u64() { return mix64(base_ + kGolden * ++counter_); }

  // Uniform on [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1); rejects the measure-zero endpoint.
  double next_unit_open() {
    double u;
    do {
      u = next_unit();
    } while (u == 0.0);
    return u;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  double uniform_open(double lo, double hi) {
    return lo + (hi - lo) * next_unit_open();
  }

  // Standard normal via Box-Muller (two uniforms per draw).
  double normal() {
    const double u1 = next_unit_open();
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  // Gamma(shape, 1) by Marsaglia-Tsang, with the u^(1/shape) boost below
  // shape 1.
  double gamma(double shape) {
    if (shape < 1.0) {
      const double boost = std::exp(std::log(next_unit_open()) / shape);
      return gamma(shape + 1.0) * boost;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = next_unit_open();
      if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) {
        return d * v;
      }
    }
  }

  double beta(double a, double b) {
    const double ga = gamma(a);
    const double gb = gamma(b);
    const double sum = ga + gb;
    if (sum <= 0.0) {
      // Both shapes tiny enough that the gamma draws underflowed; the limit
      // law is Bernoulli(a / (a + b)) on {0, 1}.
      return next_unit() < a / (a + b) ? 1.0 : 0.0;
    }
    return ga / sum;
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
  static constexpr std::uint64_t kStreamSalt = 0xA02BDBF7BB3C0A7ull;
  static constexpr std::uint64_t kSubstreamSalt = 0xD2B74407B1CE6E93ull;

  static std::uint64_t mix64(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t base_;
  std::uint64_t counter_;
};

}  // namespace drspp

#endif  // DRSPP_RNG_HPP
