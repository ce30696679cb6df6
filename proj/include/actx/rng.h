// Copyright 2026 The actx Authors
//
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

#ifndef ACTX_RNG_H_
#define ACTX_RNG_H_

#include <cmath>
#include <cstdint>
#include <numbers>

namespace actx {

// SplitMix64 (Steele, Lea & Flood 2014). Every derived quantity below is
// computed with fixed integer/double arithmetic, so streams are identical
// across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t NextU64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Independent child stream; the parent advances by one draw.
  Rng Split() { return Rng(NextU64() ^ 0x6A09E667F3BCC909ull); }

  // Child stream keyed by `key` without advancing the parent.
  Rng Fork(std::uint64_t key) const {
    Rng r(state_ ^ (key * 0xD1B54A32D192ED03ull + 0x8CB92BA72F3D8DD7ull));
    r.NextU64();
    return r;
  }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [0, n), n >= 1, by rejection (no modulo bias).
  std::uint64_t Below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v = NextU64();
    while (v >= limit) v = NextU64();
    return v % n;
  }

  // Standard normal via Box-Muller (one value per call).
  double Normal() {
    double u1 = Uniform();
    while (u1 <= 0.0) u1 = Uniform();
    const double u2 = Uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace actx

#endif  // ACTX_RNG_H_
