// Copyright 2026 The orlicz-lambda Authors
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

#pragma once

#include <cmath>
#include <cstdint>

namespace orlicz {

// Deterministic, platform-independent randomness. Standard distributions
// (std::uniform_real_distribution etc.) are implementation-defined, so all
// variate generation here is spelled out explicitly; reports produced with a
// given seed must be byte-identical everywhere.

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stable derivation of child seeds, e.g. mix_seed(master, r, trial).
constexpr std::uint64_t mix_seed(std::uint64_t a) { return splitmix64(a); }
template <typename... Rest>
constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, Rest... rest) {
  return mix_seed(splitmix64(a ^ splitmix64(b + 0x632be59bd9b4e019ULL)), rest...);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(splitmix64(seed ^ 0x7f4a7c15ULL)) {}

  std::uint64_t next_u64() {
    state_ = splitmix64(state_);
    return state_;
  }

  // Uniform in [0, 1) with 53 significant bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Modulo bias is < 2^-40 for the set sizes used here.
    return next_u64() % n;
  }

  // Box-Muller; spelled out so the stream is platform-stable.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0x1.0p-60) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace orlicz
