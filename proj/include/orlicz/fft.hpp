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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace orlicz {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

namespace detail {

// Twiddle tables are cached per size; the cache is written once per size and
// only read afterwards, so a thread_local copy keeps the hot path lock-free.
inline const std::vector<std::complex<double>>& twiddles(std::size_t n, bool inverse) {
  thread_local std::vector<std::vector<std::complex<double>>> fwd(64), inv(64);
  std::size_t log2n = 0;
  while ((std::size_t{1} << log2n) < n) ++log2n;
  auto& slot = inverse ? inv[log2n] : fwd[log2n];
  if (slot.empty()) {
    slot.resize(n / 2);
    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t k = 0; k < n / 2; ++k) {
      const double a = sign * 2.0 * 3.14159265358979323846264338327950288 *
                       static_cast<double>(k) / static_cast<double>(n);
      slot[k] = {std::cos(a), std::sin(a)};
    }
  }
  return slot;
}

}  // namespace detail

// In-place iterative radix-2 transform, unnormalized.
// forward: X_k = sum_j x_j e^{-2 pi i jk/N}; inverse uses e^{+2 pi i jk/N}.
inline void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  if (!is_pow2(n)) throw std::invalid_argument("fft: size must be a power of two");
  if (n == 1) return;

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  const auto& tw = detail::twiddles(n, inverse);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t step = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> w = tw[k * step];
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
}

}  // namespace orlicz
