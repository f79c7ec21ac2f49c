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
#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "fft.hpp"
#include "frequency_sets.hpp"
#include "json.hpp"
#include "rng.hpp"

namespace orlicz {

using Complex = std::complex<double>;

/// Finite Fourier sum f(x) = sum_n a_n e^{2 pi i n x} on the period-1 torus.
class TrigPolynomial {
 public:
  TrigPolynomial() = default;

  /// sum over S of c e^{2 pi i n x}.
  static TrigPolynomial flat(const FrequencySet& s, Complex c) {
    TrigPolynomial f;
    for (std::int64_t n : s.elems()) f.coeffs_[n] = c;
    return f;
  }

  void set_coeff(std::int64_t n, Complex a) {
    if (a == Complex{0.0, 0.0}) coeffs_.erase(n);
    else coeffs_[n] = a;
  }

  Complex coeff(std::int64_t n) const {
    const auto it = coeffs_.find(n);
    return it == coeffs_.end() ? Complex{0.0, 0.0} : it->second;
  }

  const std::map<std::int64_t, Complex>& coeffs() const { return coeffs_; }
  bool zero() const { return coeffs_.empty(); }

  std::int64_t max_abs_freq() const {
    std::int64_t m = 0;
    for (const auto& [n, a] : coeffs_) m = std::max(m, n < 0 ? -n : n);
    return m;
  }

  double coeff_l2() const {
    double s = 0.0;
    for (const auto& [n, a] : coeffs_) s += std::norm(a);
    return std::sqrt(s);
  }

  TrigPolynomial& operator*=(Complex c) {
    if (c == Complex{0.0, 0.0}) {
      coeffs_.clear();
      return *this;
    }
    for (auto& [n, a] : coeffs_) a *= c;
    return *this;
  }

  TrigPolynomial& operator+=(const TrigPolynomial& g) {
    for (const auto& [n, a] : g.coeffs_) {
      const Complex s = coeff(n) + a;
      set_coeff(n, s);
    }
    return *this;
  }

  friend TrigPolynomial operator+(TrigPolynomial f, const TrigPolynomial& g) {
    f += g;
    return f;
  }
  friend TrigPolynomial operator*(Complex c, TrigPolynomial f) {
    f *= c;
    return f;
  }

 private:
  std::map<std::int64_t, Complex> coeffs_;
};

/// Samples of a function at x_k = k/M on a power-of-two grid.
struct GridFunction {
  std::vector<Complex> samples;
  std::size_t grid_size = 0;

  GridFunction() = default;
  GridFunction(std::vector<Complex> s) : samples(std::move(s)), grid_size(samples.size()) {
    if (!is_pow2(grid_size)) throw std::invalid_argument("GridFunction: size must be a power of two");
  }
};

/// Smallest power-of-two grid meeting the default oversampling policy
/// max(4096, 8 max|n|). Phi(|f|) is not band-limited, so the modular
/// quadrature oversamples well beyond the Nyquist bound.
inline std::size_t default_grid_size(std::int64_t max_abs_freq) {
  std::size_t m = 4096;
  const std::size_t need = static_cast<std::size_t>(8 * std::max<std::int64_t>(max_abs_freq, 1));
  while (m < need) m <<= 1;
  return m;
}

/// Evaluates f on the M-point grid by zero-padded inverse FFT; exact to
/// machine precision for band-limited f. Requires M >= 2 max|n| + 2.
inline GridFunction evaluate_grid(const TrigPolynomial& f, std::size_t m) {
  if (!is_pow2(m)) throw std::invalid_argument("evaluate_grid: M must be a power of two");
  const std::int64_t b = f.max_abs_freq();
  if (static_cast<std::int64_t>(m) < 2 * b + 2)
    throw std::invalid_argument("evaluate_grid: grid undersized for bandwidth");
  std::vector<Complex> buf(m, Complex{0.0, 0.0});
  const auto mm = static_cast<std::int64_t>(m);
  for (const auto& [n, a] : f.coeffs()) buf[static_cast<std::size_t>(((n % mm) + mm) % mm)] += a;
  fft_inplace(buf, /*inverse=*/true);
  return GridFunction(std::move(buf));
}

/// Fejer kernel K_N(x) = sum_{|n| <= N} (1 - |n|/N) e^{2 pi i n x}; the
/// coefficient at |n| = N vanishes, leaving exactly 2N-1 nonzero terms.
inline TrigPolynomial fejer_kernel(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("fejer_kernel: need N >= 1");
  TrigPolynomial k;
  for (std::int64_t j = -(n - 1); j <= n - 1; ++j) {
    const double c = 1.0 - static_cast<double>(j < 0 ? -j : j) / static_cast<double>(n);
    k.set_coeff(j, Complex{c, 0.0});
  }
  return k;
}

/// Exact L^{2n} norm for even exponents 2n in {2,4,6,8}: |f|^2 has the
/// autocorrelation coefficients of f, and integrating (|f|^2)^n picks the
/// zero mode of its n-fold convolution. Exact up to floating point, no grid.
inline double lp_norm_even_exact(const TrigPolynomial& f, int two_n) {
  if (two_n != 2 && two_n != 4 && two_n != 6 && two_n != 8)
    throw std::invalid_argument("lp_norm_even_exact: exponent must be in {2,4,6,8}");
  if (f.zero()) return 0.0;
  const int half = two_n / 2;
  const std::int64_t b = f.max_abs_freq();
  if (b > 200'000 || (2 * b + 1) > 2'000'000 / half)
    throw std::length_error("lp_norm_even_exact: coefficient support too large");

  // Autocorrelation c_m = sum_n a_n conj(a_{n-m}), m in [-2b, 2b].
  const std::size_t width = static_cast<std::size_t>(2 * b + 1);
  std::vector<Complex> a(width, Complex{0.0, 0.0});
  for (const auto& [n, v] : f.coeffs()) a[static_cast<std::size_t>(n + b)] = v;
  const std::size_t cw = 2 * width - 1;
  std::vector<Complex> c(cw, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < width; ++i) {
    if (a[i] == Complex{0.0, 0.0}) continue;
    for (std::size_t j = 0; j < width; ++j)
      c[i + (width - 1) - j] += a[i] * std::conj(a[j]);
  }

  // n-fold convolution of c; the middle entry of the result is the integral.
  std::vector<Complex> acc = c;
  for (int k = 1; k < half; ++k) {
    std::vector<Complex> next(acc.size() + cw - 1, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < acc.size(); ++i) {
      if (acc[i] == Complex{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < cw; ++j) next[i + j] += acc[i] * c[j];
    }
    acc.swap(next);
  }
  const double integral = std::max(0.0, acc[(acc.size() - 1) / 2].real());
  return std::pow(integral, 1.0 / static_cast<double>(two_n));
}

/// Random polynomial with `terms` distinct frequencies in [-max_freq, max_freq]
/// and complex Gaussian amplitudes, optionally normalized to unit coefficient l2.
inline TrigPolynomial random_trig_poly(Rng& rng, std::int64_t max_freq, std::size_t terms,
                                       bool unit_l2 = true) {
  const std::uint64_t span = static_cast<std::uint64_t>(2 * max_freq + 1);
  if (terms > span) terms = span;
  TrigPolynomial f;
  std::size_t placed = 0;
  while (placed < terms) {
    const std::int64_t n = static_cast<std::int64_t>(rng.below(span)) - max_freq;
    if (f.coeff(n) != Complex{0.0, 0.0}) continue;
    const double re = rng.gaussian();
    const double im = rng.gaussian();
    if (re == 0.0 && im == 0.0) continue;
    f.set_coeff(n, Complex{re, im});
    ++placed;
  }
  if (unit_l2) {
    const double l2 = f.coeff_l2();
    if (l2 > 0.0) f *= Complex{1.0 / l2, 0.0};
  }
  return f;
}

// JSON: [[n, re, im], ...] sorted by frequency.
inline void to_json(nlohmann::json& j, const TrigPolynomial& f) {
  j = nlohmann::json::array();
  for (const auto& [n, a] : f.coeffs()) j.push_back({n, a.real(), a.imag()});
}

inline void from_json(const nlohmann::json& j, TrigPolynomial& f) {
  f = TrigPolynomial{};
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != 3)
      throw std::invalid_argument("TrigPolynomial: rows must be [n, re, im]");
    f.set_coeff(row[0].get<std::int64_t>(),
                Complex{row[1].get<double>(), row[2].get<double>()});
  }
}

inline void write_grid_csv(std::ostream& os, const GridFunction& g) {
  os << "k,x,re,im,abs\n";
  char line[160];
  for (std::size_t k = 0; k < g.grid_size; ++k) {
    const double x = static_cast<double>(k) / static_cast<double>(g.grid_size);
    std::snprintf(line, sizeof(line), "%zu,%.17g,%.17g,%.17g,%.17g\n", k, x,
                  g.samples[k].real(), g.samples[k].imag(), std::abs(g.samples[k]));
    os << line;
  }
}

}  // namespace orlicz
