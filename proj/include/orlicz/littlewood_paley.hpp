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
#include <stdexcept>
#include <vector>

#include "luxemburg.hpp"
#include "rng.hpp"
#include "trig_polynomial.hpp"

namespace orlicz {

/// Smooth plateau bump: 1 on [-1, 1], 0 outside (-2, 2), with the standard
/// exp(-1/t) mollifier on the transition. Even and nonincreasing in |x|.
inline double bump_psi(double x) {
  const double ax = std::abs(x);
  if (ax <= 1.0) return 1.0;
  if (ax >= 2.0) return 0.0;
  const auto g = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
  const double t = 2.0 - ax;  // in (0, 1)
  return g(t) / (g(t) + g(1.0 - t));
}

/// Dyadic partition pieces: psi_j = psi(xi/2^{j+1}) - psi(xi/2^j) for j >= 1,
/// with the 0th block absorbing the low frequencies, psi_0(xi) = psi(xi/2).
/// This makes the pieces telescope exactly, sum_{j <= J} psi_j(xi) =
/// psi(xi / 2^{J+1}), so block sums reconstruct band-limited functions.
/// For j >= 1 the support is 2^j <= |xi| <= 2^{j+2}.
inline double psi_j(int j, double xi) {
  if (j < 0) throw std::invalid_argument("psi_j: need j >= 0");
  if (j == 0) return bump_psi(xi / 2.0);
  return bump_psi(xi / std::ldexp(1.0, j + 1)) - bump_psi(xi / std::ldexp(1.0, j));
}

/// Number of blocks needed to cover f's spectrum: all omitted blocks vanish
/// on it.
inline int lp_j_max(const TrigPolynomial& f) {
  const std::int64_t b = f.max_abs_freq();
  if (b <= 1) return 1;
  return static_cast<int>(std::ceil(std::log2(static_cast<double>(b)))) + 1;
}

/// Block projection: multiply each coefficient by psi_j(n).
inline TrigPolynomial project(const TrigPolynomial& f, int j) {
  TrigPolynomial out;
  for (const auto& [n, a] : f.coeffs()) {
    const double w = psi_j(j, static_cast<double>(n));
    if (w != 0.0) out.set_coeff(n, a * w);
  }
  return out;
}

/// Pointwise l2 sum of the block projections on a shared grid.
inline GridFunction square_function(const TrigPolynomial& f, std::size_t m = 0) {
  if (f.zero()) throw std::invalid_argument("square_function: zero polynomial");
  if (m == 0) m = default_grid_size(f.max_abs_freq());
  std::vector<double> acc(m, 0.0);
  const int jmax = lp_j_max(f);
  for (int j = 0; j <= jmax; ++j) {
    const auto pj = project(f, j);
    if (pj.zero()) continue;
    const auto g = evaluate_grid(pj, m);
    for (std::size_t k = 0; k < m; ++k) acc[k] += std::norm(g.samples[k]);
  }
  GridFunction out;
  out.samples.resize(m);
  out.grid_size = m;
  for (std::size_t k = 0; k < m; ++k) out.samples[k] = Complex{std::sqrt(acc[k]), 0.0};
  return out;
}

/// ||(sum_j |P_j f|^2)^{1/2}||_Phi / ||f||_Phi.
inline double square_function_ratio(const YoungFunction& phi, const TrigPolynomial& f,
                                    std::size_t m = 0) {
  if (f.zero()) throw std::invalid_argument("square_function_ratio: zero polynomial");
  if (m == 0) m = default_grid_size(f.max_abs_freq());
  const double nf = luxemburg_norm(phi, f, m).value;
  const double nsf = luxemburg_norm_grid(phi, square_function(f, m)).value;
  return nsf / nf;
}

/// r_j(t) = sign(sin(2^{j+1} pi t)); zero only on the dyadic null set.
inline int rademacher(int j, double t) {
  const double s = std::sin(std::ldexp(1.0, j + 1) * 3.14159265358979323846264338327950288 * t);
  return s > 0.0 ? 1 : (s < 0.0 ? -1 : 0);
}

struct RandomizedNormStats {
  double max = 0.0;
  double mean = 0.0;
  std::vector<double> values;
};

/// || sum_j P_j f r_j(t) ||_Phi over sampled non-dyadic t. The coefficient of
/// frequency n becomes a_n sum_j psi_j(n) r_j(t), so each t needs one grid
/// evaluation. Dyadic t (any vanishing r_j) is re-sampled.
inline RandomizedNormStats rademacher_randomized_norm(const YoungFunction& phi,
                                                      const TrigPolynomial& f,
                                                      int t_samples, std::uint64_t seed,
                                                      std::size_t m = 0) {
  if (t_samples < 1) throw std::invalid_argument("rademacher_randomized_norm: t_samples >= 1");
  if (f.zero()) throw std::invalid_argument("rademacher_randomized_norm: zero polynomial");
  if (m == 0) m = default_grid_size(f.max_abs_freq());
  const int jmax = lp_j_max(f);
  Rng rng(seed);
  RandomizedNormStats stats;
  stats.values.reserve(static_cast<std::size_t>(t_samples));
  for (int s = 0; s < t_samples; ++s) {
    double t;
    std::vector<int> signs(static_cast<std::size_t>(jmax) + 1);
    for (;;) {
      t = rng.uniform();
      bool ok = true;
      for (int j = 0; j <= jmax; ++j) {
        signs[static_cast<std::size_t>(j)] = rademacher(j, t);
        if (signs[static_cast<std::size_t>(j)] == 0) {
          ok = false;
          break;
        }
      }
      if (ok) break;
    }
    TrigPolynomial g;
    for (const auto& [n, a] : f.coeffs()) {
      double w = 0.0;
      for (int j = 0; j <= jmax; ++j)
        w += psi_j(j, static_cast<double>(n)) * signs[static_cast<std::size_t>(j)];
      if (w != 0.0) g.set_coeff(n, a * w);
    }
    const double v = g.zero() ? 0.0 : luxemburg_norm(phi, g, m).value;
    stats.values.push_back(v);
    stats.max = std::max(stats.max, v);
    stats.mean += v;
  }
  stats.mean /= static_cast<double>(t_samples);
  return stats;
}

struct KhintchineResult {
  double lhs = 0.0;  // (average over the t-grid of |sum c_j r_j(t)|^p)^{1/p}
  double rhs = 0.0;  // (sum c_j^2)^{1/2}
};

/// Khintchine comparison on a midpoint t-grid. When t_grid is a power of two
/// with at least 2^{#coeffs} points, every sign pattern appears equally often
/// and the average is the exact expectation.
inline KhintchineResult khintchine_check(const std::vector<double>& coeff, double p,
                                         std::size_t t_grid) {
  if (!(p >= 1.0)) throw std::invalid_argument("khintchine_check: need p >= 1");
  if (coeff.empty() || t_grid < 2)
    throw std::invalid_argument("khintchine_check: need coefficients and a t-grid");
  double acc = 0.0;
  for (std::size_t k = 0; k < t_grid; ++k) {
    const double t = (static_cast<double>(k) + 0.5) / static_cast<double>(t_grid);
    double sum = 0.0;
    for (std::size_t j = 0; j < coeff.size(); ++j)
      sum += coeff[j] * rademacher(static_cast<int>(j), t);
    acc += std::pow(std::abs(sum), p);
  }
  KhintchineResult out;
  out.lhs = std::pow(acc / static_cast<double>(t_grid), 1.0 / p);
  double sq = 0.0;
  for (double c : coeff) sq += c * c;
  out.rhs = std::sqrt(sq);
  return out;
}

}  // namespace orlicz
