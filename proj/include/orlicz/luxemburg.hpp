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
#include <span>
#include <stdexcept>
#include <vector>

#include "trig_polynomial.hpp"
#include "young_function.hpp"
#include "young_ops.hpp"

namespace orlicz {

/// Luxemburg norm value together with convergence diagnostics. The infimum is
/// attained with modular 1 for finite continuous Phi, so modular_at_value
/// sits in [1 - 1e-6, 1] whenever value > 0.
struct NormResult {
  double value = 0.0;
  double modular_at_value = 0.0;
  std::size_t grid_size = 0;
  int bisection_iters = 0;
};

/// Mean over the grid of Phi(|g(x_j)| / k).
inline double modular(const YoungFunction& phi, const GridFunction& g, double k) {
  if (!(k > 0.0)) throw std::domain_error("modular: k must be positive");
  double acc = 0.0;
  for (const auto& s : g.samples) acc += phi.eval(std::abs(s) / k);
  return acc / static_cast<double>(g.grid_size);
}

namespace detail {

// Bisection for inf{k : mean Phi(|f|/k) <= 1} given |f| samples. The bracket
// [max/Phi^{-1}(M), max/Phi^{-1}(1)] pins the modular on both sides of 1.
// modular_fn(k) must be the mean modular; it is evaluated ~45 times.
template <typename ModularFn>
NormResult luxemburg_bisect(ModularFn&& modular_fn, double max_abs, double inv_at_1,
                            double inv_at_m, std::size_t grid_size) {
  NormResult res;
  res.grid_size = grid_size;
  if (max_abs == 0.0) return res;
  double hi = max_abs / inv_at_1;
  double lo = max_abs / inv_at_m;
  if (lo > hi) std::swap(lo, hi);
  int iters = 0;
  while ((hi - lo) > 1e-10 * hi && iters < 200) {
    const double mid = std::sqrt(lo * hi);
    if (modular_fn(mid) > 1.0) lo = mid;
    else hi = mid;
    ++iters;
  }
  res.value = hi;
  res.modular_at_value = modular_fn(hi);
  res.bisection_iters = iters;
  return res;
}

}  // namespace detail

/// Luxemburg norm of grid samples: inf{k > 0 : mean Phi(|g|/k) <= 1}.
inline NormResult luxemburg_norm_grid(const YoungFunction& phi, const GridFunction& g) {
  if (!phi.nice()) throw std::invalid_argument("luxemburg_norm: requires a nice Young function");
  double max_abs = 0.0;
  for (const auto& s : g.samples) max_abs = std::max(max_abs, std::abs(s));
  if (max_abs == 0.0) return NormResult{0.0, 0.0, g.grid_size, 0};

  const double inv1 = phi.inverse(1.0);
  const double invm = phi.inverse(static_cast<double>(g.grid_size));

  // Single-power Phi factors out of the mean, making each probe O(1).
  if (phi.pieces().size() == 1) {
    if (const auto* pw = std::get_if<PowerPiece>(&phi.pieces()[0].form)) {
      double mean_pow = 0.0;
      for (const auto& s : g.samples) mean_pow += detail::pow_fast(std::abs(s), pw->p);
      mean_pow = pw->c * mean_pow / static_cast<double>(g.grid_size);
      const double p = pw->p;
      return detail::luxemburg_bisect(
          [&](double k) { return mean_pow / detail::pow_fast(k, p); }, max_abs, inv1, invm,
          g.grid_size);
    }
  }
  return detail::luxemburg_bisect([&](double k) { return modular(phi, g, k); }, max_abs,
                                  inv1, invm, g.grid_size);
}

/// Luxemburg norm of a trigonometric polynomial, sampled on an M-point grid
/// (M = 0 selects the default oversampled size).
inline NormResult luxemburg_norm(const YoungFunction& phi, const TrigPolynomial& f,
                                 std::size_t m = 0) {
  if (f.zero()) return NormResult{};
  if (m == 0) m = default_grid_size(f.max_abs_freq());
  return luxemburg_norm_grid(phi, evaluate_grid(f, m));
}

/// Repeated norms of polynomials with a fixed frequency support and real
/// coefficients on a fixed grid; the workhorse behind the K_Phi ascent.
/// norm() runs one FFT and caches the samples; norm_perturbed() updates them
/// with a unit-character rotation sweep and re-bisects from a warm bracket,
/// avoiding both the FFT and the cold bracket.
class LuxemburgEvaluator {
 public:
  LuxemburgEvaluator(const YoungFunction& phi, std::vector<std::int64_t> freqs,
                     std::size_t grid_size)
      : phi_(&phi), freqs_(std::move(freqs)), m_(grid_size) {
    if (!is_pow2(m_)) throw std::invalid_argument("LuxemburgEvaluator: grid not a power of two");
    for (std::int64_t n : freqs_) {
      if (2 * std::abs(n) + 2 > static_cast<std::int64_t>(m_))
        throw std::invalid_argument("LuxemburgEvaluator: grid undersized");
    }
    if (!phi.nice()) throw std::invalid_argument("LuxemburgEvaluator: requires nice Phi");
    inv1_ = phi.inverse(1.0);
    invm_ = phi.inverse(static_cast<double>(m_));
    if (phi.pieces().size() == 1) {
      if (const auto* pw = std::get_if<PowerPiece>(&phi.pieces()[0].form)) {
        power_c_ = pw->c;
        power_p_ = pw->p;
        is_power_ = true;
      }
    }
    base_.resize(m_);
    scratch_abs_.resize(m_);
  }

  std::size_t grid_size() const { return m_; }
  std::size_t dim() const { return freqs_.size(); }

  double norm(std::span<const double> a) {
    if (a.size() != freqs_.size()) throw std::invalid_argument("coefficient size mismatch");
    std::fill(base_.begin(), base_.end(), Complex{0.0, 0.0});
    const auto mm = static_cast<std::int64_t>(m_);
    for (std::size_t i = 0; i < a.size(); ++i)
      base_[static_cast<std::size_t>(((freqs_[i] % mm) + mm) % mm)] += Complex{a[i], 0.0};
    fft_inplace(base_, /*inverse=*/true);
    double max_abs = 0.0;
    for (std::size_t j = 0; j < m_; ++j) {
      scratch_abs_[j] = std::abs(base_[j]);
      max_abs = std::max(max_abs, scratch_abs_[j]);
    }
    last_ = norm_from_abs(max_abs, 0.0, 0.0);
    return last_.value;
  }

  /// Norm after a[i] += eps, reusing the cached base samples of the last
  /// norm() call. Does not disturb the cache.
  double norm_perturbed(std::size_t i, double eps) {
    const auto mm = static_cast<std::int64_t>(m_);
    const std::int64_t n = ((freqs_[i] % mm) + mm) % mm;
    const double ang = 6.283185307179586476925286766559 * static_cast<double>(n) /
                       static_cast<double>(m_);
    const Complex step{std::cos(ang), std::sin(ang)};
    Complex rot{1.0, 0.0};
    double max_abs = 0.0;
    for (std::size_t j = 0; j < m_; ++j) {
      const double v = std::abs(base_[j] + eps * rot);
      scratch_abs_[j] = v;
      max_abs = std::max(max_abs, v);
      rot *= step;
      if ((j & 511u) == 511u) rot /= std::abs(rot);  // curb drift
    }
    const double slack = std::max(64.0 * std::abs(eps), 1e-7);
    return norm_from_abs(max_abs, last_.value * (1.0 - slack), last_.value * (1.0 + slack))
        .value;
  }

  const NormResult& last() const { return last_; }

 private:
  const YoungFunction* phi_;
  std::vector<std::int64_t> freqs_;
  std::size_t m_;
  double inv1_ = 1.0, invm_ = 1.0;
  bool is_power_ = false;
  double power_c_ = 1.0, power_p_ = 2.0;
  std::vector<Complex> base_;
  std::vector<double> scratch_abs_;
  NormResult last_;

  NormResult norm_from_abs(double max_abs, double warm_lo, double warm_hi) {
    NormResult res;
    res.grid_size = m_;
    if (max_abs == 0.0) return res;
    double mean_pow = 0.0;
    if (is_power_) {
      const double p = power_p_;
      for (std::size_t j = 0; j < m_; ++j) mean_pow += detail::pow_fast(scratch_abs_[j], p);
      mean_pow = power_c_ * mean_pow / static_cast<double>(m_);
    }
    const auto probe = [&](double k) -> double {
      if (is_power_) return mean_pow / detail::pow_fast(k, power_p_);
      double acc = 0.0;
      for (std::size_t j = 0; j < m_; ++j) acc += phi_->eval(scratch_abs_[j] / k);
      return acc / static_cast<double>(m_);
    };

    double lo = max_abs / invm_;
    double hi = max_abs / inv1_;
    if (lo > hi) std::swap(lo, hi);
    if (warm_lo > 0.0 && warm_hi > warm_lo) {
      // Tighten with the warm bracket when it still straddles the root.
      const double wl = std::max(lo, warm_lo);
      const double wh = std::min(hi, warm_hi);
      if (wl < wh && probe(wl) >= 1.0 && probe(wh) <= 1.0) {
        lo = wl;
        hi = wh;
      }
    }
    int iters = 0;
    while ((hi - lo) > 1e-10 * hi && iters < 200) {
      const double mid = std::sqrt(lo * hi);
      if (probe(mid) > 1.0) lo = mid;
      else hi = mid;
      ++iters;
    }
    res.value = hi;
    res.modular_at_value = probe(hi);
    res.bisection_iters = iters;
    return res;
  }
};

/// Orlicz-Hoelder check: lhs = quadrature of |f g|, rhs = 2 ||f||_Phi ||g||_Psi
/// with Psi the numerical conjugate. The classical constant 2 realizes the
/// comparison with a concrete constant, so lhs <= rhs.
struct HolderResult {
  double lhs = 0.0;
  double rhs = 0.0;
};

inline HolderResult holder_check(const TrigPolynomial& f, const TrigPolynomial& g,
                                 const YoungFunction& phi, const YoungFunction& psi) {
  const std::size_t m = default_grid_size(f.max_abs_freq() + g.max_abs_freq());
  const auto fg = evaluate_grid(f, m);
  const auto gg = evaluate_grid(g, m);
  double lhs = 0.0;
  for (std::size_t j = 0; j < m; ++j) lhs += std::abs(fg.samples[j] * gg.samples[j]);
  lhs /= static_cast<double>(m);
  const double rhs =
      2.0 * luxemburg_norm_grid(phi, fg).value * luxemburg_norm_grid(psi, gg).value;
  return {lhs, rhs};
}

inline HolderResult holder_check(const TrigPolynomial& f, const TrigPolynomial& g,
                                 const YoungFunction& phi) {
  return holder_check(f, g, phi, complementary(phi));
}

namespace detail {

// Scales grid samples so that the Psi-modular equals 1; returns the scale.
inline double scale_to_unit_modular(const YoungFunction& psi, const GridFunction& g) {
  double max_abs = 0.0;
  for (const auto& s : g.samples) max_abs = std::max(max_abs, std::abs(s));
  if (max_abs == 0.0) return 0.0;
  // modular(c) = mean Psi(c |g|) is increasing in c; bracket then bisect.
  const auto mod_at = [&](double c) {
    double acc = 0.0;
    for (const auto& s : g.samples) acc += psi.eval(c * std::abs(s));
    return acc / static_cast<double>(g.grid_size);
  };
  double hi = 1.0 / max_abs;
  for (int i = 0; i < 400 && mod_at(hi) < 1.0; ++i) hi *= 2.0;
  double lo = hi;
  for (int i = 0; i < 400 && mod_at(lo) >= 1.0; ++i) lo *= 0.5;
  for (int it = 0; it < 80; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (mod_at(mid) < 1.0) lo = mid;
    else hi = mid;
  }
  return lo;
}

}  // namespace detail

/// Estimates ||f||_Phi through the duality sup over the Psi-modular unit ball
/// of the pairing integral, normalized by the classical factor 2. Candidates:
/// the analytic near-extremizer g = Phi'(|f| / ||f||_Phi) plus seeded random
/// polynomials, each rescaled to Psi-modular 1. A lower estimate by design.
inline double dual_pairing_norm(const TrigPolynomial& f, const YoungFunction& phi,
                                int trials, std::uint64_t seed, const YoungFunction& psi) {
  if (trials < 1) throw std::invalid_argument("dual_pairing_norm: need trials >= 1");
  if (f.zero()) return 0.0;
  const std::size_t m = default_grid_size(f.max_abs_freq());
  const auto fg = evaluate_grid(f, m);
  const double norm_f = luxemburg_norm_grid(phi, fg).value;

  const auto pairing_with = [&](const GridFunction& g) -> double {
    const double c = detail::scale_to_unit_modular(psi, g);
    if (c == 0.0) return 0.0;
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j)
      acc += std::abs(fg.samples[j]) * c * std::abs(g.samples[j]);
    return acc / static_cast<double>(m);
  };

  GridFunction transform;
  transform.samples.resize(m);
  transform.grid_size = m;
  for (std::size_t j = 0; j < m; ++j)
    transform.samples[j] = Complex{phi.derivative(std::abs(fg.samples[j]) / norm_f), 0.0};
  double best = pairing_with(transform);

  Rng rng(seed);
  const std::int64_t span = std::max<std::int64_t>(8, f.max_abs_freq());
  const std::size_t terms = std::max<std::size_t>(4, f.coeffs().size());
  for (int t = 1; t < trials; ++t) {
    const auto g = random_trig_poly(rng, span, terms, true);
    best = std::max(best, pairing_with(evaluate_grid(g, m)));
  }
  return best / 2.0;
}

inline double dual_pairing_norm(const TrigPolynomial& f, const YoungFunction& phi,
                                int trials, std::uint64_t seed) {
  return dual_pairing_norm(f, phi, trials, seed, complementary(phi));
}

}  // namespace orlicz
