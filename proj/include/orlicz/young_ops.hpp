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

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "young_function.hpp"

namespace orlicz {

struct LogGrid {
  double lo = 1e-8;
  double hi = 1e8;
  std::size_t points = 4801;
};

namespace detail {

// Gauss-Legendre 7-point rule on [a, b].
template <typename F>
double gl7(F&& f, double a, double b) {
  static constexpr std::array<double, 7> x = {
      -0.9491079123427585, -0.7415311855993945, -0.4058451513773972, 0.0,
      0.4058451513773972, 0.7415311855993945, 0.9491079123427585};
  static constexpr std::array<double, 7> w = {
      0.1294849661688697, 0.2797053914892766, 0.3818300505051189, 0.4179591836734694,
      0.3818300505051189, 0.2797053914892766, 0.1294849661688697};
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 7; ++i) s += w[i] * f(mid + half * x[i]);
  return s * half;
}

}  // namespace detail

/// Legendre conjugate Psi(v) = sup_{u >= 0} (u v - Phi(u)), tabulated on a log
/// grid in v with power-law extrapolation outside it. The supremum of the
/// concave objective is located by bisecting the nondecreasing derivative
/// Phi'(u) = v; when the maximizer falls in a pure power piece the critical
/// point is taken in closed form.
inline YoungFunction complementary(const YoungFunction& phi, LogGrid grid = {}) {
  if (!phi.nice()) throw std::invalid_argument("complementary: requires a nice Young function");
  if (grid.points < 8 || !(grid.lo > 0.0) || !(grid.hi > grid.lo))
    throw std::invalid_argument("complementary: bad grid");

  const auto objective = [&](double u, double v) { return u * v - phi.eval(u); };

  const auto sup_for = [&](double v) -> double {
    // Bracket the solution of Phi'(u) = v.
    double hi = 1.0;
    for (int i = 0; i < 4000 && phi.derivative(hi) < v; ++i) hi *= 2.0;
    double lo = hi;
    for (int i = 0; i < 4000 && phi.derivative(lo) >= v && lo > 1e-300; ++i) lo *= 0.5;
    double u_star = std::sqrt(lo * hi);
    for (int it = 0; it < 90; ++it) {
      if (phi.derivative(u_star) < v) lo = u_star;
      else hi = u_star;
      u_star = std::sqrt(lo * hi);
    }
    double best = std::max({objective(u_star, v), objective(lo, v), objective(hi, v)});
    // Closed-form critical point inside power pieces.
    const auto& pieces = phi.pieces();
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (const auto* pw = std::get_if<PowerPiece>(&pieces[i].form)) {
        if (pw->p > 1.0) {
          const double a = pieces[i].breakpoint;
          const double b = (i + 1 < pieces.size()) ? pieces[i + 1].breakpoint
                                                   : std::numeric_limits<double>::infinity();
          double u = std::pow(v / (pw->c * pw->p), 1.0 / (pw->p - 1.0));
          u = std::clamp(u, a, b);
          if (std::isfinite(u)) best = std::max(best, objective(u, v));
        }
        // Breakpoints themselves are candidate maximizers (derivative jumps).
        best = std::max(best, objective(pieces[i].breakpoint, v));
      }
    }
    return best;
  };

  std::vector<double> vs(grid.points), ps(grid.points);
  const double step = std::log(grid.hi / grid.lo) / static_cast<double>(grid.points - 1);
  double prev = 0.0;
  for (std::size_t k = 0; k < grid.points; ++k) {
    const double v = grid.lo * std::exp(step * static_cast<double>(k));
    double s = sup_for(v);
    if (!(s > 0.0)) s = std::numeric_limits<double>::min();
    if (s < prev) s = prev;  // enforce monotonicity against rounding
    vs[k] = v;
    ps[k] = s;
    prev = s;
  }
  return YoungFunction::from_table(std::move(vs), std::move(ps), phi.nice());
}

/// Asymptotic growth exponents of Phi. alpha/beta come from slopes of
/// log M(t) against log t where M(t) maximizes Phi(tu)/Phi(u) over a log
/// window in u; p/q from extrema of u Phi'(u)/Phi(u). A single finite window
/// leaves an O(1/log u) bias (for u^p log^{ap} it is exactly ap/log u), so
/// every estimate is measured on two windows and Richardson-extrapolated in
/// 1/log u, which is exact for power and power-log tails. The raw window-1
/// values are kept for diagnostics.
struct IndexEstimate {
  double alpha_inf = 0.0;
  double beta_inf = 0.0;
  double p_inf = 0.0;
  double q_inf = 0.0;
  double u_max = 0.0;
  double slope_fit_residual = 0.0;
  bool regular = true;
  double alpha_raw = 0.0;
  double beta_raw = 0.0;
  double p_raw = 0.0;
  double q_raw = 0.0;
  std::vector<std::pair<double, double>> m_curve;  // (t, M(t)) on window 1
};

namespace detail {

struct SlopeAtBase {
  double slope = 0.0;
  double base = 0.0;  // effective log u of the measurement
};

inline double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline double extrapolate(SlopeAtBase s1, SlopeAtBase s2) {
  // Nodes 1/base; extrapolate the linear model slope(b) = s_inf + C/b to 0.
  if (!(s1.base > 0.0) || !(s2.base > 0.0)) return s1.slope;
  const double n1 = 1.0 / s1.base, n2 = 1.0 / s2.base;
  if (n2 <= n1 * 1.05) return s1.slope;
  double corrected = s1.slope - (s2.slope - s1.slope) * n1 / (n2 - n1);
  corrected = std::clamp(corrected, s1.slope - 1.5, s1.slope + 1.5);
  return corrected;
}

struct WindowScan {
  std::vector<double> log_t;
  std::vector<double> log_m;
  std::vector<double> argmax_x;  // log u attaining each M(t)
  SlopeAtBase small_t, large_t;
  SlopeAtBase p_min, q_max;
};

inline WindowScan scan_window(const YoungFunction& phi, double u_lo, double u_hi,
                              std::size_t points) {
  WindowScan out;
  const double step = std::log(u_hi / u_lo) / static_cast<double>(points - 1);
  std::vector<double> us(points), lphi(points);
  for (std::size_t i = 0; i < points; ++i) {
    us[i] = u_lo * std::exp(step * static_cast<double>(i));
    lphi[i] = std::log(phi.eval(us[i]));
  }
  for (int k = 1; k <= 10; ++k) {
    const double t = std::exp2(k);
    double best = -std::numeric_limits<double>::infinity();
    double best_x = std::log(u_lo);
    for (std::size_t i = 0; i < points; ++i) {
      const double r = std::log(phi.eval(t * us[i])) - lphi[i];
      if (r > best) {
        best = r;
        best_x = std::log(us[i]);
      }
    }
    out.log_t.push_back(std::log(t));
    out.log_m.push_back(best);
    out.argmax_x.push_back(best_x);
  }
  const auto fit_slope = [&](std::size_t from, std::size_t count) -> SlopeAtBase {
    std::vector<double> xs(out.log_t.begin() + from, out.log_t.begin() + from + count);
    std::vector<double> ys(out.log_m.begin() + from, out.log_m.begin() + from + count);
    double mean_x = 0, mean_arg = 0;
    for (std::size_t i = 0; i < count; ++i) {
      mean_x += xs[i];
      mean_arg += out.argmax_x[from + i];
    }
    mean_x /= static_cast<double>(count);
    mean_arg /= static_cast<double>(count);
    return {lsq_slope(xs, ys), mean_arg + mean_x};
  };
  out.small_t = fit_slope(0, 3);   // t in {2, 4, 8}
  out.large_t = fit_slope(7, 3);   // t in {256, 512, 1024}

  double pmin = std::numeric_limits<double>::infinity(), pbase = 0.0;
  double qmax = -std::numeric_limits<double>::infinity(), qbase = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double r = us[i] * phi.derivative(us[i]) / phi.eval(us[i]);
    if (r < pmin) {
      pmin = r;
      pbase = std::log(us[i]);
    }
    if (r > qmax) {
      qmax = r;
      qbase = std::log(us[i]);
    }
  }
  out.p_min = {pmin, pbase};
  out.q_max = {qmax, qbase};
  return out;
}

}  // namespace detail

inline IndexEstimate matuszewska_indices(const YoungFunction& phi, double u_max) {
  if (!(u_max >= 1e6)) throw std::invalid_argument("matuszewska_indices: need u_max >= 1e6");
  constexpr std::size_t kPoints = 241;
  const double u2_hi = std::pow(u_max, 0.6);
  const auto w1 = detail::scan_window(phi, u_max / 100.0, u_max, kPoints);
  const auto w2 =
      detail::scan_window(phi, std::max(u2_hi / 100.0, 50.0), u2_hi, kPoints);

  IndexEstimate est;
  est.u_max = u_max;
  est.alpha_raw = w1.small_t.slope;
  est.beta_raw = w1.large_t.slope;
  est.p_raw = w1.p_min.slope;
  est.q_raw = w1.q_max.slope;
  est.alpha_inf = detail::extrapolate(w1.small_t, w2.small_t);
  est.beta_inf = detail::extrapolate(w1.large_t, w2.large_t);
  est.p_inf = detail::extrapolate(w1.p_min, w2.p_min);
  est.q_inf = detail::extrapolate(w1.q_max, w2.q_max);

  // Residual of the affine fit of log M against log t over all t in window 1.
  const double s = detail::lsq_slope(w1.log_t, w1.log_m);
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < w1.log_t.size(); ++i) {
    mx += w1.log_t[i];
    my += w1.log_m[i];
  }
  mx /= static_cast<double>(w1.log_t.size());
  my /= static_cast<double>(w1.log_t.size());
  double rss = 0.0;
  for (std::size_t i = 0; i < w1.log_t.size(); ++i) {
    const double r = w1.log_m[i] - (my + s * (w1.log_t[i] - mx));
    rss += r * r;
  }
  est.slope_fit_residual = std::sqrt(rss / static_cast<double>(w1.log_t.size()));
  est.regular = est.slope_fit_residual < 0.1;
  for (std::size_t i = 0; i < w1.log_t.size(); ++i)
    est.m_curve.emplace_back(std::exp(w1.log_t[i]), std::exp(w1.log_m[i]));
  return est;
}

/// Doubling behavior of Phi measured on u in [1e2, 1e8]. The Delta_2 / nabla_2
/// conditions are statements about all large u; the fixed range and thresholds
/// are the operational stand-in, and the measured ratios are returned so
/// callers can apply their own cutoffs.
struct DoublingResult {
  bool delta2 = false;
  bool nabla2 = false;
  double sup_ratio = 0.0;
  double inf_ratio = 0.0;
};

inline DoublingResult check_delta2_nabla2(const YoungFunction& phi) {
  constexpr std::size_t kPoints = 601;
  const double lo = 1e2, hi = 1e8;
  const double step = std::log(hi / lo) / static_cast<double>(kPoints - 1);
  double sup = 0.0, inf = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < kPoints; ++i) {
    const double u = lo * std::exp(step * static_cast<double>(i));
    const double r = phi.eval(2.0 * u) / phi.eval(u);
    sup = std::max(sup, r);
    inf = std::min(inf, r);
  }
  return {sup < 1e6, inf > 2.0 + 1e-6, sup, inf};
}

/// Root-convexification: Phi_p(u) = u^p (1 + int_1^u s^{-p-1} Phi(s) ds) for
/// u > 1 and u^p below, then PhiTilde(u) = int_0^u Phi_p(s)/s ds. PhiTilde is
/// equivalent to Phi for large u and PhiTilde(u^{1/p}) is convex. Both stages
/// are cumulative Gauss-Legendre sums over a fine log grid, with sub-interval
/// nodes integrated exactly the same way (no interpolation inside the
/// quadrature).
struct ConvexifyResult {
  YoungFunction phi_tilde;
  YoungFunction phi_p;
  double equiv_lo = 0.0;  // min of PhiTilde/Phi on the report range
  double equiv_hi = 0.0;  // max of PhiTilde/Phi on the report range
};

struct ConvexifyOptions {
  double u_hi = 1e8;
  std::size_t points = 3000;
  double report_lo = 10.0;
  double report_hi = 1e6;
  bool check_preconditions = true;
};

inline ConvexifyResult convexify_root(const YoungFunction& phi, double p,
                                      ConvexifyOptions opt = {}) {
  if (!(p > 1.0)) throw std::invalid_argument("convexify_root: need p > 1");
  if (opt.check_preconditions) {
    const IndexEstimate idx = matuszewska_indices(phi, 1e8);
    if (!(p < idx.alpha_inf))
      throw std::invalid_argument("convexify_root: need p < alpha_inf(phi)");
    if (!check_delta2_nabla2(phi).delta2)
      throw std::invalid_argument("convexify_root: phi must satisfy Delta_2");
  }

  const std::size_t n = opt.points;
  const double xmax = std::log(opt.u_hi);
  const double h = xmax / static_cast<double>(n - 1);
  const auto inner = [&](double x) { return std::exp(-p * x) * phi.eval(std::exp(x)); };

  std::vector<double> xs(n), inner_cum(n);
  xs[0] = 0.0;
  inner_cum[0] = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    xs[k] = h * static_cast<double>(k);
    inner_cum[k] = inner_cum[k - 1] + detail::gl7(inner, xs[k - 1], xs[k]);
  }
  const auto inner_at = [&](double x) {
    const std::size_t k = std::min<std::size_t>(
        static_cast<std::size_t>(std::max(0.0, x / h)), n - 2);
    return inner_cum[k] + detail::gl7(inner, xs[k], x);
  };
  const auto phi_p_at = [&](double x) {
    return std::exp(p * x) * (1.0 + (x > 0.0 ? inner_at(x) : 0.0));
  };

  std::vector<double> tilde(n);
  tilde[0] = 1.0 / p;  // int_0^1 s^{p-1} ds
  for (std::size_t k = 1; k < n; ++k)
    tilde[k] = tilde[k - 1] + detail::gl7(phi_p_at, xs[k - 1], xs[k]);

  std::vector<double> us(n), phi_p_vals(n);
  for (std::size_t k = 0; k < n; ++k) {
    us[k] = std::exp(xs[k]);
    phi_p_vals[k] = std::exp(p * xs[k]) * (1.0 + inner_cum[k]);
  }

  const auto tabulated_from_one = [&](std::vector<double> vals,
                                      double head_c) -> YoungFunction {
    TabulatedPiece t{us, std::move(vals), {}, {}};
    t.build_logs();
    std::vector<Piece> pieces;
    pieces.push_back(Piece{0.0, PowerPiece{head_c, p}});
    pieces.push_back(Piece{1.0, std::move(t)});
    return YoungFunction(std::move(pieces), phi.nice());
  };

  ConvexifyResult out{tabulated_from_one(std::move(tilde), 1.0 / p),
                      tabulated_from_one(std::move(phi_p_vals), 1.0), 0.0, 0.0};

  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  const double r_hi = std::min(opt.report_hi, opt.u_hi);
  const double rstep = std::log(r_hi / opt.report_lo) / 200.0;
  for (int i = 0; i <= 200; ++i) {
    const double u = opt.report_lo * std::exp(rstep * i);
    const double r = out.phi_tilde.eval(u) / phi.eval(u);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  out.equiv_lo = lo;
  out.equiv_hi = hi;
  return out;
}

/// max over log-spaced u in [1, u_max] of Phi1^{-1}(u) / Phi2^{-1}(u);
/// nondecreasing in u_max, used to exhibit the blow-up of the inverse ratio
/// when sup Phi2/Phi1 is infinite.
inline double inverse_ratio_blowup(const YoungFunction& phi1, const YoungFunction& phi2,
                                   double u_max) {
  if (!(u_max >= 1.0)) throw std::invalid_argument("inverse_ratio_blowup: need u_max >= 1");
  const std::size_t points = std::max<std::size_t>(
      2, static_cast<std::size_t>(33.0 * std::log10(u_max)) + 2);
  const double step = std::log(u_max) / static_cast<double>(points - 1);
  double best = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double u = std::exp(step * static_cast<double>(i));
    best = std::max(best, phi1.inverse(u) / phi2.inverse(u));
  }
  return best;
}

}  // namespace orlicz
