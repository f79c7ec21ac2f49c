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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "lambda_sets.hpp"
#include "littlewood_paley.hpp"
#include "luxemburg.hpp"
#include "random_restriction.hpp"
#include "report.hpp"

namespace orlicz {

// The measured suite: one entry per criterion, every tolerance pinned here.
// The fast suite shrinks corpora and ranges for a quick smoke signal; the
// full suite is the gate.

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

namespace acceptance {

inline constexpr std::uint64_t kSeed = 20260811ULL;

struct Scale {
  bool fast = false;
};

namespace detail {

inline double lsq_slope_pairs(const std::vector<std::pair<double, double>>& xy) {
  const double n = static_cast<double>(xy.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : xy) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

}  // namespace detail

// 1. Luxemburg norm equals the quadrature L^p norm at 1e-8 for power Phi.
inline CriterionResult c1_luxemburg_lp(Scale sc) {
  const int count = sc.fast ? 40 : 200;
  Rng rng(mix_seed(kSeed, 1));
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const auto f = random_trig_poly(rng, 64, 1 + rng.below(32), false);
    const std::size_t m = default_grid_size(f.max_abs_freq());
    const auto grid = evaluate_grid(f, m);
    for (double p : {2.0, 3.0, 4.0, 6.0}) {
      const double lux = luxemburg_norm_grid(YoungFunction::power(p), grid).value;
      double mean = 0.0;
      for (const auto& s : grid.samples) mean += std::pow(std::abs(s), p);
      const double lp = std::pow(mean / static_cast<double>(m), 1.0 / p);
      worst = std::max(worst, std::abs(lux - lp) / lp);
    }
  }
  return {1, "luxemburg = L^p (power Phi)", worst <= 1e-8,
          detail::fmt("max rel err %.3g over %d polys, p in {2,3,4,6}", worst, count), 0};
}

// 2. Exact two-frequency oracle: ||(e3 + e7)/sqrt(2)||_4 = (3/2)^{1/4}.
inline CriterionResult c2_two_frequency(Scale) {
  TrigPolynomial f;
  const double r = 1.0 / std::sqrt(2.0);
  f.set_coeff(3, {r, 0.0});
  f.set_coeff(7, {r, 0.0});
  const double target = std::pow(1.5, 0.25);
  const double conv = lp_norm_even_exact(f, 4);
  const double lux = luxemburg_norm(YoungFunction::power(4.0), f, 4096).value;
  const double err = std::max(std::abs(conv - target), std::abs(lux - target));
  return {2, "two-frequency L^4 oracle", err <= 1e-8,
          detail::fmt("conv %.12f lux %.12f target %.12f", conv, lux, target), 0};
}

// 3. Inverse sandwich u <= Phi^{-1}(u) Psi^{-1}(u) <= 2u with numerical Psi.
inline CriterionResult c3_inverse_sandwich(Scale) {
  double lo_margin = 1e300, hi_margin = -1e300;
  bool pass = true;
  for (const auto& phi :
       {YoungFunction::power(2.0), YoungFunction::power(3.0), YoungFunction::zygmund(3.0, 1.0)}) {
    const auto psi = complementary(phi);
    for (int k = 0; k <= 49; ++k) {
      const double u = 1e-2 * std::pow(1e10, k / 49.0);
      const double prod = phi.inverse(u) * psi.inverse(u);
      pass = pass && prod >= u * (1.0 - 1e-4) && prod <= 2.0 * u * (1.0 + 1e-4);
      lo_margin = std::min(lo_margin, prod / u);
      hi_margin = std::max(hi_margin, prod / u);
    }
  }
  return {3, "inverse product sandwich", pass,
          detail::fmt("prod/u in [%.6f, %.6f] (bounds [1, 2], tol 1e-4)", lo_margin, hi_margin),
          0};
}

// 4. Index estimator: alpha = beta = p within 0.05 for powers and zygmund.
inline CriterionResult c4_indices(Scale) {
  double worst = 0.0;
  for (double p : {2.0, 3.0, 5.0}) {
    const auto est = matuszewska_indices(YoungFunction::power(p), 1e8);
    worst = std::max({worst, std::abs(est.alpha_inf - p), std::abs(est.beta_inf - p)});
  }
  const auto zyg = matuszewska_indices(YoungFunction::zygmund(3.0, 1.0), 1e8);
  worst = std::max({worst, std::abs(zyg.alpha_inf - 3.0), std::abs(zyg.beta_inf - 3.0)});
  return {4, "Matuszewska index estimator", worst < 0.05,
          detail::fmt("max |estimate - p| = %.4f (tol 0.05)", worst), 0};
}

// 5. Fejer bound ||K_N||_Psi <= 2 Phi^{-1}(N) for p in {3,4,6}, dyadic N.
inline CriterionResult c5_fejer(Scale sc) {
  bool pass = true;
  double worst = 0.0;
  const std::vector<std::int64_t> ns =
      sc.fast ? std::vector<std::int64_t>{64, 256, 1024}
              : std::vector<std::int64_t>{64, 256, 1024, 4096};
  for (double p : {3.0, 4.0, 6.0}) {
    const auto phi = YoungFunction::power(p);
    const auto psi = complementary(phi);
    for (std::int64_t n : ns) {
      const auto b = fejer_psi_bound(phi, psi, n);
      pass = pass && b.lhs <= b.rhs;
      worst = std::max(worst, b.lhs / b.rhs);
    }
  }
  return {5, "Fejer kernel Psi-bound", pass,
          detail::fmt("max lhs/rhs = %.4f over p in {3,4,6}, N <= %lld (N0 <= 64)", worst,
                      static_cast<long long>(ns.back())),
          0};
}

// 6. Khintchine by exhaustive enumeration, B_p <= sqrt(p) for p in {2,4,6}.
inline CriterionResult c6_khintchine(Scale) {
  Rng rng(mix_seed(kSeed, 6));
  bool pass = true;
  double worst = 0.0;
  const auto check = [&](const std::vector<double>& c) {
    for (double p : {2.0, 4.0, 6.0}) {
      const auto r = khintchine_check(c, p, std::size_t{1} << (c.size() + 1));
      if (r.rhs == 0.0) continue;
      pass = pass && r.lhs <= std::sqrt(p) * r.rhs * (1.0 + 1e-12) &&
             r.lhs >= r.rhs * (1.0 - 1e-12);
      worst = std::max(worst, r.lhs / (std::sqrt(p) * r.rhs));
    }
  };
  for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{4}, std::size_t{8},
                        std::size_t{12}}) {
    check(std::vector<double>(n, 1.0));
    std::vector<double> c(n);
    for (double& v : c) v = rng.gaussian();
    check(c);
  }
  return {6, "Khintchine exhaustive enumeration", pass,
          detail::fmt("max lhs/(sqrt(p) rhs) = %.4f over <= 12 coordinates", worst), 0};
}

// 7. Littlewood-Paley: ratio band [1/8, 8] and exact reconstruction.
inline CriterionResult c7_littlewood_paley(Scale sc) {
  const int count = sc.fast ? 10 : 50;
  Rng rng(mix_seed(kSeed, 7));
  const auto cube = YoungFunction::power(3.0);
  const auto zyg = YoungFunction::zygmund(3.0, 1.0);
  double rmin = 1e300, rmax = 0.0, recon_err = 0.0;
  bool pass = true;
  for (int i = 0; i < count; ++i) {
    const auto f = random_trig_poly(rng, 64, 1 + rng.below(16), true);
    for (const auto& phi : {cube, zyg}) {
      const double r = square_function_ratio(phi, f);
      rmin = std::min(rmin, r);
      rmax = std::max(rmax, r);
      pass = pass && r >= 0.125 && r <= 8.0;
    }
    TrigPolynomial sum;
    for (int j = 0; j <= lp_j_max(f); ++j) sum += project(f, j);
    for (const auto& [n, a] : f.coeffs())
      recon_err = std::max(recon_err, std::abs(sum.coeff(n) - a));
  }
  pass = pass && recon_err <= 1e-10;
  return {7, "Littlewood-Paley square-function band", pass,
          detail::fmt("ratio in [%.4f, %.4f] (band [0.125, 8]); recon err %.2e", rmin, rmax,
                      recon_err),
          0};
}

// 8. Boundedness of the restriction constant: median K over random
// restrictions is flat in m for Phi = u^3, Phi0 = u^2, E = {1..2^m}.
inline CriterionResult c8_monte_carlo(Scale sc) {
  const int m_lo = 8;
  const int m_hi = sc.fast ? 10 : 13;
  const int trials = sc.fast ? 8 : 32;
  const auto cube = YoungFunction::power(3.0);
  const auto sq = YoungFunction::power(2.0);
  KOptions inner;
  inner.restarts = 2;
  inner.max_iters = 4;
  std::vector<std::pair<double, double>> med;
  for (int m = m_lo; m <= m_hi; ++m) {
    const auto stats = monte_carlo_K(cube, sq, FrequencySet::interval(1, std::int64_t{1} << m),
                                     trials, mix_seed(kSeed, 8, m), inner);
    med.emplace_back(static_cast<double>(m), stats.median);
  }
  double lo = 1e300, hi = 0.0;
  for (const auto& [m, v] : med) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double slope = detail::lsq_slope_pairs(med);
  const bool pass = slope <= 0.05 && hi <= 1.5 * lo;
  std::string d = detail::fmt("slope %.4f/doubling (<= 0.05); medians in [%.4f, %.4f]", slope,
                              lo, hi);
  return {8, "random restriction: E(K) bounded", pass, d, 0};
}

// 9. Constructed set has the maximal density: factor-4 band for the ratio
// |S cap [-N,N]| / Phi1^{-1}(N)^2 over dyadic N.
inline CriterionResult c9_density_band(Scale sc) {
  const int r_hi = sc.fast ? 10 : 13;
  const auto sq = YoungFunction::power(2.0);
  const auto quartic = YoungFunction::power(4.0);
  const auto e = FrequencySet::interval(-(std::int64_t{2} << r_hi), std::int64_t{2} << r_hi);
  BuildOptions opt;
  opt.trials_per_shell = 6;
  const auto scn = build_lambda_set(sq, quartic, e, 6, r_hi, mix_seed(kSeed, 9), opt);
  std::vector<std::int64_t> ns;
  for (int k = sc.fast ? 8 : 9; k <= r_hi + 1; ++k) ns.push_back(std::int64_t{1} << k);
  double lo = 1e300, hi = 0.0;
  for (const auto& [n, ratio] : density_ratio(scn.s, quartic, ns)) {
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  const bool pass = lo > 0.0 && hi / lo <= 4.0;
  return {9, "constructed set density band", pass,
          detail::fmt("ratio band [%.4f, %.4f], spread %.3f (<= 4), r in {6..%d}", lo, hi,
                      hi / lo, r_hi),
          0};
}

// 10. Witness growth for flat shells sized to the construction target, plus
// the monotone trend of the inverse ratio.
inline CriterionResult c10_witness(Scale) {
  const auto cube = YoungFunction::power(3.0);
  const auto quartic = YoungFunction::power(4.0);
  bool pass = true;
  double min_ratio = 1e300;
  double prev_inv = 0.0;
  for (int r = 6; r <= 12; ++r) {
    const double two_r = std::ldexp(1.0, r);
    const auto size =
        static_cast<std::int64_t>(std::ceil(std::pow(two_r, 2.0 / 3.0)));
    const std::int64_t lo = std::int64_t{1} << r;
    const auto s_r = FrequencySet::interval(lo, lo + size - 1);
    const double ratio = witness_ratio(s_r, cube, quartic, r);
    min_ratio = std::min(min_ratio, ratio);
    pass = pass && ratio >= 1.0;
    const double inv_ratio = cube.inverse(two_r) / quartic.inverse(two_r);
    pass = pass && inv_ratio > prev_inv;
    prev_inv = inv_ratio;
  }
  return {10, "witness ratio growth", pass,
          detail::fmt("min ratio %.4f (>= c = 1.0), inverse ratio monotone up to %.4f",
                      min_ratio, prev_inv),
          0};
}

// 11. Determinism: identical config+seed give identical determinism hashes
// across thread counts {1, 8}.
inline CriterionResult c11_determinism(Scale) {
  const auto run = [&](unsigned threads) {
    set_thread_count(threads);
    ExperimentReport rep;
    rep.command = "mc";
    rep.config = {{"set", {{"kind", "interval"}, {"a", 1}, {"b", 512}}},
                  {"phi", {{"kind", "power"}, {"p", 3.0}}},
                  {"phi0", {{"kind", "power"}, {"p", 2.0}}},
                  {"trials", 12}};
    rep.seed = mix_seed(kSeed, 11);
    KOptions inner;
    inner.restarts = 1;
    inner.max_iters = 3;
    const auto stats = monte_carlo_K(YoungFunction::power(3.0), YoungFunction::power(2.0),
                                     FrequencySet::interval(1, 512), 12, rep.seed, inner);
    ReportRow row;
    row.op = "mc";
    row.values = {{"mean", stats.mean}, {"median", stats.median}, {"max", stats.max},
                  {"per_trial", stats.per_trial}};
    rep.add_row(std::move(row));
    rep.warnings = stats.warnings;
    const std::string hash = rep.determinism_sha256();
    set_thread_count(0);
    return hash;
  };
  const std::string h1 = run(1);
  const std::string h8 = run(8);
  return {11, "determinism across thread counts", h1 == h8,
          "sha256[1 thread] " + h1.substr(0, 16) + "... == sha256[8 threads] " +
              h8.substr(0, 16) + "...: " + (h1 == h8 ? "yes" : "NO"),
          0};
}

}  // namespace acceptance

inline std::vector<CriterionResult> run_acceptance(const std::string& suite) {
  if (suite != "fast" && suite != "full")
    throw std::invalid_argument("run_acceptance: suite must be 'fast' or 'full'");
  acceptance::Scale sc{suite == "fast"};
  using Fn = CriterionResult (*)(acceptance::Scale);
  const Fn criteria[] = {
      acceptance::c1_luxemburg_lp,  acceptance::c2_two_frequency,
      acceptance::c3_inverse_sandwich, acceptance::c4_indices,
      acceptance::c5_fejer,         acceptance::c6_khintchine,
      acceptance::c7_littlewood_paley, acceptance::c8_monte_carlo,
      acceptance::c9_density_band,  acceptance::c10_witness,
      acceptance::c11_determinism};
  std::vector<CriterionResult> out;
  for (Fn fn : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r = fn(sc);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(r));
  }
  return out;
}

inline int print_acceptance(const std::vector<CriterionResult>& results) {
  int failures = 0;
  for (const auto& r : results) {
    std::printf("[%2d/11] %-4s %-42s %8.2fs  %s\n", r.id, r.pass ? "PASS" : "FAIL",
                r.name.c_str(), r.seconds, r.detail.c_str());
    if (!r.pass) ++failures;
  }
  std::printf("%d/11 criteria passed\n", 11 - failures);
  return failures;
}

}  // namespace orlicz
