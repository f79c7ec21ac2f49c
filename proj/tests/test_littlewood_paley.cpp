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

#include "orlicz/littlewood_paley.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "orlicz/rng.hpp"

using namespace orlicz;

TEST_CASE("bump profile") {
  CHECK(bump_psi(0.0) == 1.0);
  CHECK(bump_psi(1.0) == 1.0);
  CHECK(bump_psi(-1.0) == 1.0);
  CHECK(bump_psi(2.0) == 0.0);
  CHECK(bump_psi(-3.0) == 0.0);
  CHECK(bump_psi(1.5) == Catch::Approx(0.5));
  double prev = 1.0;
  for (double x = 0.0; x <= 2.5; x += 0.01) {
    const double v = bump_psi(x);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    CHECK(v <= prev + 1e-15);
    CHECK(v == bump_psi(-x));
    prev = v;
  }
}

TEST_CASE("psi_j support and telescoping") {
  CHECK(psi_j(1, 1.0) == 0.0);  // psi(1/4) - psi(1/2) = 0 on the plateau

  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const double xi = (rng.uniform() - 0.5) * 2000.0;
    const int j_cap = 12;
    double sum = 0.0;
    for (int j = 0; j <= j_cap; ++j) sum += psi_j(j, xi);
    CHECK(sum == Catch::Approx(bump_psi(xi / std::ldexp(1.0, j_cap + 1))).margin(1e-12));
  }

  for (int j = 1; j <= 8; ++j) {
    const double lo = std::ldexp(1.0, j);
    const double hi = std::ldexp(1.0, j + 2);
    for (double xi = 0.0; xi <= 1.5 * hi; xi += hi / 512.0) {
      if (xi < lo - 1e-9 || xi > hi + 1e-9) CHECK(psi_j(j, xi) == 0.0);
    }
  }
}

TEST_CASE("bounded overlap of the squared weights") {
  // For every integer n, at most 2 blocks are active and the squared sum
  // stays in [1/2, 1] (scan |n| <= 2^16).
  for (std::int64_t n = 1; n <= (1 << 16); n = n < 64 ? n + 1 : n + 37) {
    int active = 0;
    double sq = 0.0;
    for (int j = 0; j <= 20; ++j) {
      const double w = psi_j(j, static_cast<double>(n));
      if (w != 0.0) ++active;
      sq += w * w;
    }
    CHECK(active <= 2);
    CHECK(sq >= 0.5 - 1e-12);
    CHECK(sq <= 1.0 + 1e-12);
  }
}

TEST_CASE("projections reconstruct") {
  TrigPolynomial c;
  c.set_coeff(0, {2.5, -1.0});
  CHECK(project(c, 0).coeff(0) == c.coeff(0));
  for (int j = 1; j <= 6; ++j) CHECK(project(c, j).zero());

  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_trig_poly(rng, 200, 24, false);
    TrigPolynomial sum;
    for (int j = 0; j <= lp_j_max(f); ++j) sum += project(f, j);
    for (const auto& [n, a] : f.coeffs())
      CHECK(std::abs(sum.coeff(n) - a) < 1e-10 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("square function: single frequency reductions") {
  // Plancherel: for f = e_n, ratio = sqrt(sum_j psi_j(n)^2).
  const auto sq = YoungFunction::power(2.0);
  for (std::int64_t n : {3, 7, 12, 100}) {
    TrigPolynomial f;
    f.set_coeff(n, {1.0, 0.0});
    double wsq = 0.0;
    for (int j = 0; j <= 20; ++j) {
      const double w = psi_j(j, static_cast<double>(n));
      wsq += w * w;
    }
    CHECK(square_function_ratio(sq, f) == Catch::Approx(std::sqrt(wsq)).epsilon(1e-9));
  }

  // Pure-block frequencies (weight scan finds n = 2^{j+1}) give ratio 1 for
  // any Phi, since the square function equals |f| pointwise.
  std::vector<std::int64_t> pure;
  for (std::int64_t n = 1; n <= 512 && pure.size() < 3; ++n) {
    double wsq = 0.0;
    int active = 0;
    for (int j = 0; j <= 12; ++j) {
      const double w = psi_j(j, static_cast<double>(n));
      if (w != 0.0) ++active;
      wsq += w * w;
    }
    if (active == 1 && std::abs(wsq - 1.0) < 1e-14) pure.push_back(n);
  }
  REQUIRE(!pure.empty());
  CHECK(pure.front() == 1);  // psi_0(1) = psi(1/2) = 1 and no other block
  for (std::int64_t n : pure) {
    TrigPolynomial f;
    f.set_coeff(n, {0.7, 0.3});
    for (const auto& phi : {YoungFunction::power(3.0), YoungFunction::zygmund(3.0, 1.0)}) {
      CHECK(square_function_ratio(phi, f) == Catch::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("square function ratio: Plancherel band and coefficient arithmetic") {
  const auto sq = YoungFunction::power(2.0);
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_trig_poly(rng, 64, 12, true);
    double num = 0.0, den = 0.0, wmin = 1e300, wmax = 0.0;
    for (const auto& [n, a] : f.coeffs()) {
      double wsq = 0.0;
      for (int j = 0; j <= 20; ++j) {
        const double w = psi_j(j, static_cast<double>(n));
        wsq += w * w;
      }
      num += std::norm(a) * wsq;
      den += std::norm(a);
      wmin = std::min(wmin, wsq);
      wmax = std::max(wmax, wsq);
    }
    const double ratio = square_function_ratio(sq, f);
    CHECK(ratio * ratio == Catch::Approx(num / den).epsilon(1e-8));
    CHECK(ratio * ratio >= wmin - 1e-9);
    CHECK(ratio * ratio <= wmax + 1e-9);
  }
}

TEST_CASE("square function ratio band on a random corpus") {
  Rng rng(77);
  const auto zyg = YoungFunction::zygmund(3.0, 1.0);
  for (int trial = 0; trial < 15; ++trial) {
    const auto f = random_trig_poly(rng, 64, 1 + rng.below(16), true);
    const double r = square_function_ratio(zyg, f);
    CHECK(r >= 0.125);
    CHECK(r <= 8.0);
  }
  CHECK_THROWS_AS(square_function_ratio(zyg, TrigPolynomial{}), std::invalid_argument);
}

TEST_CASE("rademacher randomization") {
  const auto cube = YoungFunction::power(3.0);

  // Single-block polynomial: every sign pattern leaves the norm unchanged.
  TrigPolynomial block;
  block.set_coeff(8, {1.0, 0.0});
  block.set_coeff(-8, {0.5, 0.5});
  const double base = luxemburg_norm(cube, block).value;
  const auto stats = rademacher_randomized_norm(cube, block, 12, 123);
  for (double v : stats.values) CHECK(v == Catch::Approx(base).epsilon(1e-9));

  // t -> 1 - t flips every block sign and cannot change any norm.
  Rng rng(15);
  const auto f = random_trig_poly(rng, 48, 10, true);
  const int jmax = lp_j_max(f);
  double t = 0.3791;
  TrigPolynomial g_plus, g_minus;
  for (const auto& [n, a] : f.coeffs()) {
    double wp = 0.0, wm = 0.0;
    for (int j = 0; j <= jmax; ++j) {
      wp += psi_j(j, static_cast<double>(n)) * rademacher(j, t);
      wm += psi_j(j, static_cast<double>(n)) * rademacher(j, 1.0 - t);
    }
    g_plus.set_coeff(n, a * wp);
    g_minus.set_coeff(n, a * wm);
  }
  CHECK(luxemburg_norm(cube, g_plus).value ==
        Catch::Approx(luxemburg_norm(cube, g_minus).value).epsilon(1e-9));

  // Empirical band for the quartic norm over a small corpus.
  const auto quartic = YoungFunction::power(4.0);
  for (int trial = 0; trial < 8; ++trial) {
    const auto h = random_trig_poly(rng, 64, 12, true);
    const auto st = rademacher_randomized_norm(quartic, h, 8, mix_seed(99, trial));
    const double nf = luxemburg_norm(quartic, h).value;
    CHECK(st.max / nf <= 8.0);
    CHECK(st.max > 0.0);
  }
}

TEST_CASE("rademacher orthogonality on a dyadic midpoint grid") {
  const int jmax = 6;
  const std::size_t grid = std::size_t{1} << (jmax + 1);
  for (int i = 0; i <= jmax; ++i) {
    for (int j = 0; j <= jmax; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < grid; ++k) {
        const double t = (static_cast<double>(k) + 0.5) / static_cast<double>(grid);
        acc += rademacher(i, t) * rademacher(j, t);
      }
      acc /= static_cast<double>(grid);
      CHECK(acc == (i == j ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("khintchine comparisons") {
  const auto res1 = khintchine_check({1.0}, 4.0, 16);
  CHECK(res1.lhs == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(res1.rhs == Catch::Approx(1.0).epsilon(1e-12));

  const auto res2 = khintchine_check({1.0, 1.0}, 2.0, 8);
  CHECK(res2.lhs == Catch::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(res2.rhs == Catch::Approx(std::sqrt(2.0)).epsilon(1e-12));

  // c = (1,1,1,1), p = 4: exact enumeration gives E|sum|^4 = 40.
  const auto res4 = khintchine_check({1.0, 1.0, 1.0, 1.0}, 4.0, 64);
  CHECK(std::pow(res4.lhs, 4.0) == Catch::Approx(40.0).epsilon(1e-12));
  CHECK(res4.lhs <= std::sqrt(3.0) * res4.rhs);
  CHECK(res4.lhs >= res4.rhs);

  // Random coefficients: two-sided classical bounds with B_p <= sqrt(p).
  Rng rng(3);
  for (double p : {2.0, 4.0, 6.0}) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> c(1 + rng.below(10));
      for (double& v : c) v = rng.gaussian();
      const auto r = khintchine_check(c, p, std::size_t{1} << (c.size() + 1));
      CHECK(r.lhs <= std::sqrt(p) * r.rhs * (1.0 + 1e-12));
      CHECK(r.lhs >= r.rhs * (1.0 - 1e-12));
    }
  }
}
