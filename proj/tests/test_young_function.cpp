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

#include "orlicz/young_function.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "orlicz/rng.hpp"

using namespace orlicz;

TEST_CASE("power evaluation") {
  const auto phi = YoungFunction::power(3.0);
  CHECK(phi.eval(2.0) == 8.0);
  CHECK(phi.eval(0.0) == 0.0);
  CHECK(phi.eval(1.0) == 1.0);
  CHECK_THROWS_AS(phi.eval(-1.0), std::domain_error);

  const auto scaled = YoungFunction::power(2.0, 5.0);
  CHECK(scaled.eval(3.0) == 45.0);
}

TEST_CASE("zygmund fixture evaluates the tail formula") {
  const auto phi = YoungFunction::zygmund(3.0, 1.0);
  // Breakpoint u0 = e^{max(1, 2*1*3/1)} = e^6, beyond e.
  const double u0 = phi.pieces()[1].breakpoint;
  CHECK(u0 == Catch::Approx(std::exp(6.0)));
  // Beyond u0, Phi(u) = u^3 log^3 u; at u = e^7, log u = 7.
  const double u = std::exp(7.0);
  CHECK(phi.eval(u) == Catch::Approx(u * u * u * 343.0).epsilon(1e-12));
  CHECK(phi.eval(0.0) == 0.0);
  CHECK(phi.check_nice());

  // zygmund(3, 0) coincides with u^3 beyond its breakpoint e.
  const auto z0 = YoungFunction::zygmund(3.0, 0.0);
  CHECK(z0.eval(std::exp(1.0)) == Catch::Approx(std::exp(3.0)).epsilon(1e-12));
  CHECK(z0.eval(100.0) == Catch::Approx(1e6).epsilon(1e-12));
}

TEST_CASE("continuity is enforced at breakpoints") {
  // c u^2 then u^3 matched at 10 requires c = 10.
  CHECK_NOTHROW(YoungFunction(
      {Piece{0.0, PowerPiece{10.0, 2.0}}, Piece{10.0, PowerPiece{1.0, 3.0}}}, true));
  CHECK_THROWS_AS(
      YoungFunction({Piece{0.0, PowerPiece{1.0, 2.0}}, Piece{10.0, PowerPiece{1.0, 3.0}}},
                    true),
      std::invalid_argument);
}

TEST_CASE("inverse: closed form and bisection") {
  const auto cube = YoungFunction::power(3.0);
  CHECK(cube.inverse(8.0) == Catch::Approx(2.0).epsilon(1e-12));
  CHECK(cube.inverse(0.0) == 0.0);
  CHECK_THROWS_AS(cube.inverse(-1.0), std::domain_error);

  SECTION("round trip over a wide range") {
    const auto zyg = YoungFunction::zygmund(3.0, 1.0);
    for (double u = 1e-3; u <= 1e6; u *= 10.0) {
      CHECK(cube.inverse(cube.eval(u)) == Catch::Approx(u).epsilon(1e-8));
      CHECK(zyg.inverse(zyg.eval(u)) == Catch::Approx(u).epsilon(1e-8));
    }
  }

  SECTION("zygmund inverse approaches the asymptotic formula") {
    // Phi^{-1}(y) ~ p^alpha y^{1/p} log^{-alpha}(y): solving u^3 log^3 u = y
    // gives u ~ 3 y^{1/3}/log y. The correction decays like log log y / log y,
    // so the 20% band is checked in the regime where it has kicked in.
    const auto zyg = YoungFunction::zygmund(3.0, 1.0);
    CHECK(zyg.inverse(1e9) == Catch::Approx(107.1247148).epsilon(1e-6));
    const double y = 1e20;
    const double asym = 3.0 * std::pow(y, 1.0 / 3.0) / std::log(y);
    const double inv = zyg.inverse(y);
    CHECK(std::abs(inv - asym) / asym < 0.20);
  }
}

TEST_CASE("convexity margin on fixtures") {
  CHECK(convexity_margin(YoungFunction::power(3.0), 1e-3, 1e6) >= -1e-9);
  CHECK(convexity_margin(YoungFunction::zygmund(3.0, 1.0), 1e-3, 1e6) >= -1e-9);
  CHECK(convexity_margin(YoungFunction::zygmund(4.0, -0.5), 1e-3, 1e6) >= -1e-9);
}

TEST_CASE("tabulated pieces interpolate power laws exactly") {
  // Log-log linear interpolation reproduces u^2.5 exactly at off-grid points.
  std::vector<double> us, vs;
  for (double u = 0.5; u <= 1024.0; u *= 2.0) {
    us.push_back(u);
    vs.push_back(std::pow(u, 2.5));
  }
  const auto tab = YoungFunction::from_table(us, vs, true);
  for (double u : {0.7, 1.3, 3.0, 77.0, 700.0}) {
    CHECK(tab.eval(u) == Catch::Approx(std::pow(u, 2.5)).epsilon(1e-12));
  }
  // Extrapolation keeps the boundary power law.
  CHECK(tab.eval(1e-3) == Catch::Approx(std::pow(1e-3, 2.5)).epsilon(1e-9));
  CHECK(tab.eval(1e5) == Catch::Approx(std::pow(1e5, 2.5)).epsilon(1e-9));
  CHECK(tab.derivative(3.0) == Catch::Approx(2.5 * std::pow(3.0, 1.5)).epsilon(1e-9));
}

TEST_CASE("derivative matches finite differences") {
  const auto phi = YoungFunction::zygmund(3.0, 1.0);
  for (double u : {0.5, 7.0, 1e3, 1e6}) {
    const double h = u * 1e-6;
    const double fd = (phi.eval(u + h) - phi.eval(u - h)) / (2.0 * h);
    CHECK(phi.derivative(u) == Catch::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("json round trip is bit-exact") {
  Rng rng(77);
  std::vector<YoungFunction> fixtures;
  fixtures.push_back(YoungFunction::power(3.0));
  fixtures.push_back(YoungFunction::zygmund(3.0, 1.0));
  {
    std::vector<double> us, vs;
    double v = 0.25;
    for (double u = 0.1; u <= 1e4; u *= 3.7) {
      us.push_back(u);
      v *= 1.0 + 3.0 * rng.uniform();
      vs.push_back(v);
    }
    fixtures.push_back(YoungFunction::from_table(us, vs, false));
  }
  for (const auto& phi : fixtures) {
    const nlohmann::json j = phi;
    const auto back = j.get<YoungFunction>();
    CHECK(back == phi);
    const nlohmann::json j2 = back;
    CHECK(j.dump() == j2.dump());
  }
}
