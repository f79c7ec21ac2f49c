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
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace orlicz {

/// A convex function Phi: [0,inf) -> [0,inf) with Phi(0) = 0, represented as
/// an ordered list of analytic pieces. Piece i is active on
/// [breakpoint_i, breakpoint_{i+1}); the last piece extends to +inf.
///
/// Forms:
///   power      c * u^p
///   power_log  u^p * log(u)^{alpha p}   (only valid for breakpoints > 1)
///   tabulated  monotone sample table, interpolated linearly in log-log
///              coordinates and extrapolated by the boundary power laws
///
/// The "nice" flag marks an N-function: continuous, vanishing only at 0,
/// Phi(u)/u -> 0 at 0 and -> inf at inf. Several operations require it.

struct PowerPiece {
  double c = 1.0;
  double p = 1.0;
};

struct PowerLogPiece {
  double p = 2.0;
  double alpha = 0.0;
};

struct TabulatedPiece {
  std::vector<double> u;  // strictly increasing, > 0
  std::vector<double> v;  // strictly increasing, > 0
  // log-log copies, built on construction
  std::vector<double> lu, lv;

  void build_logs() {
    lu.resize(u.size());
    lv.resize(v.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      lu[i] = std::log(u[i]);
      lv[i] = std::log(v[i]);
    }
  }
};

using PieceForm = std::variant<PowerPiece, PowerLogPiece, TabulatedPiece>;

struct Piece {
  double breakpoint = 0.0;
  PieceForm form;
};

namespace detail {

// u^p with a multiply chain for small integer p (hot path in modular sums).
inline double pow_fast(double u, double p) {
  const int ip = static_cast<int>(p);
  if (static_cast<double>(ip) == p && ip >= 0 && ip <= 8) {
    double r = 1.0;
    double b = u;
    int e = ip;
    while (e > 0) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }
  return std::pow(u, p);
}

inline double eval_power(const PowerPiece& f, double u) { return f.c * pow_fast(u, f.p); }

inline double eval_power_log(const PowerLogPiece& f, double u) {
  const double lg = std::log(u);
  return pow_fast(u, f.p) * pow_fast(lg, f.alpha * f.p);
}

inline double eval_tabulated(const TabulatedPiece& f, double u) {
  const double x = std::log(u);
  const auto& lu = f.lu;
  const auto& lv = f.lv;
  std::size_t hi;
  if (x <= lu.front()) {
    hi = 1;
  } else if (x >= lu.back()) {
    hi = lu.size() - 1;
  } else {
    hi = static_cast<std::size_t>(std::upper_bound(lu.begin(), lu.end(), x) - lu.begin());
  }
  const double slope = (lv[hi] - lv[hi - 1]) / (lu[hi] - lu[hi - 1]);
  return std::exp(lv[hi - 1] + slope * (x - lu[hi - 1]));
}

inline double deriv_power(const PowerPiece& f, double u) {
  return f.c * f.p * pow_fast(u, f.p - 1.0);
}

inline double deriv_power_log(const PowerLogPiece& f, double u) {
  const double lg = std::log(u);
  return pow_fast(u, f.p - 1.0) * pow_fast(lg, f.alpha * f.p - 1.0) *
         (f.p * lg + f.alpha * f.p);
}

inline double deriv_tabulated(const TabulatedPiece& f, double u) {
  const double x = std::log(u);
  const auto& lu = f.lu;
  std::size_t hi;
  if (x <= lu.front()) {
    hi = 1;
  } else if (x >= lu.back()) {
    hi = lu.size() - 1;
  } else {
    hi = static_cast<std::size_t>(std::upper_bound(lu.begin(), lu.end(), x) - lu.begin());
  }
  const double slope = (f.lv[hi] - f.lv[hi - 1]) / (lu[hi] - lu[hi - 1]);
  return slope * eval_tabulated(f, u) / u;
}

}  // namespace detail

class YoungFunction {
 public:
  YoungFunction() = default;

  YoungFunction(std::vector<Piece> pieces, bool nice) : pieces_(std::move(pieces)), nice_(nice) {
    validate();
  }

  static YoungFunction power(double p, double c = 1.0) {
    if (!(p >= 1.0) || !(c > 0.0)) throw std::invalid_argument("power: need p >= 1, c > 0");
    return YoungFunction({Piece{0.0, PowerPiece{c, p}}}, p > 1.0);
  }

  /// The L^p(log L)^alpha fixture: c u^2 below u0, u^p log^{alpha p}(u) above,
  /// with u0 = exp(max(1, 2|alpha|p/(p-2))) and c fixed by continuity. This
  /// choice keeps the tail piece increasing and convex from u0 on.
  static YoungFunction zygmund(double p, double alpha) {
    if (!(p > 2.0)) throw std::invalid_argument("zygmund: need p > 2");
    const double lu0 = std::max(1.0, 2.0 * std::abs(alpha) * p / (p - 2.0));
    const double u0 = std::exp(lu0);
    const double c = std::pow(u0, p - 2.0) * std::pow(lu0, alpha * p);
    return YoungFunction(
        {Piece{0.0, PowerPiece{c, 2.0}}, Piece{u0, PowerLogPiece{p, alpha}}}, true);
  }

  static YoungFunction from_table(std::vector<double> u, std::vector<double> v, bool nice) {
    TabulatedPiece t{std::move(u), std::move(v), {}, {}};
    t.build_logs();
    return YoungFunction({Piece{0.0, std::move(t)}}, nice);
  }

  bool nice() const { return nice_; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  double operator()(double u) const { return eval(u); }

  double eval(double u) const {
    if (u < 0.0) throw std::domain_error("YoungFunction: negative argument");
    if (u == 0.0) return 0.0;
    const Piece& pc = piece_at(u);
    return std::visit(
        [&](const auto& f) -> double {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, PowerPiece>) return detail::eval_power(f, u);
          else if constexpr (std::is_same_v<T, PowerLogPiece>) return detail::eval_power_log(f, u);
          else return detail::eval_tabulated(f, u);
        },
        pc.form);
  }

  /// One-sided derivative (from the piece containing u).
  double derivative(double u) const {
    if (u < 0.0) throw std::domain_error("YoungFunction: negative argument");
    if (u == 0.0) return 0.0;
    const Piece& pc = piece_at(u);
    return std::visit(
        [&](const auto& f) -> double {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, PowerPiece>) return detail::deriv_power(f, u);
          else if constexpr (std::is_same_v<T, PowerLogPiece>) return detail::deriv_power_log(f, u);
          else return detail::deriv_tabulated(f, u);
        },
        pc.form);
  }

  /// Solves Phi(u) = y for increasing Phi. Pure-power pieces are inverted in
  /// closed form; otherwise geometric bisection to |Phi(u)-y| <= 1e-10 max(1,y).
  double inverse(double y) const {
    if (y < 0.0) throw std::domain_error("YoungFunction::inverse: negative argument");
    if (y == 0.0) return 0.0;
    const double tol = 1e-10 * std::max(1.0, y);

    // Bracket [lo, hi] with Phi(lo) < y <= Phi(hi).
    double hi = std::max(1.0, pieces_.back().breakpoint);
    for (int i = 0; i < 4000 && eval(hi) < y; ++i) hi *= 2.0;
    double lo = hi;
    for (int i = 0; i < 4000 && eval(lo) >= y && lo > 1e-300; ++i) lo *= 0.5;
    if (eval(lo) >= y) return lo;

    // Closed form when the solution lies in a pure power piece.
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      if (const auto* pw = std::get_if<PowerPiece>(&pieces_[i].form)) {
        const double a = pieces_[i].breakpoint;
        const double b = (i + 1 < pieces_.size()) ? pieces_[i + 1].breakpoint
                                                  : std::numeric_limits<double>::infinity();
        const double u = std::pow(y / pw->c, 1.0 / pw->p);
        if (u >= a && u < b && std::abs(eval(u) - y) <= tol) return u;
      }
    }

    double best = hi, best_err = std::abs(eval(hi) - y);
    for (int it = 0; it < 300; ++it) {
      const double mid = std::sqrt(lo * hi);
      const double val = eval(mid);
      const double err = std::abs(val - y);
      if (err < best_err) {
        best = mid;
        best_err = err;
      }
      if (err <= tol || (hi - lo) <= 1e-16 * hi) break;
      if (val < y) lo = mid;
      else hi = mid;
    }
    return best;
  }

  /// Samples Phi(u)/u at 1e-8 and 1e8 to check N-function limit behavior.
  bool check_nice() const {
    const double lo = eval(1e-8) / 1e-8;
    const double hi = eval(1e8) / 1e8;
    return lo < 1e-2 && hi > 1e2 && eval(1e-12) > 0.0;
  }

  bool operator==(const YoungFunction& other) const {
    if (nice_ != other.nice_ || pieces_.size() != other.pieces_.size()) return false;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      if (pieces_[i].breakpoint != other.pieces_[i].breakpoint) return false;
      if (pieces_[i].form.index() != other.pieces_[i].form.index()) return false;
      const bool eq = std::visit(
          [&](const auto& a) -> bool {
            using T = std::decay_t<decltype(a)>;
            const auto& b = std::get<T>(other.pieces_[i].form);
            if constexpr (std::is_same_v<T, PowerPiece>) return a.c == b.c && a.p == b.p;
            else if constexpr (std::is_same_v<T, PowerLogPiece>)
              return a.p == b.p && a.alpha == b.alpha;
            else return a.u == b.u && a.v == b.v;
          },
          pieces_[i].form);
      if (!eq) return false;
    }
    return true;
  }

 private:
  std::vector<Piece> pieces_;
  bool nice_ = false;

  const Piece& piece_at(double u) const {
    // Pieces are few (1-3 in practice); linear scan from the back.
    for (std::size_t i = pieces_.size(); i-- > 1;) {
      if (u >= pieces_[i].breakpoint) return pieces_[i];
    }
    return pieces_.front();
  }

  void validate() const {
    if (pieces_.empty()) throw std::invalid_argument("YoungFunction: no pieces");
    if (pieces_.front().breakpoint != 0.0)
      throw std::invalid_argument("YoungFunction: first breakpoint must be 0");
    for (std::size_t i = 1; i < pieces_.size(); ++i) {
      if (!(pieces_[i].breakpoint > pieces_[i - 1].breakpoint))
        throw std::invalid_argument("YoungFunction: breakpoints must increase");
    }
    for (const Piece& pc : pieces_) {
      std::visit(
          [&](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, PowerPiece>) {
              if (!(f.c > 0.0) || !(f.p > 0.0))
                throw std::invalid_argument("power piece: need c > 0, p > 0");
            } else if constexpr (std::is_same_v<T, PowerLogPiece>) {
              if (!(pc.breakpoint > 1.0))
                throw std::invalid_argument("power_log piece: breakpoint must be > 1");
            } else {
              if (f.u.size() < 2 || f.u.size() != f.v.size())
                throw std::invalid_argument("tabulated piece: need >= 2 samples");
              for (std::size_t i = 0; i < f.u.size(); ++i) {
                if (!(f.u[i] > 0.0) || !(f.v[i] > 0.0))
                  throw std::invalid_argument("tabulated piece: samples must be positive");
                if (i > 0 && (!(f.u[i] > f.u[i - 1]) || !(f.v[i] >= f.v[i - 1])))
                  throw std::invalid_argument("tabulated piece: samples must increase");
              }
            }
          },
          pc.form);
    }
    // Continuity at interior breakpoints, relative tolerance 1e-9.
    for (std::size_t i = 1; i < pieces_.size(); ++i) {
      const double b = pieces_[i].breakpoint;
      const double left = eval_piece(pieces_[i - 1], b);
      const double right = eval_piece(pieces_[i], b);
      const double scale = std::max({std::abs(left), std::abs(right), 1e-300});
      if (std::abs(left - right) > 1e-9 * scale)
        throw std::invalid_argument("YoungFunction: discontinuity at breakpoint");
    }
  }

  static double eval_piece(const Piece& pc, double u) {
    return std::visit(
        [&](const auto& f) -> double {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, PowerPiece>) return detail::eval_power(f, u);
          else if constexpr (std::is_same_v<T, PowerLogPiece>) return detail::eval_power_log(f, u);
          else return detail::eval_tabulated(f, u);
        },
        pc.form);
  }
};

/// Minimum relative convexity margin min over a log grid of
/// [(Phi(u+h) + Phi(u-h))/2 - Phi(u)] / Phi(u) with h = 0.05 u.
/// Convex functions give a nonnegative value up to rounding.
inline double convexity_margin(const YoungFunction& phi, double u_lo, double u_hi,
                               std::size_t points = 400) {
  double worst = std::numeric_limits<double>::infinity();
  const double step = std::log(u_hi / u_lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double u = u_lo * std::exp(step * static_cast<double>(i));
    const double h = 0.05 * u;
    const double mid = phi.eval(u);
    if (mid <= 0.0) continue;
    const double avg = 0.5 * (phi.eval(u + h) + phi.eval(u - h));
    worst = std::min(worst, (avg - mid) / mid);
  }
  return worst;
}

// ---------------------------------------------------------------------------
// JSON serialization: {"pieces":[{"type","breakpoint","params"}...], "nice"}.
// Doubles survive the round trip bit-exactly (shortest-round-trip printing).

inline void to_json(nlohmann::json& j, const YoungFunction& phi) {
  nlohmann::json pieces = nlohmann::json::array();
  for (const Piece& pc : phi.pieces()) {
    nlohmann::json p;
    p["breakpoint"] = pc.breakpoint;
    std::visit(
        [&](const auto& f) {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, PowerPiece>) {
            p["type"] = "power";
            p["params"] = {{"c", f.c}, {"p", f.p}};
          } else if constexpr (std::is_same_v<T, PowerLogPiece>) {
            p["type"] = "power_log";
            p["params"] = {{"p", f.p}, {"alpha", f.alpha}};
          } else {
            p["type"] = "tabulated";
            p["params"] = {{"u", f.u}, {"v", f.v}};
          }
        },
        pc.form);
    pieces.push_back(std::move(p));
  }
  j = nlohmann::json{{"pieces", std::move(pieces)}, {"nice", phi.nice()}};
}

inline void from_json(const nlohmann::json& j, YoungFunction& phi) {
  std::vector<Piece> pieces;
  for (const auto& p : j.at("pieces")) {
    Piece pc;
    pc.breakpoint = p.at("breakpoint").get<double>();
    const std::string type = p.at("type").get<std::string>();
    const auto& params = p.at("params");
    if (type == "power") {
      pc.form = PowerPiece{params.at("c").get<double>(), params.at("p").get<double>()};
    } else if (type == "power_log") {
      pc.form = PowerLogPiece{params.at("p").get<double>(), params.at("alpha").get<double>()};
    } else if (type == "tabulated") {
      TabulatedPiece t;
      params.at("u").get_to(t.u);
      params.at("v").get_to(t.v);
      t.build_logs();
      pc.form = std::move(t);
    } else {
      throw std::invalid_argument("YoungFunction: unknown piece type '" + type + "'");
    }
    pieces.push_back(std::move(pc));
  }
  phi = YoungFunction(std::move(pieces), j.at("nice").get<bool>());
}

}  // namespace orlicz
