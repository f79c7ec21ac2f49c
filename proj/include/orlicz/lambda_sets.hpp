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
#include <cstdint>
#include <vector>

#include "luxemburg.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace orlicz {

/// Empirical lower bound for K_Phi(S) = sup over unit-l2 coefficient vectors
/// of the Phi-norm of the resulting polynomial, with the vector attaining it.
struct KEstimate {
  double lower_bound = 0.0;
  std::vector<double> best_coeffs;  // aligned with the sorted set elements
  int restarts = 0;
  int ascent_iters = 0;
  double converged_fraction = 1.0;
};

struct KOptions {
  int restarts = 2;
  int max_iters = 6;
  std::size_t grid_size = 0;  // 0 = default oversampling for the bandwidth
  double grad_eps = 1e-4;
  std::uint64_t seed = 1;
  bool sign_flip_pass = true;
  bool parallel_restarts = false;
};

namespace detail {

inline void normalize_l2(std::vector<double>& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  s = std::sqrt(s);
  if (s > 0.0)
    for (double& v : a) v /= s;
}

struct AscentOutcome {
  double value = 0.0;
  std::vector<double> coeffs;
  int iters = 0;
};

// Projected gradient ascent on the coefficient sphere. The norm is 1-homo-
// geneous, so the tangent step g - (g.a) a is the natural search direction;
// gradients are central differences through the evaluator's perturbed path.
inline AscentOutcome ascend(LuxemburgEvaluator& ev, std::vector<double> a,
                            const KOptions& opt) {
  normalize_l2(a);
  const std::size_t d = a.size();
  AscentOutcome out;
  out.value = ev.norm(a);
  out.coeffs = a;
  std::vector<double> grad(d);
  for (int iter = 0; iter < opt.max_iters; ++iter) {
    ++out.iters;
    double dot = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double up = ev.norm_perturbed(i, opt.grad_eps);
      const double dn = ev.norm_perturbed(i, -opt.grad_eps);
      grad[i] = (up - dn) / (2.0 * opt.grad_eps);
      dot += grad[i] * a[i];
    }
    double tan_norm = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      grad[i] -= dot * a[i];
      tan_norm += grad[i] * grad[i];
    }
    tan_norm = std::sqrt(tan_norm);
    if (tan_norm < 1e-11 * std::max(1.0, out.value)) break;
    for (double& v : grad) v /= tan_norm;

    double best_step_val = out.value;
    std::vector<double> best_step;
    for (double eta : {0.5, 0.2, 0.08, 0.03, 0.01}) {
      std::vector<double> trial(d);
      for (std::size_t i = 0; i < d; ++i) trial[i] = a[i] + eta * grad[i];
      normalize_l2(trial);
      const double v = ev.norm(trial);
      if (v > best_step_val + 1e-13) {
        best_step_val = v;
        best_step = std::move(trial);
      }
    }
    if (best_step.empty()) {
      ev.norm(a);  // restore cache for the flip pass
      break;
    }
    a = std::move(best_step);
    out.value = best_step_val;
    out.coeffs = a;
    ev.norm(a);
  }
  if (opt.sign_flip_pass) {
    // Greedy sign alignment; a flip of a_i is the perturbation -2 a_i.
    bool flipped = false;
    for (std::size_t i = 0; i < d; ++i) {
      if (a[i] == 0.0) continue;
      const double v = ev.norm_perturbed(i, -2.0 * a[i]);
      if (v > out.value + 1e-13) {
        a[i] = -a[i];
        out.value = v;
        out.coeffs = a;
        ev.norm(a);
        flipped = true;
      }
    }
    if (flipped) out.value = ev.norm(a);
  }
  return out;
}

}  // namespace detail

/// Multi-start lower bound for K_Phi(S): analytic candidates (the flat vector
/// and a single-frequency basis vector) plus seeded random-start ascents.
/// Every reported value is an actually attained norm, so this is a certified
/// lower bound; the only upper-bound route is the even-exponent oracle.
inline KEstimate k_phi_lower(const YoungFunction& phi, const FrequencySet& s,
                             KOptions opt = {}) {
  if (s.empty()) throw std::invalid_argument("k_phi_lower: empty frequency set");
  const std::size_t d = s.size();
  const std::size_t m =
      opt.grid_size ? opt.grid_size
                    : default_grid_size(std::max(std::abs(s.min()), std::abs(s.max())));
  LuxemburgEvaluator ev(phi, s.elems(), m);

  KEstimate est;
  est.restarts = opt.restarts;

  std::vector<double> flat(d, 1.0 / std::sqrt(static_cast<double>(d)));
  est.lower_bound = ev.norm(flat);
  est.best_coeffs = flat;

  std::vector<double> basis(d, 0.0);
  basis[0] = 1.0;  // |e_n| is 1 everywhere, so one basis vector represents all
  const double basis_val = ev.norm(basis);
  if (basis_val > est.lower_bound) {
    est.lower_bound = basis_val;
    est.best_coeffs = basis;
  }

  if (opt.restarts > 0 && d > 1) {
    std::vector<detail::AscentOutcome> outcomes(static_cast<std::size_t>(opt.restarts));
    const auto run_restart = [&](std::size_t r) {
      Rng rng(mix_seed(opt.seed, 0x6b70686cULL, r));
      std::vector<double> a(d);
      for (double& v : a) v = rng.gaussian();
      if (opt.parallel_restarts) {
        LuxemburgEvaluator local(phi, s.elems(), m);
        outcomes[r] = detail::ascend(local, std::move(a), opt);
      } else {
        outcomes[r] = detail::ascend(ev, std::move(a), opt);
      }
    };
    if (opt.parallel_restarts) {
      parallel_for(outcomes.size(), run_restart);
    } else {
      for (std::size_t r = 0; r < outcomes.size(); ++r) run_restart(r);
    }
    double best_restart = 0.0;
    for (const auto& oc : outcomes) best_restart = std::max(best_restart, oc.value);
    int converged = 0;
    for (const auto& oc : outcomes) {
      est.ascent_iters += oc.iters;
      if (oc.value >= best_restart - 1e-2 * std::max(1.0, best_restart)) ++converged;
      if (oc.value > est.lower_bound) {
        est.lower_bound = oc.value;
        est.best_coeffs = oc.coeffs;
      }
    }
    est.converged_fraction =
        static_cast<double>(converged) / static_cast<double>(opt.restarts);
  }
  detail::normalize_l2(est.best_coeffs);
  return est;
}

/// A_S(N) up to |b| <= b_max: the largest count of S inside an arithmetic
/// progression {a + b, ..., a + N b}. Exact for the searched b range (the sup
/// over all b is an unbounded search; negative b mirrors positive b).
inline std::int64_t ap_density(const FrequencySet& s, std::int64_t n, std::int64_t b_max) {
  if (n < 1) throw std::invalid_argument("ap_density: need N >= 1");
  if (b_max < 1) throw std::invalid_argument("ap_density: need b_max >= 1");
  if (s.empty()) return 0;
  std::int64_t best = 0;
  std::vector<std::vector<std::int64_t>> buckets;
  for (std::int64_t b = 1; b <= b_max; ++b) {
    buckets.assign(static_cast<std::size_t>(b), {});
    for (std::int64_t v : s.elems()) {
      const std::int64_t r = ((v % b) + b) % b;
      buckets[static_cast<std::size_t>(r)].push_back((v - r) / b);  // sorted already
    }
    for (const auto& q : buckets) {
      std::size_t left = 0;
      for (std::size_t right = 0; right < q.size(); ++right) {
        while (q[right] - q[left] > n - 1) ++left;
        best = std::max<std::int64_t>(best, static_cast<std::int64_t>(right - left + 1));
      }
    }
  }
  return std::min<std::int64_t>(best, n);
}

/// (N, |S cap [-N, N]| / Phi^{-1}(N)^2) along N_list.
inline std::vector<std::pair<std::int64_t, double>> density_ratio(
    const FrequencySet& s, const YoungFunction& phi, const std::vector<std::int64_t>& n_list) {
  std::vector<std::pair<std::int64_t, double>> out;
  out.reserve(n_list.size());
  for (std::int64_t n : n_list) {
    const double inv = phi.inverse(static_cast<double>(n));
    out.emplace_back(n, static_cast<double>(s.count_in(-n, n)) / (inv * inv));
  }
  return out;
}

/// Fejer kernel bound ||K_N||_Psi <= 2 Phi^{-1}(N); holds for N beyond a
/// Phi-dependent threshold that is observed, not asserted a priori.
struct FejerBound {
  double lhs = 0.0;
  double rhs = 0.0;
};

inline FejerBound fejer_psi_bound(const YoungFunction& phi, const YoungFunction& psi,
                                  std::int64_t n) {
  const double lhs = luxemburg_norm(psi, fejer_kernel(n)).value;
  return {lhs, 2.0 * phi.inverse(static_cast<double>(n))};
}

inline FejerBound fejer_psi_bound(const YoungFunction& phi, std::int64_t n) {
  return fejer_psi_bound(phi, complementary(phi), n);
}

/// || sum_{n in S_r} e_n ||_{Phi2} * Phi2^{-1}(2^r) / Phi1^{-1}(2^r)^2 -- the
/// quantity whose growth across r witnesses the failure of the Lambda(Phi2)
/// property for the constructed sets.
inline double witness_ratio(const FrequencySet& s_r, const YoungFunction& phi1,
                            const YoungFunction& phi2, int r) {
  if (s_r.empty()) throw std::invalid_argument("witness_ratio: empty shell");
  const double two_r = std::ldexp(1.0, r);
  const auto f = TrigPolynomial::flat(s_r, Complex{1.0, 0.0});
  const double norm2 = luxemburg_norm(phi2, f).value;
  const double i1 = phi1.inverse(two_r);
  return norm2 * phi2.inverse(two_r) / (i1 * i1);
}

}  // namespace orlicz
