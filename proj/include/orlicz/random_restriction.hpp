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
#include <string>
#include <vector>

#include "lambda_sets.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace orlicz {

/// Bernoulli selection density delta = (Phi^{-1}(diam E))^2 / |E|, clamped
/// into [0, 1].
inline double selection_density(const YoungFunction& phi, const FrequencySet& e) {
  if (e.empty()) throw std::invalid_argument("selection_density: empty set");
  const double inv = phi.inverse(static_cast<double>(e.diam()));
  return std::min(1.0, inv * inv / static_cast<double>(e.size()));
}

/// J = {i in E : xi_i = 1} with i.i.d. Bernoulli(delta) selectors drawn from
/// the seeded stream; bit-reproducible for a fixed seed.
inline FrequencySet sample_restriction(const FrequencySet& e, double delta,
                                       std::uint64_t seed) {
  if (!(delta >= 0.0 && delta <= 1.0))
    throw std::invalid_argument("sample_restriction: delta must be in [0, 1]");
  Rng rng(seed);
  std::vector<std::int64_t> kept;
  for (std::int64_t n : e.elems()) {
    if (rng.bernoulli(delta)) kept.push_back(n);
  }
  return FrequencySet(std::move(kept));
}

/// Measured K_{Phi0}(E) against the source-condition scale |E|^{1/2} /
/// Phi0^{-1}(diam E). The implicit constant is unspecified, so the ratio is
/// reported rather than judged.
struct SourceCondition {
  double k_measured = 0.0;
  double bound = 0.0;
  KEstimate detail;
};

inline SourceCondition verify_source_condition(const YoungFunction& phi0,
                                               const FrequencySet& e, KOptions opt = {}) {
  if (e.empty()) throw std::invalid_argument("verify_source_condition: empty set");
  SourceCondition out;
  out.detail = k_phi_lower(phi0, e, opt);
  out.k_measured = out.detail.lower_bound;
  out.bound = std::sqrt(static_cast<double>(e.size())) /
              phi0.inverse(static_cast<double>(e.diam()));
  return out;
}

/// One seeded selector draw with its K estimate; J is always a subset of E
/// and delta is the configured selection density.
struct SelectorRun {
  double delta = 0.0;
  std::uint64_t seed = 0;
  FrequencySet j;
  KEstimate k_estimate;
};

/// Draws J from E at the configured density and estimates K_Phi(J). The
/// sampling and ascent streams are derived from the run seed, so a run is
/// reproducible in isolation.
inline SelectorRun run_selector(const YoungFunction& phi, const FrequencySet& e,
                                double delta, std::uint64_t seed, KOptions inner = {}) {
  SelectorRun run;
  run.delta = delta;
  run.seed = seed;
  run.j = sample_restriction(e, delta, mix_seed(seed, 0x73656cULL));
  if (!run.j.empty()) {
    inner.seed = mix_seed(seed, 0x6b657374ULL);
    inner.parallel_restarts = false;
    run.k_estimate = k_phi_lower(phi, run.j, inner);
  }
  return run;
}

struct MonteCarloStats {
  double delta = 0.0;
  double mean = 0.0;
  double median = 0.0;
  double max = 0.0;
  std::vector<double> per_trial;      // indexed by trial; reduction order fixed
  std::vector<std::size_t> j_sizes;
  double source_ratio = 0.0;          // candidate-only K(E)/bound diagnostic
  std::vector<std::string> warnings;
};

/// Monte Carlo over random restrictions: per trial, J is drawn with
/// delta = selection_density(phi, E) and K_Phi(J) estimated from below.
/// Trials run in parallel but land in per-trial slots, and the statistics
/// fold in index order, so results do not depend on the worker count.
inline MonteCarloStats monte_carlo_K(const YoungFunction& phi, const YoungFunction& phi0,
                                     const FrequencySet& e, int trials, std::uint64_t seed,
                                     KOptions inner = {}) {
  if (trials < 8) throw std::invalid_argument("monte_carlo_K: need trials >= 8");
  if (e.empty()) throw std::invalid_argument("monte_carlo_K: empty set");
  MonteCarloStats stats;
  stats.delta = selection_density(phi, e);

  const auto idx0 = matuszewska_indices(phi0, 1e8);
  const auto idx1 = matuszewska_indices(phi, 1e8);
  if (idx0.beta_inf > idx1.alpha_inf - 0.05) {
    stats.warnings.push_back("index gap beta(phi0) < alpha(phi) violated or within 0.05");
  }
  {
    KOptions cand;
    cand.restarts = 0;
    cand.grid_size = inner.grid_size;
    const auto src = verify_source_condition(phi0, e, cand);
    stats.source_ratio = src.k_measured / src.bound;
  }

  stats.per_trial.assign(static_cast<std::size_t>(trials), 0.0);
  stats.j_sizes.assign(static_cast<std::size_t>(trials), 0);
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    const auto run = run_selector(phi, e, stats.delta, mix_seed(seed, t), inner);
    stats.j_sizes[t] = run.j.size();
    stats.per_trial[t] = run.k_estimate.lower_bound;
  });

  double acc = 0.0;
  for (double v : stats.per_trial) {
    acc += v;
    stats.max = std::max(stats.max, v);
  }
  stats.mean = acc / static_cast<double>(trials);
  std::vector<double> sorted = stats.per_trial;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  stats.median = (n % 2 == 1) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  return stats;
}

struct Shell {
  int r = 0;
  std::size_t e_size = 0;     // |E_{2^r}|
  double delta = 0.0;
  bool delta_clamped = false;
  FrequencySet e_n;
  FrequencySet s_r;
  double k_est = 0.0;
  bool fallback_candidate = false;  // cardinality window rejected all draws
};

struct ShellConstruction {
  int r_min = 0;
  int r_max = 0;
  std::uint64_t seed = 0;
  std::vector<Shell> shells;
  FrequencySet s;  // union of the kept shells
  std::vector<std::string> warnings;
};

struct BuildOptions {
  int trials_per_shell = 6;
  KOptions selection;  // scoring of candidate draws (default: candidates only)
  KOptions final_estimate;
  BuildOptions() {
    selection.restarts = 0;
    final_estimate.restarts = 2;
    final_estimate.max_iters = 4;
  }
};

/// Dyadic-shell construction of a Lambda(Phi1)-set inside E: per shell r,
/// trials_per_shell Bernoulli draws at delta_r = (Phi1^{-1}(2^r))^2/|E_{2^r}|,
/// keeping draws whose size lands in [delta|E|/2, 2 delta|E|] and, among
/// those, the draw with the smallest estimated K_Phi1 (best-of-trials stands
/// in for the existence argument). S is the disjoint union over r.
inline ShellConstruction build_lambda_set(const YoungFunction& phi0,
                                          const YoungFunction& phi1, const FrequencySet& e,
                                          int r_min, int r_max, std::uint64_t seed,
                                          BuildOptions opt = {}) {
  if (r_min < 0 || r_max < r_min) throw std::invalid_argument("build_lambda_set: bad r range");
  if (opt.trials_per_shell < 1)
    throw std::invalid_argument("build_lambda_set: need trials_per_shell >= 1");
  ShellConstruction out;
  out.r_min = r_min;
  out.r_max = r_max;
  out.seed = seed;

  // Hypothesis checks are estimator-based; warn rather than refuse.
  if (!check_delta2_nabla2(phi1).delta2 || !check_delta2_nabla2(phi1).nabla2)
    out.warnings.push_back("phi1 does not look like Delta_2 and nabla_2 on the test range");
  {
    const auto i0 = matuszewska_indices(phi0, 1e8);
    const auto i1 = matuszewska_indices(phi1, 1e8);
    if (i0.beta_inf > i1.alpha_inf - 0.05)
      out.warnings.push_back("index gap beta(phi0) < alpha(phi1) violated or within 0.05");
  }

  for (int r = r_min; r <= r_max; ++r) {
    Shell shell;
    shell.r = r;
    shell.e_n = shell_slice(e, r);
    shell.e_size = shell.e_n.size();
    if (shell.e_n.empty()) {
      out.warnings.push_back("shell r=" + std::to_string(r) + " is empty; skipped");
      continue;
    }
    const double two_r = std::ldexp(1.0, r);
    const double inv = phi1.inverse(two_r);
    double delta = inv * inv / static_cast<double>(shell.e_size);
    if (delta > 1.0) {
      delta = 1.0;
      shell.delta_clamped = true;
      out.warnings.push_back("shell r=" + std::to_string(r) + ": delta clamped to 1");
    }
    shell.delta = delta;

    const double target = delta * static_cast<double>(shell.e_size);
    const int trials = opt.trials_per_shell;
    std::vector<FrequencySet> draws(static_cast<std::size_t>(trials));
    std::vector<double> scores(static_cast<std::size_t>(trials),
                               std::numeric_limits<double>::infinity());
    parallel_for(static_cast<std::size_t>(trials), [&](std::size_t c) {
      draws[c] = sample_restriction(shell.e_n, delta,
                                    mix_seed(seed, static_cast<std::uint64_t>(r), c));
      if (draws[c].empty()) return;
      const double size = static_cast<double>(draws[c].size());
      if (size < 0.5 * target || size > 2.0 * target) return;  // outside window
      KOptions sopt = opt.selection;
      sopt.seed = mix_seed(seed, static_cast<std::uint64_t>(r), c, 0x7363ULL);
      sopt.parallel_restarts = false;
      scores[c] = k_phi_lower(phi1, draws[c], sopt).lower_bound;
    });

    std::size_t best = scores.size();
    for (std::size_t c = 0; c < scores.size(); ++c) {
      if (scores[c] < std::numeric_limits<double>::infinity() &&
          (best == scores.size() || scores[c] < scores[best]))
        best = c;
    }
    if (best == scores.size()) {
      // No draw satisfied the cardinality window; fall back to the draw
      // closest to the target size (plain sampling when trials == 1).
      double best_gap = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < draws.size(); ++c) {
        if (draws[c].empty()) continue;
        const double gap = std::abs(static_cast<double>(draws[c].size()) - target);
        if (gap < best_gap) {
          best_gap = gap;
          best = c;
        }
      }
      if (best == scores.size()) {
        out.warnings.push_back("shell r=" + std::to_string(r) + ": all draws empty; skipped");
        continue;
      }
      shell.fallback_candidate = true;
      out.warnings.push_back("shell r=" + std::to_string(r) +
                             ": cardinality window rejected all draws; kept closest");
    }
    shell.s_r = draws[best];
    {
      KOptions fopt = opt.final_estimate;
      fopt.seed = mix_seed(seed, static_cast<std::uint64_t>(r), 0xf1f1ULL);
      fopt.parallel_restarts = true;
      shell.k_est = k_phi_lower(phi1, shell.s_r, fopt).lower_bound;
    }
    out.s = out.s.unioned(shell.s_r);
    out.shells.push_back(std::move(shell));
  }
  return out;
}

// CLI artifact: {phi0, phi1, r_range, shells:[{r, S_r, k_est}], seed} plus
// per-shell diagnostics; reusable as input to the lambda_sets checks.
inline void to_json(nlohmann::json& j, const ShellConstruction& sc) {
  nlohmann::json shells = nlohmann::json::array();
  for (const auto& sh : sc.shells) {
    shells.push_back({{"r", sh.r},
                      {"S_r", sh.s_r},
                      {"k_est", sh.k_est},
                      {"e_size", sh.e_size},
                      {"delta", sh.delta},
                      {"delta_clamped", sh.delta_clamped},
                      {"fallback_candidate", sh.fallback_candidate}});
  }
  j = nlohmann::json{{"r_range", {sc.r_min, sc.r_max}},
                     {"seed", sc.seed},
                     {"shells", std::move(shells)},
                     {"S", sc.s},
                     {"warnings", sc.warnings}};
}

inline void shell_construction_set_phis(nlohmann::json& j, const YoungFunction& phi0,
                                        const YoungFunction& phi1) {
  j["phi0"] = phi0;
  j["phi1"] = phi1;
}

inline void from_json(const nlohmann::json& j, ShellConstruction& sc) {
  sc = ShellConstruction{};
  sc.r_min = j.at("r_range").at(0).get<int>();
  sc.r_max = j.at("r_range").at(1).get<int>();
  sc.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& sh : j.at("shells")) {
    Shell shell;
    shell.r = sh.at("r").get<int>();
    shell.s_r = sh.at("S_r").get<FrequencySet>();
    shell.k_est = sh.at("k_est").get<double>();
    if (sh.contains("e_size")) shell.e_size = sh.at("e_size").get<std::size_t>();
    if (sh.contains("delta")) shell.delta = sh.at("delta").get<double>();
    sc.shells.push_back(std::move(shell));
  }
  if (j.contains("S")) sc.s = j.at("S").get<FrequencySet>();
  if (j.contains("warnings")) j.at("warnings").get_to(sc.warnings);
}

}  // namespace orlicz
