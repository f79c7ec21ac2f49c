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

// Reproducible experiment runner:
//
//   orlicz-lambda <command> --config <file.json> [--seed S] [--out dir]
//                 [--threads k]
//
// Commands: norm indices conj knorm density fejer sample mc build lp witness
// accept. Each run writes report.json, report.csv and determinism.sha256 to
// the output directory; identical config+seed give identical hashes at any
// thread count. Exit codes: 0 ok, 2 finished with hypothesis warnings,
// 1 error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "CLI11.hpp"
#include "orlicz/acceptance.hpp"
#include "orlicz/lambda_sets.hpp"
#include "orlicz/littlewood_paley.hpp"
#include "orlicz/luxemburg.hpp"
#include "orlicz/random_restriction.hpp"
#include "orlicz/report.hpp"

namespace {

using nlohmann::json;
using namespace orlicz;

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key))
      throw std::invalid_argument("config: unknown key '" + key + "' in " + where);
  }
}

YoungFunction parse_young(const json& j, const std::string& where) {
  if (j.contains("pieces")) return j.get<YoungFunction>();
  check_keys(j, {"kind", "p", "c", "alpha"}, where);
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "power") return YoungFunction::power(j.at("p").get<double>(), j.value("c", 1.0));
  if (kind == "zygmund")
    return YoungFunction::zygmund(j.at("p").get<double>(), j.at("alpha").get<double>());
  throw std::invalid_argument("config: unknown Young function kind '" + kind + "' in " + where);
}

FrequencySet parse_set(const json& j, const std::string& where) {
  check_keys(j, {"kind", "a", "b", "lo", "hi", "reflect", "elems", "path", "h", "count"}, where);
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "interval")
    return FrequencySet::interval(j.at("a").get<std::int64_t>(), j.at("b").get<std::int64_t>());
  if (kind == "squares")
    return FrequencySet::squares(j.at("lo").get<std::int64_t>(), j.at("hi").get<std::int64_t>(),
                                 j.value("reflect", false));
  if (kind == "list") return FrequencySet(j.at("elems").get<std::vector<std::int64_t>>());
  if (kind == "bh") return greedy_bh_set(j.at("h").get<int>(), j.at("count").get<std::size_t>());
  if (kind == "file") {
    std::ifstream is(j.at("path").get<std::string>());
    if (!is) throw std::invalid_argument("config: cannot open set file in " + where);
    json data;
    is >> data;
    return data.get<FrequencySet>();
  }
  throw std::invalid_argument("config: unknown set kind '" + kind + "' in " + where);
}

TrigPolynomial parse_poly(const json& j, const std::string& where) {
  if (j.contains("coeffs")) {
    check_keys(j, {"coeffs"}, where);
    return j.at("coeffs").get<TrigPolynomial>();
  }
  if (j.contains("flat")) {
    check_keys(j, {"flat"}, where);
    const auto s = parse_set(j.at("flat"), where + ".flat");
    if (s.empty()) throw std::invalid_argument("config: empty flat set in " + where);
    const double a = 1.0 / std::sqrt(static_cast<double>(s.size()));
    return TrigPolynomial::flat(s, Complex{a, 0.0});
  }
  throw std::invalid_argument("config: polynomial needs 'coeffs' or 'flat' in " + where);
}

json index_json(const IndexEstimate& est) {
  return {{"alpha_inf", est.alpha_inf}, {"beta_inf", est.beta_inf},
          {"p_inf", est.p_inf},         {"q_inf", est.q_inf},
          {"u_max", est.u_max},         {"slope_fit_residual", est.slope_fit_residual},
          {"regular", est.regular},     {"alpha_raw", est.alpha_raw},
          {"beta_raw", est.beta_raw}};
}

json k_json(const KEstimate& est) {
  return {{"lower_bound", est.lower_bound},
          {"restarts", est.restarts},
          {"ascent_iters", est.ascent_iters},
          {"converged_fraction", est.converged_fraction}};
}

KOptions k_options(const json& cfg, std::uint64_t seed) {
  KOptions opt;
  opt.restarts = cfg.value("restarts", 2);
  opt.max_iters = cfg.value("iters", 6);
  opt.grid_size = cfg.value("M", 0);
  opt.seed = seed;
  return opt;
}

// ---------------------------------------------------------------------------

int run_norm(const json& cfg, ExperimentReport& rep, const std::filesystem::path& out) {
  check_keys(cfg, {"schema_version", "seed", "phi", "f", "M", "emit_grid"}, "norm");
  const auto phi = parse_young(cfg.at("phi"), "phi");
  const auto f = parse_poly(cfg.at("f"), "f");
  const std::size_t m = cfg.value("M", 0);
  const auto res = luxemburg_norm(phi, f, m);
  ReportRow row;
  row.op = "luxemburg_norm";
  row.params = {{"M", res.grid_size}};
  row.values = {{"value", res.value}};
  row.diagnostics = {{"modular_at_value", res.modular_at_value},
                     {"bisection_iters", res.bisection_iters}};
  rep.add_row(std::move(row));
  if (cfg.value("emit_grid", false)) {
    std::ofstream os(out / "grid.csv");
    write_grid_csv(os, evaluate_grid(f, res.grid_size ? res.grid_size
                                                      : default_grid_size(f.max_abs_freq())));
  }
  return 0;
}

int run_indices(const json& cfg, ExperimentReport& rep, const std::filesystem::path&) {
  check_keys(cfg, {"schema_version", "seed", "phi", "u_max"}, "indices");
  const auto phi = parse_young(cfg.at("phi"), "phi");
  const auto est = matuszewska_indices(phi, cfg.value("u_max", 1e8));
  const auto dbl = check_delta2_nabla2(phi);
  ReportRow row;
  row.op = "matuszewska_indices";
  row.params = {{"u_max", est.u_max}};
  row.values = index_json(est);
  row.diagnostics = {{"delta2", dbl.delta2},
                     {"nabla2", dbl.nabla2},
                     {"doubling_sup", dbl.sup_ratio},
                     {"doubling_inf", dbl.inf_ratio}};
  rep.add_row(std::move(row));
  if (!est.regular) rep.warnings.push_back("index fit residual above threshold (irregular Phi)");
  return 0;
}

int run_conj(const json& cfg, ExperimentReport& rep, const std::filesystem::path& out) {
  check_keys(cfg, {"schema_version", "seed", "phi", "v_lo", "v_hi", "points", "sandwich_points"},
             "conj");
  const auto phi = parse_young(cfg.at("phi"), "phi");
  LogGrid grid;
  grid.lo = cfg.value("v_lo", 1e-8);
  grid.hi = cfg.value("v_hi", 1e8);
  grid.points = cfg.value("points", 4801);
  const auto psi = complementary(phi, grid);
  {
    std::ofstream os(out / "psi.json");
    os << json(psi).dump(2) << "\n";
  }
  const int samples = cfg.value("sandwich_points", 25);
  for (int k = 0; k < samples; ++k) {
    const double u = 1e-2 * std::pow(1e10, static_cast<double>(k) / std::max(1, samples - 1));
    const double prod = phi.inverse(u) * psi.inverse(u);
    ReportRow row;
    row.op = "inverse_sandwich";
    row.params = {{"u", u}};
    row.values = {{"product_over_u", prod / u}};
    rep.add_row(std::move(row));
  }
  return 0;
}

int run_knorm(const json& cfg, ExperimentReport& rep, const std::filesystem::path&) {
  check_keys(cfg, {"schema_version", "seed", "phi", "set", "restarts", "iters", "M"}, "knorm");
  const auto phi = parse_young(cfg.at("phi"), "phi");
  const auto s = parse_set(cfg.at("set"), "set");
  KOptions opt = k_options(cfg, rep.seed);
  opt.parallel_restarts = true;
  const auto est = k_phi_lower(phi, s, opt);
  ReportRow row;
  row.op = "k_phi_lower";
  row.params = {{"set_size", s.size()}, {"restarts", opt.restarts}};
  row.values = k_json(est);
  rep.add_row(std::move(row));
  return 0;
}

int run_density(const json& cfg, ExperimentReport& rep, const std::filesystem::path&) {
  check_keys(cfg, {"schema_version", "seed", "set", "phi", "N_list", "ap"}, "density");
  const auto s = parse_set(cfg.at("set"), "set");
  const auto phi = parse_young(cfg.at("phi"), "phi");
  const auto ns = cfg.at("N_list").get<std::vector<std::int64_t>>();
  for (const auto& [n, ratio] : density_ratio(s, phi, ns)) {
    ReportRow row;
    row.op = "density_ratio";
    row.params = {{"N", n}};
    row.values = {{"count", s.count_in(-n, n)}, {"ratio", ratio}};
    rep.add_row(std::move(row));
  }
  if (cfg.contains("ap")) {
    check_keys(cfg.at("ap"), {"N", "b_max"}, "ap");
    const auto n = cfg.at("ap").at("N").get<std::int64_t>();
    const auto b_max = cfg.at("ap").at("b_max").get<std::int64_t>();
    ReportRow row;
    row.op = "ap_density";
    row.params = {{"N", n}, {"b_max", b_max}};
    row.values = {{"value", ap_density(s, n, b_max)}};
    rep.add_row(std::move(row));
  }
  return 0;
}

int run_fejer(const json& cfg, ExperimentReport& rep, const std::filesystem::path&) {
  check_keys(cfg, {"schema_version", "seed", "phi", "N_list"}, "fejer");
  const auto phi = parse_young(cfg.at("phi"), "phi");
  const auto psi = complementary(phi);
  for (std::int64_t n : cfg.at("N_list").get<std::vector<std::int64_t>>()) {
    const auto b = fejer_psi_bound(phi, psi, n);
    ReportRow row;
    row.op = "fejer_psi_bound";
    row.params = {{"N", n}};
    row.values = {{"lhs", b.lhs}, {"rhs", b.rhs}, {"holds", b.lhs <= b.rhs}};
    rep.add_row(std::move(row));
    if (b.lhs > b.rhs)
      rep.warnings.push_back("fejer bound not yet in force at N=" + std::to_string(n));
  }
  return 0;
}

int run_sample(const json& cfg, ExperimentReport& rep, const std::filesystem::path&) {
  check_keys(cfg, {"schema_version", "seed", "set", "delta", "phi"}, "sample");
  const auto s = parse_set(cfg.at("set"), "set");
  double delta;
  if (cfg.contains("delta")) {
    delta = cfg.at("delta").get<double>();
  } else {
    delta = selection_density(parse_young(cfg.at("phi"), "phi"), s);
  }
  const auto j = sample_restriction(s, delta, rep.seed);
  ReportRow row;
  row.op = "sample_restriction";
  row.params = {{"delta", delta}, {"set_size", s.size()}};
  row.values = {{"J", j}, {"J_size", j.size()}};
  rep.add_row(std::move(row));
  return 0;
}

int run_mc(const json& cfg, ExperimentReport& rep, const std::filesystem::path&) {
  check_keys(cfg, {"schema_version", "seed", "phi", "phi0", "set", "trials", "restarts", "iters",
                   "M"},
             "mc");
  const auto phi = parse_young(cfg.at("phi"), "phi");
  const auto phi0 = parse_young(cfg.at("phi0"), "phi0");
  const auto s = parse_set(cfg.at("set"), "set");
  const int trials = cfg.at("trials").get<int>();
  KOptions inner = k_options(cfg, rep.seed);
  const auto stats = monte_carlo_K(phi, phi0, s, trials, rep.seed, inner);
  ReportRow row;
  row.op = "monte_carlo_K";
  row.params = {{"trials", trials}, {"set_size", s.size()}, {"delta", stats.delta}};
  row.values = {{"mean", stats.mean}, {"median", stats.median}, {"max", stats.max},
                {"per_trial", stats.per_trial}};
  row.diagnostics = {{"j_sizes", stats.j_sizes}, {"source_ratio", stats.source_ratio}};
  rep.add_row(std::move(row));
  for (const auto& w : stats.warnings) rep.warnings.push_back(w);
  return 0;
}

int run_build(const json& cfg, ExperimentReport& rep, const std::filesystem::path& out) {
  check_keys(cfg, {"schema_version", "seed", "phi0", "phi1", "set", "r_min", "r_max",
                   "trials_per_shell", "selection_restarts", "final_restarts"},
             "build");
  const auto phi0 = parse_young(cfg.at("phi0"), "phi0");
  const auto phi1 = parse_young(cfg.at("phi1"), "phi1");
  const auto e = parse_set(cfg.at("set"), "set");
  BuildOptions opt;
  opt.trials_per_shell = cfg.value("trials_per_shell", 6);
  opt.selection.restarts = cfg.value("selection_restarts", 0);
  opt.final_estimate.restarts = cfg.value("final_restarts", 2);
  const auto sc = build_lambda_set(phi0, phi1, e, cfg.at("r_min").get<int>(),
                                   cfg.at("r_max").get<int>(), rep.seed, opt);
  json artifact = sc;
  shell_construction_set_phis(artifact, phi0, phi1);
  {
    std::ofstream os(out / "shell_construction.json");
    os << artifact.dump(2) << "\n";
  }
  for (const auto& sh : sc.shells) {
    ReportRow row;
    row.op = "build_shell";
    row.params = {{"r", sh.r}, {"e_size", sh.e_size}, {"delta", sh.delta}};
    row.values = {{"S_r_size", sh.s_r.size()}, {"k_est", sh.k_est}};
    row.diagnostics = {{"delta_clamped", sh.delta_clamped},
                       {"fallback_candidate", sh.fallback_candidate}};
    rep.add_row(std::move(row));
  }
  ReportRow total;
  total.op = "build_union";
  total.values = {{"S_size", sc.s.size()}};
  rep.add_row(std::move(total));
  for (const auto& w : sc.warnings) rep.warnings.push_back(w);
  return 0;
}

int run_lp(const json& cfg, ExperimentReport& rep, const std::filesystem::path&) {
  check_keys(cfg, {"schema_version", "seed", "phi", "f", "corpus", "t_samples"}, "lp");
  const auto phi = parse_young(cfg.at("phi"), "phi");
  std::vector<TrigPolynomial> fs;
  if (cfg.contains("f")) {
    fs.push_back(parse_poly(cfg.at("f"), "f"));
  } else {
    const auto& corpus = cfg.at("corpus");
    check_keys(corpus, {"count", "max_freq", "terms"}, "corpus");
    Rng rng(mix_seed(rep.seed, 0x6c70ULL));
    const int count = corpus.at("count").get<int>();
    for (int i = 0; i < count; ++i)
      fs.push_back(random_trig_poly(rng, corpus.at("max_freq").get<std::int64_t>(),
                                    corpus.at("terms").get<std::size_t>(), true));
  }
  const int t_samples = cfg.value("t_samples", 0);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const double ratio = square_function_ratio(phi, fs[i]);
    TrigPolynomial sum;
    for (int j = 0; j <= lp_j_max(fs[i]); ++j) sum += project(fs[i], j);
    double recon = 0.0;
    for (const auto& [n, a] : fs[i].coeffs())
      recon = std::max(recon, std::abs(sum.coeff(n) - a));
    ReportRow row;
    row.op = "square_function_ratio";
    row.params = {{"index", i}, {"max_abs_freq", fs[i].max_abs_freq()}};
    row.values = {{"ratio", ratio}, {"reconstruction_err", recon}};
    if (t_samples > 0) {
      const auto st =
          rademacher_randomized_norm(phi, fs[i], t_samples, mix_seed(rep.seed, 0x7261ULL, i));
      row.values["randomized_max"] = st.max;
      row.values["randomized_mean"] = st.mean;
    }
    rep.add_row(std::move(row));
  }
  return 0;
}

int run_witness(const json& cfg, ExperimentReport& rep, const std::filesystem::path&) {
  check_keys(cfg, {"schema_version", "seed", "phi1", "phi2", "r_list", "from_build"}, "witness");
  const auto phi1 = parse_young(cfg.at("phi1"), "phi1");
  const auto phi2 = parse_young(cfg.at("phi2"), "phi2");
  std::vector<std::pair<int, FrequencySet>> shells;
  if (cfg.contains("from_build")) {
    std::ifstream is(cfg.at("from_build").get<std::string>());
    if (!is) throw std::invalid_argument("witness: cannot open from_build artifact");
    json data;
    is >> data;
    const auto sc = data.get<ShellConstruction>();
    const auto wanted = cfg.contains("r_list")
                            ? cfg.at("r_list").get<std::vector<int>>()
                            : std::vector<int>{};
    for (const auto& sh : sc.shells) {
      if (wanted.empty() ||
          std::find(wanted.begin(), wanted.end(), sh.r) != wanted.end())
        shells.emplace_back(sh.r, sh.s_r);
    }
  } else {
    // Flat shells at the construction-target size ceil(Phi1^{-1}(2^r)^2).
    for (int r : cfg.at("r_list").get<std::vector<int>>()) {
      const double inv = phi1.inverse(std::ldexp(1.0, r));
      const auto size = static_cast<std::int64_t>(std::ceil(inv * inv));
      const std::int64_t lo = std::int64_t{1} << r;
      shells.emplace_back(r, FrequencySet::interval(lo, lo + size - 1));
    }
  }
  for (const auto& [r, s_r] : shells) {
    if (s_r.empty()) {
      rep.warnings.push_back("witness: empty shell r=" + std::to_string(r));
      continue;
    }
    const double ratio = witness_ratio(s_r, phi1, phi2, r);
    const double two_r = std::ldexp(1.0, r);
    ReportRow row;
    row.op = "witness_ratio";
    row.params = {{"r", r}, {"shell_size", s_r.size()}};
    row.values = {{"ratio", ratio},
                  {"inverse_ratio", phi1.inverse(two_r) / phi2.inverse(two_r)}};
    rep.add_row(std::move(row));
  }
  return 0;
}

int run_accept(const json& cfg, ExperimentReport& rep, const std::filesystem::path&) {
  check_keys(cfg, {"schema_version", "seed", "suite"}, "accept");
  const std::string suite = cfg.value("suite", "full");
  const auto results = run_acceptance(suite);  // throws on unknown suite
  int failures = 0;
  for (const auto& r : results) {
    ReportRow row;
    row.op = "acceptance_criterion";
    row.params = {{"id", r.id}, {"name", r.name}};
    row.values = {{"pass", r.pass}, {"detail", r.detail}};
    row.diagnostics = {{"seconds", r.seconds}};
    rep.add_row(std::move(row));
    if (!r.pass) ++failures;
  }
  print_acceptance(results);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orlicz-space Lambda(Phi)-set experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  unsigned threads = 0;
  std::uint64_t seed_override = 0;
  bool seed_given = false;

  const std::vector<std::string> commands = {"norm", "indices", "conj",  "knorm",
                                             "density", "fejer",  "sample", "mc",
                                             "build", "lp",      "witness", "accept"};
  for (const auto& name : commands) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--out", out_dir, "output directory (report.json/csv, sha256)");
    sub->add_option("--threads", threads, "worker threads (default: env ORLICZ_THREADS or all)");
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t s) { seed_override = s; seed_given = true; },
        "seed override");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    std::ifstream is(config_path);
    if (!is) throw std::invalid_argument("cannot open config file: " + config_path);
    json cfg;
    is >> cfg;
    if (!cfg.is_object()) throw std::invalid_argument("config must be a JSON object");
    if (cfg.value("schema_version", -1) != kSchemaVersion)
      throw std::invalid_argument("config: schema_version must be " +
                                  std::to_string(kSchemaVersion));

    if (threads > 0) set_thread_count(threads);

    ExperimentReport rep;
    rep.command = command;
    rep.seed = seed_given ? seed_override : cfg.value("seed", std::uint64_t{1});
    json resolved = cfg;
    resolved["seed"] = rep.seed;
    rep.config = resolved;

    const std::filesystem::path out(out_dir);
    std::filesystem::create_directories(out);

    int rc = 0;
    if (command == "norm") rc = run_norm(resolved, rep, out);
    else if (command == "indices") rc = run_indices(resolved, rep, out);
    else if (command == "conj") rc = run_conj(resolved, rep, out);
    else if (command == "knorm") rc = run_knorm(resolved, rep, out);
    else if (command == "density") rc = run_density(resolved, rep, out);
    else if (command == "fejer") rc = run_fejer(resolved, rep, out);
    else if (command == "sample") rc = run_sample(resolved, rep, out);
    else if (command == "mc") rc = run_mc(resolved, rep, out);
    else if (command == "build") rc = run_build(resolved, rep, out);
    else if (command == "lp") rc = run_lp(resolved, rep, out);
    else if (command == "witness") rc = run_witness(resolved, rep, out);
    else if (command == "accept") rc = run_accept(resolved, rep, out);

    rep.write_outputs(out, thread_count());
    for (const auto& w : rep.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    if (rc != 0) return rc;
    return rep.warnings.empty() ? 0 : 2;
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 1;
  }
}
