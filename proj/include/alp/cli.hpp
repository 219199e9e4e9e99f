#pragma once

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "alp/config.hpp"
#include "alp/experiments.hpp"
#include "alp/inequalities.hpp"
#include "alp/initial_data.hpp"
#include "alp/manifest.hpp"
#include "alp/paraproduct.hpp"
#include "alp/snapshot.hpp"
#include "alp/solver.hpp"

#ifndef ALP_VERSION
#define ALP_VERSION "0.0.0"
#endif

namespace alp::cli {

namespace fs = std::filesystem;

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitConfig = 2;

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"decompose", "norms", "verify", "solve", "experiment"};
  return names;
}

struct Options {
  std::string subcommand;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out = "runs";
};

/// Creates <out>/<timestamp>_seed<seed>, appending _1, _2, ... if that name is taken.
inline fs::path make_run_dir(const fs::path& out, std::uint64_t seed, std::chrono::system_clock::time_point t) {
  fs::create_directories(out);
  const std::string base = utc_stamp(t, true) + "_seed" + std::to_string(seed);
  for (int n = 0;; ++n) {
    fs::path p = out / (n == 0 ? base : base + "_" + std::to_string(n));
    if (fs::create_directory(p)) return p;
  }
}

namespace detail {

inline std::ofstream open_out(const fs::path& p) {
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot open " + p.string());
  return os;
}

inline FieldEnsembleSpec ensemble_spec(const RunConfig& c) {
  FieldEnsembleSpec e = c.ensemble;
  e.seed = c.seed;
  return e;
}

inline VectorField initial_data(const RunConfig& c) {
  VectorField u0 = initial_field(c.initial, c.solver.grid, c.seed);
  if (c.amplitude) u0 = with_H0s_norm(u0, c.solver.s, *c.amplitude);
  return u0;
}

inline std::vector<Bank> banks(const RunConfig& c) {
  if (c.bank == "iso") return {Bank::iso};
  if (c.bank == "vert") return {Bank::vert};
  return {Bank::iso, Bank::vert};
}

inline const char* bank_name(Bank b) { return b == Bank::iso ? "iso" : "vert"; }

inline int run_decompose(const RunConfig& c, const fs::path& dir, std::ostream& log) {
  const auto us = gen_ensemble(ensemble_spec(c), c.solver.grid);
  auto blocks = open_out(dir / "blocks.csv");
  auto recon = open_out(dir / "reconstruction.csv");
  blocks << "sample_id,bank,j,block_l2\n";
  recon << "sample_id,bank,relative_error\n";
  double worst = 0.0;
  for (std::size_t id = 0; id < us.size(); ++id) {
    const double nu = us[id].l2_norm();
    for (Bank b : banks(c)) {
      VectorField acc(c.solver.grid);
      for (int j = -1; j <= jmax(c.solver.grid, b); ++j) {
        const VectorField d = dyadic_block(us[id], j, b);
        blocks << id << ',' << bank_name(b) << ',' << j << ',' << format_double(d.l2_norm()) << '\n';
        acc += d;
      }
      const double err = nu > 0.0 ? (us[id] - acc).l2_norm() / nu : 0.0;
      worst = std::max(worst, err);
      recon << id << ',' << bank_name(b) << ',' << format_double(err) << '\n';
    }
  }
  const bool ok = worst <= 1e-12;
  log << "decompose: worst relative reconstruction error " << format_double(worst) << (ok ? " PASS" : " FAIL")
      << '\n';
  return ok ? kExitOk : kExitFail;
}

inline int run_norms(const RunConfig& c, const fs::path& dir, std::ostream& log) {
  const auto us = gen_ensemble(ensemble_spec(c), c.solver.grid);
  const double s = c.solver.s;
  auto os = open_out(dir / "norms.csv");
  os << "sample_id,L2,H0s,Hs,gradh_H0s,LinfvL2h,gradh_LinfvL2h,dyadic_vert_H0s,divergence_defect\n";
  for (std::size_t id = 0; id < us.size(); ++id) {
    const auto& u = us[id];
    os << id << ',' << format_double(u.l2_norm()) << ',' << format_double(norm_Hss(u, {0.0, s})) << ','
       << format_double(norm_Hs(u, s)) << ',' << format_double(norm_gradh_Hss(u, {0.0, s})) << ','
       << format_double(norm_Linfv_L2h(u)) << ',' << format_double(norm_gradh_Linfv_L2h(u)) << ','
       << format_double(norm_dyadic_vert(u, s)) << ',' << format_double(divergence_defect(u)) << '\n';
  }
  log << "norms: " << us.size() << " samples\n";
  return kExitOk;
}

inline int run_verify(const RunConfig& c, const fs::path& dir, std::ostream& log) {
  const Grid& g = c.solver.grid;
  const double s = c.solver.s;
  auto spec = ensemble_spec(c);
  const auto us = gen_ensemble(spec, g);
  spec.seed = c.seed + 1;
  const auto vs = gen_ensemble(spec, g);
  const auto want = [&](const char* t) { return c.target == "all" || c.target == t; };

  std::vector<InequalityReport> reps;
  if (want("bernstein")) {
    auto b = verify_bernstein(us, c.bernstein);
    for (auto* r : b.all()) reps.push_back(*r);
  }
  if (want("commutator")) reps.push_back(verify_commutator(us, vs, c.j));
  if (want("product")) {
    reps.push_back(verify_product_law_H0s(us, vs, s));
    reps.push_back(verify_product_law_H0s_self(us, s));
  }
  if (want("trilinear")) {
    reps.push_back(verify_trilinear_Hs(us, s));
    reps.push_back(trilinear_shares(us, s));
  }
  if (want("divfree")) {
    auto d = verify_divfree_prop(us, s);
    reps.push_back(d.grad_u3);
    reps.push_back(d.blocks);
  }
  if (want("gagliardo-nirenberg")) reps.push_back(verify_gagliardo_nirenberg(us));
  if (want("interpolation"))
    reps.push_back(verify_interpolation(
        us, {{c.interp_a.first, c.interp_a.second}, {c.interp_b.first, c.interp_b.second}, c.alpha}));
  if (want("block-bound")) reps.push_back(verify_uniform_block_bound(us, c.j, c.bernstein.p, c.bernstein.r));
  if (want("norm-equivalence")) reps.push_back(verify_norm_equivalence(us, s));
  if (want("embedding")) reps.push_back(verify_embedding(us, s));

  auto rows = open_out(dir / "verify.csv");
  auto summary = open_out(dir / "summary.csv");
  write_csv_header(rows);
  summary << "name,samples,skipped,worst_ratio\n";
  bool ok = true;
  for (const auto& r : reps) {
    write_csv(rows, r);
    summary << r.name << ',' << r.samples << ',' << r.skipped << ',' << format_double(r.worst_ratio) << '\n';
    bool pass = std::isfinite(r.worst_ratio);
    if (r.name == "interpolation") pass = pass && r.worst_ratio <= 1.0 + 1e-10;
    ok = ok && pass;
    log << (pass ? "PASS " : "FAIL ") << r.name << " worst_ratio " << format_double(r.worst_ratio) << '\n';
  }
  return ok ? kExitOk : kExitFail;
}

inline int run_solve(const RunConfig& c, const fs::path& dir, std::ostream& log) {
  SolverConfig cfg = c.solver;
  if (cfg.snapshot_every > 0) {
    cfg.snapshot_dir = (dir / "snapshots").string();
    fs::create_directories(cfg.snapshot_dir);
  }
  const auto res = run(cfg, initial_data(c));
  const auto& d = res.diagnostics;
  {
    auto os = open_out(dir / "diagnostics.csv");
    write_diagnostics_csv(os, d);
  }
  write_snapshot((dir / "final.alp1").string(), res.final.u);
  for (const auto& w : d.warnings) log << "warning: " << w << '\n';
  log << "solve: " << to_string(d.halt) << " at t = " << format_double(res.final.t) << " after " << res.final.step
      << " steps" << (d.message.empty() ? "" : " (" + d.message + ")") << '\n';
  return d.healthy ? kExitOk : kExitFail;
}

inline int run_experiment(const RunConfig& c, const fs::path& dir, std::ostream& log) {
  const SolverConfig& cfg = c.solver;
  const VectorField u0 = initial_data(c);
  ExperimentReport rep;
  if (c.experiment == "small-data") {
    rep = exp_small_data_decay(cfg, u0, c.multiples).report;
  } else if (c.experiment == "splitting") {
    SplittingParams p;
    p.N = c.split_N;
    p.epsilons = c.epsilons;
    p.c = c.c;
    p.control_beta = c.control_beta;
    p.control_time = c.control_time;
    rep = exp_splitting_scheme(cfg, u0, p).report;
  } else if (c.experiment == "ns-propagation") {
    rep = exp_ns_propagation(cfg, u0, c.gronwall_C).report;
  } else {
    rep = exp_rossby_sweep(cfg, u0, c.epsilons).report;
  }
  write_report(rep, dir);
  log << rep.name << ": " << (rep.pass ? "PASS" : "FAIL") << '\n';
  for (const auto& line : rep.verdict) log << "  " << line << '\n';
  return rep.pass ? kExitOk : kExitFail;
}

}  // namespace detail

/// Parses the config, runs one subcommand inside a fresh run directory and writes manifest.txt.
inline int dispatch(const Options& o, std::ostream& log = std::cout, std::ostream& err = std::cerr) {
  const auto& names = subcommands();
  if (std::find(names.begin(), names.end(), o.subcommand) == names.end()) {
    err << "unknown subcommand '" << o.subcommand << "'\n";
    return kExitConfig;
  }
  const bool solver = o.subcommand == "solve" || o.subcommand == "experiment";
  auto parsed = parse_config(o.config_path, solver ? ConfigPurpose::solver : ConfigPurpose::ensemble);
  if (parsed.ok() && o.subcommand == "experiment" && parsed.config->experiment.empty())
    parsed = {std::nullopt, {"missing required key 'experiment'"}};
  if (!parsed.ok()) {
    for (const auto& e : parsed.errors) err << o.config_path << ": " << e << '\n';
    return kExitConfig;
  }
  RunConfig c = std::move(*parsed.config);
  if (o.seed) c.seed = *o.seed;

  RunManifest m;
  m.version = ALP_VERSION;
  m.subcommand = o.subcommand;
  m.seed = c.seed;
  m.config = c.entries;
  const auto start = std::chrono::system_clock::now();
  m.start = utc_stamp(start);
  const fs::path dir = make_run_dir(o.out, c.seed, start);
  log << "run directory: " << dir.string() << '\n';

  int code = kExitOk;
  try {
    if (o.subcommand == "decompose") code = detail::run_decompose(c, dir, log);
    else if (o.subcommand == "norms") code = detail::run_norms(c, dir, log);
    else if (o.subcommand == "verify") code = detail::run_verify(c, dir, log);
    else if (o.subcommand == "solve") code = detail::run_solve(c, dir, log);
    else code = detail::run_experiment(c, dir, log);
  } catch (const std::invalid_argument& e) {
    err << "configuration rejected: " << e.what() << '\n';
    code = kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    code = kExitFail;
  }

  m.end = utc_stamp(std::chrono::system_clock::now());
  m.exit_code = code;
  m.inventory(dir);
  auto os = detail::open_out(dir / "manifest.txt");
  m.write(os);
  return code;
}

/// Command-line entry point: alp <subcommand> --config <path> [--seed n] [--out dir].
inline int main(int argc, char** argv, std::ostream& log = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"alp: anisotropic Littlewood-Paley analysis and rotating Navier-Stokes runs"};
  app.require_subcommand(1);
  Options o;
  std::uint64_t seed = 0;
  for (const auto& name : subcommands()) {
    auto* sc = app.add_subcommand(name);
    sc->add_option("--config", o.config_path, "key=value configuration file")->required();
    sc->add_option("--seed", seed, "overrides the seed key");
    sc->add_option("--out", o.out, "parent of the run directory")->capture_default_str();
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out_s, err_s;
    const int r = app.exit(e, out_s, err_s);
    log << out_s.str();
    err << err_s.str();
    return r == 0 ? kExitOk : kExitConfig;
  }
  auto* sc = app.get_subcommands().front();
  o.subcommand = sc->get_name();
  if (sc->count("--seed") > 0) o.seed = seed;
  return dispatch(o, log, err);
}

}  // namespace alp::cli
