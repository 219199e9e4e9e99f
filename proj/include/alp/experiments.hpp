#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "alp/csv.hpp"
#include "alp/initial_data.hpp"
#include "alp/localization.hpp"
#include "alp/solver.hpp"

namespace alp {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// A table of numbers with named columns.
struct Series {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct ExperimentReport {
  std::string name;
  bool pass = true;
  std::vector<std::string> verdict;  ///< one "PASS ..." or "FAIL ..." line per assertion
  Series table;                      ///< written as <name>.csv
  std::vector<Series> series;        ///< each written as <series.name>.dat

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    verdict.push_back((ok ? "PASS " : "FAIL ") + what);
  }
};

inline void write_csv(std::ostream& os, const Series& s) {
  for (std::size_t i = 0; i < s.columns.size(); ++i) os << (i ? "," : "") << s.columns[i];
  os << '\n';
  for (const auto& r : s.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_double(r[i]);
    os << '\n';
  }
}

/// gnuplot-ready: commented header, whitespace separated columns.
inline void write_dat(std::ostream& os, const Series& s) {
  os << '#';
  for (const auto& c : s.columns) os << ' ' << c;
  os << '\n';
  for (const auto& r : s.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? " " : "") << format_double(r[i]);
    os << '\n';
  }
}

/// Writes <name>.csv, verdict.txt and the .dat series into dir; returns the paths written.
inline std::vector<std::filesystem::path> write_report(const ExperimentReport& rep, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> out;
  auto open = [&](const std::filesystem::path& p) {
    std::ofstream os(p);
    if (!os) throw std::runtime_error("cannot open " + p.string());
    out.push_back(p);
    return os;
  };
  {
    auto os = open(dir / (rep.name + ".csv"));
    write_csv(os, rep.table);
  }
  {
    auto os = open(dir / "verdict.txt");
    os << rep.name << ": " << (rep.pass ? "PASS" : "FAIL") << '\n';
    for (const auto& line : rep.verdict) os << line << '\n';
  }
  for (const auto& s : rep.series) {
    auto os = open(dir / (s.name + ".dat"));
    write_dat(os, s);
  }
  return out;
}

namespace detail {

inline SolverConfig with_epsilon(SolverConfig c, double eps) {
  c.epsilon = eps;
  return c;
}

// Largest per-step increase of ||u||^2_{H^{0,s}} + dissipation_cum.
inline double max_ledger_increase(const Diagnostics& d) {
  double worst = -kInf;
  for (std::size_t n = 1; n < d.rows.size(); ++n) worst = std::max(worst, d.rows[n].ledger() - d.rows[n - 1].ledger());
  return d.rows.size() > 1 ? worst : 0.0;
}

inline std::string num(double x) { return format_short(x); }

}  // namespace detail

// ---- small-data decay ----------------------------------------------------------

struct SmallDataResult {
  ExperimentReport report;
  std::vector<double> multiples;     ///< ||u0||_{H^{0,s}} / nu_h per run
  std::vector<double> max_increase;  ///< worst per-step ledger increase per run
  std::vector<bool> monotone;
  std::optional<double> threshold;  ///< largest multiple with every smaller multiple monotone
};

/// Runs the shape rescaled to ||u0||_{H^{0,s}} = m nu_h for each m and checks the energy ledger
/// against a per-step tolerance tol_coeff * dt^2.
inline SmallDataResult exp_small_data_decay(const SolverConfig& cfg, const VectorField& shape,
                                            std::span<const double> multiples, double tol_coeff = 10.0) {
  SmallDataResult out;
  ExperimentReport& rep = out.report;
  rep.name = "small_data_decay";
  rep.table.name = rep.name;
  rep.table.columns = {"multiple", "H0s_initial", "max_ledger_increase", "tolerance", "monotone", "healthy"};
  const double tol = tol_coeff * cfg.dt * cfg.dt;
  std::vector<double> sorted(multiples.begin(), multiples.end());
  std::sort(sorted.begin(), sorted.end());
  bool all_below = true;
  for (double m : sorted) {
    const VectorField u0 = m == 0.0 ? 0.0 * shape : with_H0s_norm(shape, cfg.s, m * cfg.nu_h);
    const auto res = run(cfg, u0);
    const auto& d = res.diagnostics;
    const double inc = detail::max_ledger_increase(d);
    const bool ok = d.healthy && inc <= tol;
    out.multiples.push_back(m);
    out.max_increase.push_back(inc);
    out.monotone.push_back(ok);
    all_below = all_below && ok;
    if (all_below) out.threshold = m;
    rep.table.rows.push_back({m, d.rows.front().H0s, inc, tol, ok ? 1.0 : 0.0, d.healthy ? 1.0 : 0.0});
    Series s{"ledger_m" + detail::num(m), {"t", "ledger", "H0s", "dissipation_cum"}, {}};
    for (const auto& r : d.rows) s.rows.push_back({r.t, r.ledger(), r.H0s, r.dissipation_cum});
    rep.series.push_back(std::move(s));
    rep.verdict.push_back("INFO multiple " + detail::num(m) + ": max ledger increase " + detail::num(inc) +
                          " vs tolerance " + detail::num(tol) + (ok ? " (monotone)" : " (violated)"));
  }
  rep.check(out.threshold.has_value(),
            "empirical smallness threshold: " +
                (out.threshold ? detail::num(*out.threshold) + " nu_h" : std::string("none of the amplitudes")));
  return out;
}

// ---- splitting scheme -------------------------------------------------------

struct SplittingParams {
  int N = -1;                                 ///< S_N cutoff index; negative selects it automatically
  std::vector<double> epsilons{1.0, 0.1, 0.01};
  double c = 0.1;                             ///< smallness constant in 2 max(||w0||, c nu_h)
  double control_beta = 0.5;                  ///< beta-plane negative control
  double control_time = 1.0;
  double invariant_tol = 1e-10;
  double control_min = 1e-4;
  double horizon_spread = 0.1;
};

struct SplittingMember {
  double epsilon = 0.0;
  double max_defect = 0.0;      ///< max_t ||v - S_N^{x2,x3} v|| / ||v||
  double control_defect = 0.0;  ///< same for the x2-dependent control up to control_time
  double w0 = 0.0;
  double w_max = 0.0;
  double bound = 0.0;  ///< 2 max(||w0||, c nu_h)
  double horizon = 0.0;
  bool bounded = false;
};

struct SplittingResult {
  ExperimentReport report;
  std::vector<SplittingMember> members;
  int N = 0;
  double tail = 0.0;               ///< ||(I - S_N) u0||_{H^{0,s}}
  double horizon_variation = 0.0;  ///< (max T - min T) / max T over the sweep
};

namespace detail {

inline double localization_defect(const VectorField& v, int n) {
  const double nv = v.l2_norm();
  return nv > 0.0 ? (v - low_pass_x2x3(v, n)).l2_norm() / nv : 0.0;
}

}  // namespace detail

/// Smallest N >= 0 with ||(I - S_N) u0||_{H^{0,s}} <= bound; -1 if no N resolved by the grid qualifies.
inline int smallest_split_index(const VectorField& u0, double s, double bound) {
  const int top = jmax(u0.grid(), Bank::iso) + 1;
  for (int n = 0; n <= top; ++n)
    if (norm_Hss(u0 - low_pass_S(u0, n), {0.0, s}) <= bound) return n;
  return -1;
}

/// Splits u0 = S_N u0 + (I - S_N) u0, runs the linear system for v from S_N u0 and the full
/// system for u from u0 in lockstep, and follows w = u - v. Requires B = B(t, x1).
inline SplittingResult exp_splitting_scheme(const SolverConfig& cfg, const VectorField& u0, const SplittingParams& p) {
  if (cfg.rotation.depends_on_x2()) throw std::invalid_argument("the splitting scheme needs B = B(t, x1)");
  if (p.epsilons.empty()) throw std::invalid_argument("the splitting sweep needs at least one epsilon");
  SplittingResult out;
  ExperimentReport& rep = out.report;
  rep.name = "splitting_scheme";
  rep.table.name = rep.name;
  rep.table.columns = {"epsilon", "max_defect", "control_defect", "w0", "w_max", "bound", "horizon", "bounded"};

  const VectorField full0 = leray_project(u0);
  const double small = p.c * cfg.nu_h;
  out.N = p.N >= 0 ? p.N : smallest_split_index(full0, cfg.s, small);
  if (out.N < 0) throw std::invalid_argument("no S_N on this grid leaves a tail below c nu_h");
  const VectorField v0 = low_pass_S(full0, out.N);
  out.tail = norm_Hss(full0 - v0, {0.0, cfg.s});
  rep.check(out.tail <= small, "N = " + std::to_string(out.N) + ": ||(I - S_N) u0|| = " + detail::num(out.tail) +
                                   " <= c nu_h = " + detail::num(small));
  const long steps = cfg.steps();

  for (double eps : p.epsilons) {
    SplittingMember m;
    m.epsilon = eps;
    SolverConfig full = detail::with_epsilon(cfg, eps);
    SolverConfig lin = full;
    lin.nonlinear = false;
    SolverConfig control = lin;
    control.rotation = RotationSpec::beta_plane(p.control_beta);

    State su{full0, 0.0, 0}, sv{v0, 0.0, 0};
    m.w0 = norm_Hss(su.u - sv.u, {0.0, cfg.s});
    m.bound = 2.0 * std::max(m.w0, p.c * cfg.nu_h);
    m.w_max = m.w0;
    m.max_defect = detail::localization_defect(sv.u, out.N);
    m.horizon = cfg.t_end;
    bool alive = true;
    Series s{"splitting_eps" + detail::num(eps), {"t", "defect", "w_H0s", "u_H0s", "v_H0s"}, {}};
    s.rows.push_back({0.0, m.max_defect, m.w0, norm_Hss(su.u, {0.0, cfg.s}), norm_Hss(sv.u, {0.0, cfg.s})});
    for (long k = 0; k < steps; ++k) {
      sv = step(sv, lin);
      const double defect = detail::localization_defect(sv.u, out.N);
      m.max_defect = std::max(m.max_defect, defect);
      double wn = kNaN;
      if (alive) {
        try {
          su = step(su, full);
          wn = norm_Hss(su.u - sv.u, {0.0, cfg.s});
          if (!std::isfinite(wn)) throw std::runtime_error("non-finite");
        } catch (const std::exception&) {
          alive = false;
          m.horizon = std::min(m.horizon, sv.t - cfg.dt);
        }
      }
      if (alive) {
        m.w_max = std::max(m.w_max, wn);
        if (wn > m.bound && m.horizon == cfg.t_end) m.horizon = su.t;
      }
      s.rows.push_back({sv.t, defect, wn, alive ? norm_Hss(su.u, {0.0, cfg.s}) : kNaN, norm_Hss(sv.u, {0.0, cfg.s})});
    }
    m.bounded = alive && m.w_max <= m.bound;

    State sc{v0, 0.0, 0};
    const long control_steps = std::lround(p.control_time / cfg.dt);
    for (long k = 0; k < control_steps; ++k) {
      sc = step(sc, control);
      m.control_defect = std::max(m.control_defect, detail::localization_defect(sc.u, out.N));
    }

    rep.table.rows.push_back({eps, m.max_defect, m.control_defect, m.w0, m.w_max, m.bound, m.horizon, m.bounded ? 1.0 : 0.0});
    rep.series.push_back(std::move(s));
    rep.check(m.max_defect <= p.invariant_tol, "eps " + detail::num(eps) + ": localization defect " +
                                                   detail::num(m.max_defect) + " <= " + detail::num(p.invariant_tol));
    rep.check(m.control_defect > p.control_min, "eps " + detail::num(eps) + ": x2-dependent control defect " +
                                                    detail::num(m.control_defect) + " > " + detail::num(p.control_min));
    rep.check(m.bounded, "eps " + detail::num(eps) + ": ||w|| stays below " + detail::num(m.bound) + " up to t = " +
                             detail::num(cfg.t_end) + " (max " + detail::num(m.w_max) + ", horizon " +
                             detail::num(m.horizon) + ")");
    out.members.push_back(m);
  }
  double lo = kInf, hi = 0.0;
  for (const auto& m : out.members) {
    lo = std::min(lo, m.horizon);
    hi = std::max(hi, m.horizon);
  }
  out.horizon_variation = hi > 0.0 ? (hi - lo) / hi : 0.0;
  rep.check(out.horizon_variation < p.horizon_spread, "healthy horizon varies by " + detail::num(out.horizon_variation) +
                                                          " across the sweep (< " + detail::num(p.horizon_spread) + ")");
  return out;
}

// ---- NS_h propagation ----------------------------------------------------------

namespace detail {

// I(t_n) = sum_{m<n} dt nu^-3 (nu^2 + ||u||^2_{L^inf_v L^2_h}) ||grad_h u||^2_{L^inf_v L^2_h}
inline std::vector<double> gronwall_integral(const Diagnostics& d, double nu_h, double dt) {
  std::vector<double> I(d.rows.size(), 0.0);
  for (std::size_t n = 1; n < d.rows.size(); ++n) {
    const auto& r = d.rows[n - 1];
    I[n] = I[n - 1] + dt * (nu_h * nu_h + r.LinfvL2h * r.LinfvL2h) * r.gradh_LinfvL2h * r.gradh_LinfvL2h /
                          (nu_h * nu_h * nu_h);
  }
  return I;
}

}  // namespace detail

/// Smallest C >= 0 with ||u(t)||^2_{H^s} <= ||u0||^2_{H^s} exp(C I(t)) along a run.
inline double calibrate_gronwall(const Diagnostics& d, double nu_h, double dt) {
  const auto I = detail::gronwall_integral(d, nu_h, dt);
  const double h0 = d.rows.front().Hs;
  double c = 0.0;
  for (std::size_t n = 1; n < d.rows.size(); ++n) {
    if (!(I[n] > 0.0) || !(h0 > 0.0)) continue;
    c = std::max(c, 2.0 * std::log(d.rows[n].Hs / h0) / I[n]);
  }
  return c;
}

/// Reference run for the Gronwall constant: 32^3, nu_h = 0.02, dt = 0.01, t in [0, 2].
inline SolverConfig gronwall_reference_config() {
  SolverConfig c;
  c.grid = Grid::cube(32);
  c.nu_h = 0.02;
  c.dt = 0.01;
  c.t_end = 2.0;
  return c;
}

/// Taylor-Green data with ||u0||_{H^{0,s}} = 1 for the reference run.
inline VectorField gronwall_reference_data(const SolverConfig& c) { return with_H0s_norm(taylor_green(c.grid), c.s, 1.0); }

/// calibrate_gronwall on the reference run (1.2158e-10), rounded up to two digits and frozen.
inline constexpr double kGronwallC = 1.3e-10;

struct NsPropagationResult {
  ExperimentReport report;
  double C = 0.0;
  double min_slack = kInf;  ///< min_{t>0} (envelope - ||u||^2_{H^s}) / envelope
  bool holds = true;
};

inline NsPropagationResult exp_ns_propagation(const SolverConfig& cfg, const VectorField& u0, double C = kGronwallC) {
  if (cfg.rotation.kind != RotationKind::zero) throw std::invalid_argument("NS_h propagation needs the zero rotation");
  NsPropagationResult out;
  out.C = C;
  ExperimentReport& rep = out.report;
  rep.name = "ns_propagation";
  rep.table.name = rep.name;
  rep.table.columns = {"t", "Hs_sq", "envelope", "slack", "gronwall_integral", "blowup_cum"};
  const auto res = run(cfg, u0);
  const auto& d = res.diagnostics;
  const auto I = detail::gronwall_integral(d, cfg.nu_h, cfg.dt);
  const double h0 = d.rows.front().Hs;
  for (std::size_t n = 0; n < d.rows.size(); ++n) {
    const double lhs = d.rows[n].Hs * d.rows[n].Hs;
    const double env = h0 * h0 * std::exp(C * I[n]);
    const double slack = env > 0.0 ? (env - lhs) / env : 0.0;
    if (n > 0) out.min_slack = std::min(out.min_slack, slack);
    out.holds = out.holds && lhs <= env * (1.0 + 1e-12);
    rep.table.rows.push_back({d.rows[n].t, lhs, env, slack, I[n], d.rows[n].blowup_cum});
  }
  rep.series.push_back({"ns_envelope", {"t", "Hs_sq", "envelope"}, {}});
  for (const auto& r : rep.table.rows) rep.series.back().rows.push_back({r[0], r[1], r[2]});
  rep.check(d.healthy, std::string("run ") + std::string(to_string(d.halt)) +
                           (d.message.empty() ? std::string() : ": " + d.message));
  rep.check(out.holds, "||u||^2_{H^s} below the Gronwall envelope with C = " + detail::num(C) + " (min slack " +
                           detail::num(out.min_slack) + ")");
  return out;
}

// ---- Rossby sweep ---------------------------------------------------------------

struct RossbyMember {
  double epsilon = 0.0;
  double sup_Hs = 0.0;
  double max_ledger_increase = 0.0;
  bool monotone = false;
  double baseline_gap = 0.0;  ///< max_t |Hs_eps - Hs_NSh| / max_t Hs_NSh
};

struct RossbySweepResult {
  ExperimentReport report;
  std::vector<RossbyMember> members;
  double slope = 0.0;  ///< least-squares fit of log(sup ||u||^2_{H^s} / ||u0||^2_{H^s}) against 1/eps
  double intercept = 0.0;
};

inline RossbySweepResult exp_rossby_sweep(const SolverConfig& cfg, const VectorField& u0,
                                          std::span<const double> epsilons, double tol_coeff = 10.0) {
  if (epsilons.empty()) throw std::invalid_argument("the Rossby sweep needs at least one epsilon");
  RossbySweepResult out;
  ExperimentReport& rep = out.report;
  rep.name = "rossby_sweep";
  rep.table.name = rep.name;
  rep.table.columns = {"epsilon", "inv_epsilon", "sup_Hs", "log_growth", "max_ledger_increase", "monotone", "baseline_gap"};
  const double tol = tol_coeff * cfg.dt * cfg.dt;

  SolverConfig base = cfg;
  base.rotation = RotationSpec::zero();
  const auto ref = run(base, u0).diagnostics;
  double ref_max = 0.0;
  for (const auto& r : ref.rows) ref_max = std::max(ref_max, r.Hs);

  std::vector<double> xs, ys;
  for (double eps : epsilons) {
    RossbyMember m;
    m.epsilon = eps;
    const auto d = run(detail::with_epsilon(cfg, eps), u0).diagnostics;
    for (std::size_t n = 0; n < d.rows.size(); ++n) {
      m.sup_Hs = std::max(m.sup_Hs, d.rows[n].Hs);
      if (n < ref.rows.size() && ref_max > 0.0)
        m.baseline_gap = std::max(m.baseline_gap, std::abs(d.rows[n].Hs - ref.rows[n].Hs) / ref_max);
    }
    m.max_ledger_increase = detail::max_ledger_increase(d);
    m.monotone = d.healthy && m.max_ledger_increase <= tol;
    const double h0 = d.rows.front().Hs;
    const double growth = h0 > 0.0 ? 2.0 * std::log(m.sup_Hs / h0) : 0.0;
    xs.push_back(1.0 / eps);
    ys.push_back(growth);
    rep.table.rows.push_back({eps, 1.0 / eps, m.sup_Hs, growth, m.max_ledger_increase, m.monotone ? 1.0 : 0.0, m.baseline_gap});
    Series s{"rossby_eps" + detail::num(eps), {"t", "Hs", "H0s", "ledger"}, {}};
    for (const auto& r : d.rows) s.rows.push_back({r.t, r.Hs, r.H0s, r.ledger()});
    rep.series.push_back(std::move(s));
    rep.check(m.monotone, "eps " + detail::num(eps) + ": H^{0,s} ledger increase " + detail::num(m.max_ledger_increase) +
                              " <= " + detail::num(tol));
    out.members.push_back(m);
  }
  if (xs.size() >= 2) {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= double(xs.size());
    my /= double(xs.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    out.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    out.intercept = my - out.slope * mx;
  } else {
    out.intercept = ys.front();
  }
  rep.verdict.push_back("INFO log-growth fit: " + detail::num(out.slope) + " / eps + " + detail::num(out.intercept));
  return out;
}

}  // namespace alp
