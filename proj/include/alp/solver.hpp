#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "alp/csv.hpp"
#include "alp/norms.hpp"
#include "alp/operators.hpp"
#include "alp/rotation.hpp"
#include "alp/snapshot.hpp"
#include "alp/transform.hpp"

namespace alp {

struct SolverConfig {
  Grid grid = Grid::cube(32);
  double nu_h = 0.1;
  double nu_v = 0.0;
  double epsilon = 1.0;
  double dt = 0.01;
  double t_end = 1.0;
  double s = 0.6;  ///< regularity index of H^{0,s} and H^s in the diagnostics
  RotationSpec rotation = RotationSpec::zero();
  Dealias dealias = Dealias::pad;
  bool nonlinear = true;
  double dt_cap = 0.1;                ///< stability cap on top of the advective CFL bound
  double blowup_threshold = kInf;     ///< halt once the blow-up functional exceeds this
  int snapshot_every = 0;             ///< steps between snapshots; 0 disables them
  std::string snapshot_dir;

  /// Number of steps needed to reach t_end.
  long steps() const { return std::lround(t_end / dt); }

  /// Every violated invariant, empty when the configuration is usable.
  std::vector<std::string> validate() const {
    std::vector<std::string> e;
    if (!(nu_h > 0.0)) e.emplace_back("nu_h must satisfy ν_h > 0");
    if (!(nu_v >= 0.0)) e.emplace_back("nu_v must satisfy ν_v ≥ 0");
    if (!(epsilon > 0.0)) e.emplace_back("epsilon must be > 0");
    if (!(dt > 0.0)) e.emplace_back("dt must be > 0");
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) e.emplace_back("t_end must be finite and >= 0");
    if (!std::isfinite(s)) e.emplace_back("s must be finite");
    if (!(dt_cap > 0.0)) e.emplace_back("dt_cap must be > 0");
    if (snapshot_every < 0) e.emplace_back("snapshot_every must be >= 0");
    if (snapshot_every > 0 && snapshot_dir.empty()) e.emplace_back("snapshot_every needs a snapshot directory");
    for (auto& r : validate_rotation(rotation, grid)) e.push_back(std::move(r));
    return e;
  }
};

/// Raised when dt exceeds the admissible step for the current field.
class CflViolation : public std::runtime_error {
 public:
  CflViolation(double dt, double required)
      : std::runtime_error("dt = " + format_double(dt) + " exceeds the admissible step " + format_double(required)),
        required_dt(required) {}
  double required_dt;
};

struct State {
  VectorField u;
  double t = 0.0;
  long step = 0;
};

/// Multiplies each coefficient by exp(-(nu_h |k_h|^2 + nu_v k3^2) dt).
inline VectorField diffusion_substep(const VectorField& u, double dt, double nu_h, double nu_v) {
  return u.multiplied([&](int k1, int k2, int k3) {
    return std::exp(-(nu_h * static_cast<double>(k1 * k1 + k2 * k2) + nu_v * static_cast<double>(k3 * k3)) * dt);
  });
}

/// -P div(u (x) u), which equals -P (u.grad) u for divergence-free u.
inline VectorField nonlinear_rhs(const VectorField& u, Dealias rule = Dealias::pad) {
  VectorField f = leray_project(self_advect_conservative(u, rule));
  f *= -1.0;
  return f;
}

/// max_x |u(x)| over the native grid points.
inline double max_speed(const VectorField& u) {
  auto p = to_physical(u, u.grid());
  double m = 0.0;
  for (std::size_t i = 0; i < p[0].size(); ++i)
    m = std::max(m, std::sqrt(p[0][i] * p[0][i] + p[1][i] * p[1][i] + p[2][i] * p[2][i]));
  return m;
}

/// Largest admissible dt for u: min(0.5 h / max|u|, dt_cap); the advective part is dropped without nonlinearity.
inline double cfl_limit(const VectorField& u, const SolverConfig& cfg) {
  const Grid& g = u.grid();
  double limit = cfg.dt_cap;
  if (cfg.nonlinear) {
    const double h = std::min({g.spacing(0), g.spacing(1), g.spacing(2)});
    const double v = max_speed(u);
    if (v > 0.0) limit = std::min(limit, 0.5 * h / v);
  }
  return limit;
}

namespace detail {

inline VectorField half_rotation(const VectorField& u, const SolverConfig& cfg, double t_mid) {
  if (cfg.rotation.kind == RotationKind::zero) return u;
  return rotation_substep(u, eval_rotation(cfg.rotation, u.grid(), t_mid), 0.5 * cfg.dt, cfg.epsilon);
}

}  // namespace detail

/// One Strang step: rotation over dt/2, viscous-nonlinear step over dt, rotation over dt/2.
/// The middle stage is the midpoint rule under the exact diffusion integrating factor E:
///   u* = E(dt/2)(u + dt/2 N(u)),  u+ = E(dt) u + dt E(dt/2) N(u*).
inline State step(const State& s, const SolverConfig& cfg) {
  const double dt = cfg.dt;
  const double limit = cfl_limit(s.u, cfg);
  if (dt > limit) throw CflViolation(dt, limit);

  VectorField u = detail::half_rotation(s.u, cfg, s.t + 0.25 * dt);
  if (cfg.nonlinear) {
    const VectorField n0 = nonlinear_rhs(u, cfg.dealias);
    VectorField mid = u + (0.5 * dt) * n0;
    mid = diffusion_substep(mid, 0.5 * dt, cfg.nu_h, cfg.nu_v);
    const VectorField n1 = nonlinear_rhs(mid, cfg.dealias);
    u = diffusion_substep(u, dt, cfg.nu_h, cfg.nu_v) + dt * diffusion_substep(n1, 0.5 * dt, cfg.nu_h, cfg.nu_v);
  } else {
    u = diffusion_substep(u, dt, cfg.nu_h, cfg.nu_v);
  }
  u = detail::half_rotation(u, cfg, s.t + 0.75 * dt);
  u.set_divfree(true);
  return {std::move(u), static_cast<double>(s.step + 1) * dt, s.step + 1};
}

struct DiagnosticsRow {
  double t = 0.0;
  double H0s = 0.0;
  double Hs = 0.0;
  double gradh_H0s = 0.0;
  double LinfvL2h = 0.0;
  double gradh_LinfvL2h = 0.0;
  double dissipation_cum = 0.0;  ///< 2 nu_h sum dt ||grad_h u||^2_{H^{0,s}}, left endpoints
  double blowup_cum = 0.0;       ///< sum dt ||grad_h u||^2_{L^inf_v L^2_h} (1 + ||u||^2_{L^inf_v L^2_h})

  bool finite() const {
    for (double x : {t, H0s, Hs, gradh_H0s, LinfvL2h, gradh_LinfvL2h, dissipation_cum, blowup_cum})
      if (!std::isfinite(x)) return false;
    return true;
  }
  /// ||u||^2_{H^{0,s}} plus the dissipation so far.
  double ledger() const { return H0s * H0s + dissipation_cum; }
};

enum class HaltReason { completed, cfl, blowup, non_finite };

inline std::string_view to_string(HaltReason h) {
  switch (h) {
    case HaltReason::completed: return "completed";
    case HaltReason::cfl: return "cfl";
    case HaltReason::blowup: return "blowup";
    case HaltReason::non_finite: return "non-finite";
  }
  return "?";
}

struct Diagnostics {
  std::vector<DiagnosticsRow> rows;
  bool healthy = true;
  HaltReason halt = HaltReason::completed;
  std::string message;
  std::vector<std::string> warnings;
};

/// Instantaneous norms of u; the cumulative columns are left at zero.
inline DiagnosticsRow measure(const VectorField& u, double t, double s) {
  DiagnosticsRow r;
  r.t = t;
  r.H0s = norm_Hss(u, {0.0, s});
  r.Hs = norm_Hs(u, s);
  r.gradh_H0s = norm_gradh_Hss(u, {0.0, s});
  r.LinfvL2h = norm_Linfv_L2h(u);
  r.gradh_LinfvL2h = norm_gradh_Linfv_L2h(u);
  return r;
}

inline void write_diagnostics_csv(std::ostream& os, const Diagnostics& d) {
  os << "t,H0s,Hs,gradh_H0s,LinfvL2h,gradh_LinfvL2h,dissipation_cum,blowup_cum\n";
  for (const auto& r : d.rows) {
    os << format_double(r.t) << ',' << format_double(r.H0s) << ',' << format_double(r.Hs) << ','
       << format_double(r.gradh_H0s) << ',' << format_double(r.LinfvL2h) << ',' << format_double(r.gradh_LinfvL2h)
       << ',' << format_double(r.dissipation_cum) << ',' << format_double(r.blowup_cum) << '\n';
  }
}

struct RunResult {
  Diagnostics diagnostics;
  State final;
  std::vector<std::string> snapshots;
};

/// Called with the initial state and after every accepted step.
using StepObserver = std::function<void(const State&)>;

inline RunResult run(const SolverConfig& cfg, const VectorField& u0, const StepObserver& observe = {}) {
  if (auto errors = cfg.validate(); !errors.empty()) throw std::invalid_argument("invalid solver config: " + errors.front());
  if (u0.grid() != cfg.grid) throw std::invalid_argument("initial field is not on the configured grid");
  RunResult out{{}, {leray_project(u0), 0.0, 0}, {}};
  Diagnostics& d = out.diagnostics;
  if (divergence_defect(u0) > 1e-10) d.warnings.emplace_back("initial field was not divergence-free and has been projected");

  State& st = out.final;
  auto snapshot = [&] {
    if (cfg.snapshot_every <= 0 || st.step % cfg.snapshot_every != 0) return;
    char name[32];
    std::snprintf(name, sizeof name, "snap_%06ld.alp1", st.step);
    const std::string path = cfg.snapshot_dir + "/" + name;
    write_snapshot(path, st.u);
    out.snapshots.push_back(path);
  };

  d.rows.push_back(measure(st.u, 0.0, cfg.s));
  if (!d.rows.back().finite()) {
    d.healthy = false;
    d.halt = HaltReason::non_finite;
    d.message = "initial field is not finite";
    return out;
  }
  if (observe) observe(st);
  snapshot();

  const long n = cfg.steps();
  for (long k = 0; k < n; ++k) {
    const DiagnosticsRow prev = d.rows.back();
    try {
      st = step(st, cfg);
    } catch (const CflViolation& e) {
      d.healthy = false;
      d.halt = HaltReason::cfl;
      d.message = e.what();
      return out;
    }
    DiagnosticsRow r = measure(st.u, st.t, cfg.s);
    r.dissipation_cum = prev.dissipation_cum + 2.0 * cfg.nu_h * cfg.dt * prev.gradh_H0s * prev.gradh_H0s;
    r.blowup_cum = prev.blowup_cum + cfg.dt * prev.gradh_LinfvL2h * prev.gradh_LinfvL2h *
                                         (1.0 + prev.LinfvL2h * prev.LinfvL2h);
    d.rows.push_back(r);
    if (!r.finite()) {
      d.healthy = false;
      d.halt = HaltReason::non_finite;
      d.message = "non-finite diagnostics at t = " + format_double(st.t);
      return out;
    }
    if (observe) observe(st);
    snapshot();
    if (r.blowup_cum > cfg.blowup_threshold) {
      d.healthy = false;
      d.halt = HaltReason::blowup;
      d.message = "blow-up functional exceeded " + format_double(cfg.blowup_threshold) + " at t = " + format_double(st.t);
      return out;
    }
  }
  return out;
}

}  // namespace alp
