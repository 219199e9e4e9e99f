#pragma once

#include <array>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "alp/ensemble.hpp"
#include "alp/inequalities.hpp"
#include "alp/solver.hpp"

namespace alp {

/// Which keys a file must provide. Solver files drive `solve` and `experiment`.
enum class ConfigPurpose { ensemble, solver };

/// Everything a run can be configured with, after parsing and validation.
struct RunConfig {
  std::vector<std::pair<std::string, std::string>> entries;  ///< key=value pairs in file order

  std::array<std::size_t, 3> dims{32, 32, 32};
  std::uint64_t seed = 1;
  SolverConfig solver;
  FieldEnsembleSpec ensemble;

  std::string rotation = "zero";
  double rot_magnitude = 1.0;
  double beta = 0.5;
  double rot_a = 0.5;
  double rot_tau = 0.0;
  double rot_omega = 0.0;

  std::string initial = "random";
  std::optional<double> amplitude;  ///< rescales u0 to this H^{0,s} norm

  std::string bank = "both";
  std::string target = "all";
  BernsteinParams bernstein;
  int j = 0;
  double alpha = 0.5;
  std::pair<double, double> interp_a{1.0, 0.0};
  std::pair<double, double> interp_b{0.0, 1.0};

  std::string experiment;
  std::vector<double> multiples{0.1, 1.0, 10.0};
  std::vector<double> epsilons{1.0, 0.1, 0.01};
  int split_N = -1;
  double c = 0.1;
  double control_beta = 0.5;
  double control_time = 1.0;
  double gronwall_C = 1.3e-10;

  Grid grid() const { return Grid(dims[0], dims[1], dims[2]); }
};

struct ConfigResult {
  std::optional<RunConfig> config;
  std::vector<std::string> errors;
  bool ok() const { return config.has_value(); }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
std::optional<T> parse_number(std::string_view s) {
  T v{};
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::optional<bool> parse_bool(std::string_view s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  return std::nullopt;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

inline std::optional<std::vector<double>> parse_reals(std::string_view s) {
  std::vector<double> out;
  for (auto part : split(s, ',')) {
    auto v = parse_number<double>(part);
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  return out;
}

/// Assigns one value; returns the expected type on mismatch.
using Setter = std::function<std::optional<std::string>(std::string_view, RunConfig&)>;

template <class T>
Setter number_into(T RunConfig::*m) {
  return [m](std::string_view v, RunConfig& c) -> std::optional<std::string> {
    auto x = parse_number<T>(v);
    if (!x) return std::is_integral_v<T> ? "an integer" : "a number";
    c.*m = *x;
    return std::nullopt;
  };
}

template <class T, class Sub>
Setter nested_number(Sub RunConfig::*outer, T Sub::*m) {
  return [outer, m](std::string_view v, RunConfig& c) -> std::optional<std::string> {
    auto x = parse_number<T>(v);
    if (!x) return std::is_integral_v<T> ? "an integer" : "a number";
    (c.*outer).*m = *x;
    return std::nullopt;
  };
}

inline Setter word_into(std::string RunConfig::*m, std::vector<std::string> allowed) {
  return [m, allowed = std::move(allowed)](std::string_view v, RunConfig& c) -> std::optional<std::string> {
    for (const auto& a : allowed) {
      if (v == a) {
        c.*m = a;
        return std::nullopt;
      }
    }
    std::string msg = "one of";
    for (const auto& a : allowed) msg += " " + a;
    return msg;
  };
}

inline Setter pair_into(std::pair<double, double> RunConfig::*m) {
  return [m](std::string_view v, RunConfig& c) -> std::optional<std::string> {
    auto x = parse_reals(v);
    if (!x || x->size() != 2) return "two comma-separated numbers";
    c.*m = {(*x)[0], (*x)[1]};
    return std::nullopt;
  };
}

inline Setter reals_into(std::vector<double> RunConfig::*m) {
  return [m](std::string_view v, RunConfig& c) -> std::optional<std::string> {
    auto x = parse_reals(v);
    if (!x) return "a comma-separated list of numbers";
    c.*m = std::move(*x);
    return std::nullopt;
  };
}

inline std::optional<std::string> set_grid(std::string_view v, RunConfig& c) {
  auto parts = split(v, 'x');
  if (parts.size() == 1) parts.assign(3, parts[0]);
  if (parts.size() != 3) return "N or n1xn2xn3";
  for (std::size_t i = 0; i < 3; ++i) {
    auto n = parse_number<std::size_t>(parts[i]);
    if (!n) return "N or n1xn2xn3";
    c.dims[i] = *n;
  }
  return std::nullopt;
}

inline std::optional<std::string> set_band(std::string_view v, RunConfig& c) {
  auto parts = split(v, ',');
  if (parts.size() != 2) return "two comma-separated integers";
  auto lo = parse_number<int>(parts[0]), hi = parse_number<int>(parts[1]);
  if (!lo || !hi) return "two comma-separated integers";
  c.ensemble.band = std::make_pair(*lo, *hi);
  return std::nullopt;
}

inline const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = [] {
    std::map<std::string, Setter, std::less<>> t;
    t["grid"] = set_grid;
    t["seed"] = number_into(&RunConfig::seed);
    t["nu_h"] = nested_number(&RunConfig::solver, &SolverConfig::nu_h);
    t["nu_v"] = nested_number(&RunConfig::solver, &SolverConfig::nu_v);
    t["epsilon"] = nested_number(&RunConfig::solver, &SolverConfig::epsilon);
    t["dt"] = nested_number(&RunConfig::solver, &SolverConfig::dt);
    t["t_end"] = nested_number(&RunConfig::solver, &SolverConfig::t_end);
    t["s"] = nested_number(&RunConfig::solver, &SolverConfig::s);
    t["dt_cap"] = nested_number(&RunConfig::solver, &SolverConfig::dt_cap);
    t["blowup_threshold"] = nested_number(&RunConfig::solver, &SolverConfig::blowup_threshold);
    t["snapshot_every"] = nested_number(&RunConfig::solver, &SolverConfig::snapshot_every);
    t["dealias"] = [](std::string_view v, RunConfig& c) -> std::optional<std::string> {
      if (v == "pad") c.solver.dealias = Dealias::pad;
      else if (v == "none") c.solver.dealias = Dealias::none;
      else return "one of pad none";
      return std::nullopt;
    };
    t["nonlinear"] = [](std::string_view v, RunConfig& c) -> std::optional<std::string> {
      auto b = parse_bool(v);
      if (!b) return "a boolean";
      c.solver.nonlinear = *b;
      return std::nullopt;
    };
    t["rotation"] = word_into(&RunConfig::rotation, {"zero", "constant-e3", "beta-plane", "x1-only", "x1x2"});
    t["rot_magnitude"] = number_into(&RunConfig::rot_magnitude);
    t["beta"] = number_into(&RunConfig::beta);
    t["rot_a"] = number_into(&RunConfig::rot_a);
    t["rot_tau"] = number_into(&RunConfig::rot_tau);
    t["rot_omega"] = number_into(&RunConfig::rot_omega);
    t["initial"] = word_into(&RunConfig::initial, {"zero", "shear", "taylor-green", "random"});
    t["amplitude"] = [](std::string_view v, RunConfig& c) -> std::optional<std::string> {
      auto x = parse_number<double>(v);
      if (!x) return "a number";
      c.amplitude = *x;
      return std::nullopt;
    };
    t["count"] = nested_number(&RunConfig::ensemble, &FieldEnsembleSpec::count);
    t["spectrum"] = nested_number(&RunConfig::ensemble, &FieldEnsembleSpec::spectrum);
    t["ensemble_amplitude"] = nested_number(&RunConfig::ensemble, &FieldEnsembleSpec::amplitude);
    t["band"] = set_band;
    t["divfree"] = [](std::string_view v, RunConfig& c) -> std::optional<std::string> {
      auto b = parse_bool(v);
      if (!b) return "a boolean";
      c.ensemble.divfree = *b;
      return std::nullopt;
    };
    t["bank"] = word_into(&RunConfig::bank, {"iso", "vert", "both"});
    t["target"] = word_into(&RunConfig::target, {"all", "bernstein", "commutator", "product", "trilinear", "divfree",
                                                 "gagliardo-nirenberg", "interpolation", "block-bound",
                                                 "norm-equivalence", "embedding"});
    t["q"] = nested_number(&RunConfig::bernstein, &BernsteinParams::q);
    t["k"] = nested_number(&RunConfig::bernstein, &BernsteinParams::k);
    t["p"] = nested_number(&RunConfig::bernstein, &BernsteinParams::p);
    t["r"] = nested_number(&RunConfig::bernstein, &BernsteinParams::r);
    t["rprime"] = nested_number(&RunConfig::bernstein, &BernsteinParams::rprime);
    t["j"] = number_into(&RunConfig::j);
    t["alpha"] = number_into(&RunConfig::alpha);
    t["interp_a"] = pair_into(&RunConfig::interp_a);
    t["interp_b"] = pair_into(&RunConfig::interp_b);
    t["experiment"] = word_into(&RunConfig::experiment, {"small-data", "splitting", "ns-propagation", "rossby-sweep"});
    t["multiples"] = reals_into(&RunConfig::multiples);
    t["epsilons"] = reals_into(&RunConfig::epsilons);
    t["split_N"] = number_into(&RunConfig::split_N);
    t["c"] = number_into(&RunConfig::c);
    t["control_beta"] = number_into(&RunConfig::control_beta);
    t["control_time"] = number_into(&RunConfig::control_time);
    t["gronwall_C"] = number_into(&RunConfig::gronwall_C);
    return t;
  }();
  return table;
}

inline RotationSpec build_rotation(const RunConfig& c) {
  if (c.rotation == "constant-e3") return RotationSpec::constant_e3(c.rot_magnitude);
  if (c.rotation == "beta-plane") return RotationSpec::beta_plane(c.beta);
  if (c.rotation == "x1-only") return RotationSpec::x1_only(c.rot_a, c.rot_tau, c.rot_omega);
  if (c.rotation == "x1x2") return RotationSpec::x1x2(c.rot_a, c.rot_tau, c.rot_omega);
  return RotationSpec::zero();
}

}  // namespace detail

inline std::vector<std::string_view> required_keys(ConfigPurpose purpose) {
  if (purpose == ConfigPurpose::solver) return {"grid", "nu_h", "epsilon", "dt", "t_end", "s", "rotation"};
  return {"grid"};
}

/// Parses key=value lines; '#' starts a comment. Collects every error instead of stopping at the first.
inline ConfigResult parse_config_text(std::string_view text, ConfigPurpose purpose = ConfigPurpose::solver) {
  ConfigResult res;
  RunConfig c;
  std::set<std::string, std::less<>> seen;
  std::istringstream is{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      res.errors.push_back(where + "expected key=value, got '" + std::string(line) + "'");
      continue;
    }
    const auto key = detail::trim(line.substr(0, eq));
    const auto value = detail::trim(line.substr(eq + 1));
    const auto it = detail::setters().find(key);
    if (it == detail::setters().end()) {
      res.errors.push_back(where + "unknown key '" + std::string(key) + "'");
      continue;
    }
    if (!seen.emplace(key).second) {
      res.errors.push_back(where + "duplicate key '" + std::string(key) + "'");
      continue;
    }
    if (auto expected = it->second(value, c)) {
      res.errors.push_back(where + std::string(key) + " expects " + *expected + ", got '" + std::string(value) + "'");
      continue;
    }
    c.entries.emplace_back(key, value);
  }

  for (auto key : required_keys(purpose)) {
    if (!seen.contains(key)) res.errors.push_back("missing required key '" + std::string(key) + "'");
  }

  std::optional<Grid> g;
  try {
    g = c.grid();
  } catch (const std::invalid_argument& e) {
    res.errors.push_back(std::string("grid: ") + e.what());
  }
  if (g) {
    c.solver.grid = *g;
    c.solver.rotation = detail::build_rotation(c);
    if (c.solver.snapshot_every > 0) c.solver.snapshot_dir = "snapshots";
    if (purpose == ConfigPurpose::solver) {
      for (auto& e : c.solver.validate()) res.errors.push_back(std::move(e));
    } else if (!(c.solver.nu_h > 0.0)) {
      res.errors.emplace_back("nu_h must satisfy ν_h > 0");
    }
    if (c.ensemble.band && (c.ensemble.band->first < 0 || c.ensemble.band->first > c.ensemble.band->second ||
                            c.ensemble.band->second > jmax(*g, Bank::iso)))
      res.errors.push_back("band must satisfy 0 <= lo <= hi <= " + std::to_string(jmax(*g, Bank::iso)));
  }
  if (c.ensemble.count < 1) res.errors.emplace_back("count must be >= 1");
  if (!(c.ensemble.amplitude > 0.0)) res.errors.emplace_back("ensemble_amplitude must be > 0");
  if (c.amplitude && !(*c.amplitude >= 0.0)) res.errors.emplace_back("amplitude must be >= 0");
  if (c.bernstein.q < 0) res.errors.emplace_back("q must be >= 0");
  if (c.bernstein.k < 0) res.errors.emplace_back("k must be >= 0");
  if (!(c.bernstein.p >= 1.0) || !(c.bernstein.r >= 1.0) || !(c.bernstein.rprime >= 1.0))
    res.errors.emplace_back("p, r and rprime must be >= 1");
  if (c.bernstein.rprime > c.bernstein.r) res.errors.emplace_back("rprime must not exceed r");
  if (c.j < 0) res.errors.emplace_back("j must be >= 0");
  if (!(c.alpha >= 0.0 && c.alpha <= 1.0)) res.errors.emplace_back("alpha must lie in [0, 1]");
  for (double e : c.epsilons)
    if (!(e > 0.0)) res.errors.emplace_back("epsilons must all be > 0");
  if (c.epsilons.empty()) res.errors.emplace_back("epsilons must not be empty");
  for (double m : c.multiples)
    if (!(m >= 0.0)) res.errors.emplace_back("multiples must all be >= 0");
  if (!(c.c > 0.0)) res.errors.emplace_back("c must be > 0");
  if (!(c.control_time > 0.0)) res.errors.emplace_back("control_time must be > 0");
  if (!(c.gronwall_C >= 0.0)) res.errors.emplace_back("gronwall_C must be >= 0");

  if (res.errors.empty()) res.config = std::move(c);
  return res;
}

inline ConfigResult parse_config(const std::string& path, ConfigPurpose purpose = ConfigPurpose::solver) {
  std::ifstream is(path);
  if (!is) return {std::nullopt, {"cannot read config file '" + path + "'"}};
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config_text(ss.str(), purpose);
}

}  // namespace alp
