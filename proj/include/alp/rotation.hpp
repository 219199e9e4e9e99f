#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "alp/field.hpp"
#include "alp/operators.hpp"
#include "alp/transform.hpp"

namespace alp {

enum class RotationKind { zero, constant_e3, beta_plane, x1_only, x1x2 };

/// Which horizontal variables B may depend on.
enum class Dependence { constant, x1, xh };

/// Rotation vector B(t, x1, x2), independent of x3.
struct RotationSpec {
  using Component = std::function<double(double t, double x1, double x2)>;

  RotationKind kind = RotationKind::zero;
  Dependence dependence = Dependence::constant;
  Component b1, b2, b3;

  static RotationSpec zero() {
    const auto z = [](double, double, double) { return 0.0; };
    return {RotationKind::zero, Dependence::constant, z, z, z};
  }

  static RotationSpec constant_e3(double magnitude = 1.0) {
    const auto z = [](double, double, double) { return 0.0; };
    return {RotationKind::constant_e3, Dependence::constant, z, z,
            [magnitude](double, double, double) { return magnitude; }};
  }

  /// (0, 0, 1 + beta sin x2).
  static RotationSpec beta_plane(double beta) {
    const auto z = [](double, double, double) { return 0.0; };
    return {RotationKind::beta_plane, beta == 0.0 ? Dependence::constant : Dependence::xh, z, z,
            [beta](double, double, double x2) { return 1.0 + beta * std::sin(x2); }};
  }

  /// (tau cos x1, 0, 1 + a sin x1 cos(omega t)).
  static RotationSpec x1_only(double a = 0.5, double tau = 0.0, double omega = 0.0) {
    return {RotationKind::x1_only, Dependence::x1, [tau](double, double x1, double) { return tau * std::cos(x1); },
            [](double, double, double) { return 0.0; },
            [a, omega](double t, double x1, double) { return 1.0 + a * std::sin(x1) * std::cos(omega * t); }};
  }

  /// (tau cos x2, tau sin x1, 1 + a sin x1 cos x2 cos(omega t)).
  static RotationSpec x1x2(double a = 0.5, double tau = 0.0, double omega = 0.0) {
    return {RotationKind::x1x2, Dependence::xh, [tau](double, double, double x2) { return tau * std::cos(x2); },
            [tau](double, double x1, double) { return tau * std::sin(x1); },
            [a, omega](double t, double x1, double x2) {
              return 1.0 + a * std::sin(x1) * std::cos(x2) * std::cos(omega * t);
            }};
  }

  bool depends_on_x2() const { return dependence == Dependence::xh; }
};

inline std::string_view to_string(RotationKind k) {
  switch (k) {
    case RotationKind::zero: return "zero";
    case RotationKind::constant_e3: return "constant-e3";
    case RotationKind::beta_plane: return "beta-plane";
    case RotationKind::x1_only: return "x1-only";
    case RotationKind::x1x2: return "x1x2";
  }
  return "?";
}

/// Samples of B on the n1 x n2 horizontal grid, index i1 * n2 + i2.
using RotationSamples = std::array<std::vector<double>, 3>;

inline RotationSamples eval_rotation(const RotationSpec& rot, const Grid& g, double t) {
  RotationSamples out;
  const std::size_t nh = g.n1() * g.n2();
  for (auto& c : out) c.assign(nh, 0.0);
  if (rot.kind == RotationKind::zero) return out;
  const double h1 = g.spacing(0), h2 = g.spacing(1);
  for (std::size_t i1 = 0; i1 < g.n1(); ++i1) {
    for (std::size_t i2 = 0; i2 < g.n2(); ++i2) {
      const double x1 = h1 * static_cast<double>(i1), x2 = h2 * static_cast<double>(i2);
      const std::size_t h = i1 * g.n2() + i2;
      out[0][h] = rot.b1(t, x1, x2);
      out[1][h] = rot.b2(t, x1, x2);
      out[2][h] = rot.b3(t, x1, x2);
    }
  }
  return out;
}

/// Sampled checks of the declared structure of B at the given times; empty when consistent.
inline std::vector<std::string> validate_rotation(const RotationSpec& rot, const Grid& g,
                                                  std::initializer_list<double> times = {0.0, 0.5, 1.0}) {
  std::vector<std::string> errors;
  if (!rot.b1 || !rot.b2 || !rot.b3) {
    errors.emplace_back("rotation components must all be set");
    return errors;
  }
  for (double t : times) {
    const auto b = eval_rotation(rot, g, t);
    for (int c = 0; c < 3; ++c) {
      for (std::size_t i1 = 0; i1 < g.n1(); ++i1) {
        for (std::size_t i2 = 0; i2 < g.n2(); ++i2) {
          const double v = b[static_cast<std::size_t>(c)][i1 * g.n2() + i2];
          if (!std::isfinite(v)) {
            errors.push_back("rotation component b" + std::to_string(c + 1) + " is not finite");
            return errors;
          }
          if (rot.kind == RotationKind::zero && v != 0.0) {
            errors.emplace_back("zero rotation has a nonzero component");
            return errors;
          }
          const double first = b[static_cast<std::size_t>(c)][i1 * g.n2()];
          if (rot.dependence != Dependence::xh && v != first) {
            errors.push_back("rotation component b" + std::to_string(c + 1) + " varies in x2");
            return errors;
          }
        }
      }
    }
  }
  return errors;
}

namespace detail {

inline bool all_zero(const RotationSamples& b) {
  for (const auto& c : b)
    for (double x : c)
      if (x != 0.0) return false;
  return true;
}

template <typename Kernel>
VectorField pointwise(const VectorField& u, const RotationSamples& b, Kernel&& kernel) {
  const Grid& g = u.grid();
  if (b[0].size() != g.n1() * g.n2()) throw std::invalid_argument("rotation samples do not match the horizontal grid");
  auto p = to_physical(u, g);
  const std::size_t n3 = g.n3();
  for (std::size_t h = 0; h < b[0].size(); ++h) {
    const std::array<double, 3> bb{b[0][h], b[1][h], b[2][h]};
    for (std::size_t i3 = 0; i3 < n3; ++i3) {
      const std::size_t m = h * n3 + i3;
      std::array<double, 3> v{p[0][m], p[1][m], p[2][m]};
      kernel(v, bb);
      p[0][m] = v[0];
      p[1][m] = v[1];
      p[2][m] = v[2];
    }
  }
  const std::vector<double>* ptr[] = {&p[0], &p[1], &p[2]};
  auto f = from_physical(ptr, g, g);
  return VectorField(std::move(f[0]), std::move(f[1]), std::move(f[2]));
}

inline std::array<double, 3> cross(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace detail

/// Pointwise u x B on the native grid.
inline VectorField cross_rotation(const VectorField& u, const RotationSamples& b) {
  return detail::pointwise(u, b, [](std::array<double, 3>& v, const std::array<double, 3>& bb) { v = detail::cross(v, bb); });
}

/// Solves du/dt = (1/eps) B x u exactly at every grid point for a time tau = dt/eps:
/// rotation about B(x_h) by the angle |B(x_h)| tau. The result is not projected.
inline VectorField rotate_pointwise(const VectorField& u, const RotationSamples& b, double tau) {
  if (detail::all_zero(b) || tau == 0.0) return u;
  return detail::pointwise(u, b, [tau](std::array<double, 3>& v, const std::array<double, 3>& bb) {
    const double nb = std::sqrt(bb[0] * bb[0] + bb[1] * bb[1] + bb[2] * bb[2]);
    if (nb == 0.0) return;
    const std::array<double, 3> k{bb[0] / nb, bb[1] / nb, bb[2] / nb};
    const double a = nb * tau, c = std::cos(a), s = std::sin(a);
    const double kv = k[0] * v[0] + k[1] * v[1] + k[2] * v[2];
    const auto kx = detail::cross(k, v);
    for (int i = 0; i < 3; ++i) v[i] = v[i] * c + kx[i] * s + k[i] * kv * (1.0 - c);
  });
}

/// Exact pointwise rotation over dt followed by the Leray projection.
inline VectorField rotation_substep(const VectorField& u, const RotationSamples& b, double dt, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("rotation needs epsilon > 0");
  return leray_project(rotate_pointwise(u, b, dt / epsilon));
}

}  // namespace alp
