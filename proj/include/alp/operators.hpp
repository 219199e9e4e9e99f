#pragma once

#include <array>
#include <utility>

#include "alp/field.hpp"
#include "alp/transform.hpp"

namespace alp {

/// d/dx_axis (axis 0, 1 or 2). The Nyquist plane of that axis is dropped,
/// since i*k there has no conjugate partner.
inline SpectralField derivative(const SpectralField& u, int axis) {
  const Grid& g = u.grid();
  SpectralField out(g, u.is_real());
  const std::size_t n = g.n(axis);
  for_each_mode(g, [&](std::size_t i, int k1, int k2, int k3) {
    const int k = axis == 0 ? k1 : (axis == 1 ? k2 : k3);
    if (Grid::is_nyquist(k, n)) return;
    out[i] = cplx(0.0, static_cast<double>(k)) * u[i];
  });
  return out;
}

inline std::pair<SpectralField, SpectralField> horizontal_gradient(const SpectralField& u) {
  return {derivative(u, 0), derivative(u, 1)};
}

inline VectorField gradient(const SpectralField& u) {
  return VectorField(derivative(u, 0), derivative(u, 1), derivative(u, 2));
}

/// Delta_h = d1^2 + d2^2, multiplier -(k1^2 + k2^2).
inline SpectralField horizontal_laplacian(const SpectralField& u) {
  return u.multiplied([](int k1, int k2, int) { return -static_cast<double>(k1 * k1 + k2 * k2); });
}

inline SpectralField divergence(const VectorField& u) {
  return derivative(u[0], 0) + derivative(u[1], 1) + derivative(u[2], 2);
}

/// div_h u_h = d1 u1 + d2 u2.
inline SpectralField horizontal_divergence(const VectorField& u) { return derivative(u[0], 0) + derivative(u[1], 1); }

/// The six components d_a u_i, a in {1,2}; index 2*i + a.
inline std::array<SpectralField, 6> horizontal_gradient(const VectorField& u) {
  return {derivative(u[0], 0), derivative(u[0], 1), derivative(u[1], 0),
          derivative(u[1], 1), derivative(u[2], 0), derivative(u[2], 1)};
}

/// Orthogonal projection onto divergence-free fields, mode by mode:
/// u(k) - k (k.u(k)) / |k|^2. The k = 0 mode passes through; modes with a
/// Nyquist component are removed.
inline VectorField leray_project(const VectorField& u) {
  const Grid& g = u.grid();
  VectorField out(g);
  for (int c = 0; c < 3; ++c) out[c].set_real(u[c].is_real());
  for_each_mode(g, [&](std::size_t i, int k1, int k2, int k3) {
    if (g.has_nyquist_component({k1, k2, k3})) return;
    const double a = k1, b = k2, c = k3;
    const double k2sum = a * a + b * b + c * c;
    if (k2sum == 0.0) {
      for (int m = 0; m < 3; ++m) out[m][i] = u[m][i];
      return;
    }
    const cplx kdotu = a * u[0][i] + b * u[1][i] + c * u[2][i];
    const cplx f = kdotu / k2sum;
    out[0][i] = u[0][i] - a * f;
    out[1][i] = u[1][i] - b * f;
    out[2][i] = u[2][i] - c * f;
  });
  out.set_divfree(true);
  return out;
}

/// (u.grad) v = sum_j u_j d_j v, products evaluated under rule.
inline VectorField advect(const VectorField& u, const VectorField& v, Dealias rule = Dealias::pad) {
  const Grid& g = u.grid();
  const Grid quad = quadrature_grid(g, rule);
  std::array<SpectralField, 9> dv{derivative(v[0], 0), derivative(v[0], 1), derivative(v[0], 2),
                                  derivative(v[1], 0), derivative(v[1], 1), derivative(v[1], 2),
                                  derivative(v[2], 0), derivative(v[2], 1), derivative(v[2], 2)};
  const SpectralField* in[] = {&u[0], &u[1], &u[2], &dv[0], &dv[1], &dv[2], &dv[3], &dv[4], &dv[5], &dv[6], &dv[7], &dv[8]};
  auto phys = to_physical(in, quad);
  std::array<std::vector<double>, 3> out;
  for (int i = 0; i < 3; ++i) {
    out[i].resize(quad.size());
    const auto& d1 = phys[3 + 3 * i];
    const auto& d2 = phys[4 + 3 * i];
    const auto& d3 = phys[5 + 3 * i];
    for (std::size_t p = 0; p < quad.size(); ++p) {
      out[i][p] = phys[0][p] * d1[p] + phys[1][p] * d2[p] + phys[2][p] * d3[p];
    }
  }
  const std::vector<double>* ptr[] = {&out[0], &out[1], &out[2]};
  auto f = from_physical(ptr, quad, g);
  return VectorField(std::move(f[0]), std::move(f[1]), std::move(f[2]));
}

/// div(u (x) v), i.e. sum_j d_j(u_j v_i). Equals advect(u, v) when div u = 0.
inline VectorField advect_conservative(const VectorField& u, const VectorField& v, Dealias rule = Dealias::pad) {
  const Grid& g = u.grid();
  const Grid quad = quadrature_grid(g, rule);
  const SpectralField* in[] = {&u[0], &u[1], &u[2], &v[0], &v[1], &v[2]};
  auto phys = to_physical(in, quad);
  std::array<std::vector<double>, 9> flux;  // index 3*i + j holds u_j v_i
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      auto& f = flux[static_cast<std::size_t>(3 * i + j)];
      f.resize(quad.size());
      const auto& uj = phys[static_cast<std::size_t>(j)];
      const auto& vi = phys[static_cast<std::size_t>(3 + i)];
      for (std::size_t p = 0; p < quad.size(); ++p) f[p] = uj[p] * vi[p];
    }
  }
  const std::vector<double>* ptr[9];
  for (std::size_t m = 0; m < 9; ++m) ptr[m] = &flux[m];
  auto fl = from_physical(ptr, quad, g);
  VectorField out(g);
  for (int i = 0; i < 3; ++i) {
    out[i] = derivative(fl[static_cast<std::size_t>(3 * i)], 0) + derivative(fl[static_cast<std::size_t>(3 * i + 1)], 1) +
             derivative(fl[static_cast<std::size_t>(3 * i + 2)], 2);
  }
  return out;
}

/// Same as advect_conservative(u, u) but with the six symmetric products only.
inline VectorField self_advect_conservative(const VectorField& u, Dealias rule = Dealias::pad) {
  const Grid& g = u.grid();
  const Grid quad = quadrature_grid(g, rule);
  const SpectralField* in[] = {&u[0], &u[1], &u[2]};
  auto phys = to_physical(in, quad);
  // 00 01 02 11 12 22
  constexpr int pairs[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
  std::array<std::vector<double>, 6> flux;
  for (std::size_t m = 0; m < 6; ++m) {
    flux[m].resize(quad.size());
    const auto& a = phys[static_cast<std::size_t>(pairs[m][0])];
    const auto& b = phys[static_cast<std::size_t>(pairs[m][1])];
    for (std::size_t p = 0; p < quad.size(); ++p) flux[m][p] = a[p] * b[p];
  }
  const std::vector<double>* ptr[6];
  for (std::size_t m = 0; m < 6; ++m) ptr[m] = &flux[m];
  auto fl = from_physical(ptr, quad, g);
  auto at = [&](int i, int j) -> const SpectralField& {
    if (i > j) std::swap(i, j);
    static constexpr int slot[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
    return fl[static_cast<std::size_t>(slot[i][j])];
  };
  VectorField out(g);
  for (int i = 0; i < 3; ++i) {
    out[i] = derivative(at(i, 0), 0) + derivative(at(i, 1), 1) + derivative(at(i, 2), 2);
  }
  return out;
}

}  // namespace alp
