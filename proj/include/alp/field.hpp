#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "alp/grid.hpp"

namespace alp {

using cplx = std::complex<double>;

/// Fourier coefficients of a scalar field on a Grid.
///
/// Normalization: coeff(k) = (1/N) sum_x f(x) e^{-ik.x}, so a constant field
/// c has coeff(0) = c and cos(x1) has 1/2 at k = (+-1, 0, 0). The reality flag
/// records that the coefficients came from real samples and are conjugate
/// symmetric; every linear operator in the library propagates it.
class SpectralField {
 public:
  explicit SpectralField(const Grid& g, bool real = true) : grid_(g), c_(g.size()), real_(real) {}
  SpectralField(const Grid& g, std::vector<cplx> coeffs, bool real) : grid_(g), c_(std::move(coeffs)), real_(real) {
    if (c_.size() != g.size()) throw std::invalid_argument("coefficient count does not match grid");
  }

  const Grid& grid() const { return grid_; }
  bool is_real() const { return real_; }
  void set_real(bool r) { real_ = r; }

  std::span<const cplx> coeffs() const { return c_; }
  std::span<cplx> coeffs() { return c_; }
  std::size_t size() const { return c_.size(); }

  cplx& operator[](std::size_t i) { return c_[i]; }
  const cplx& operator[](std::size_t i) const { return c_[i]; }

  cplx at(int k1, int k2, int k3) const {
    return c_[grid_.flat(Grid::index_of(k1, grid_.n1()), Grid::index_of(k2, grid_.n2()),
                         Grid::index_of(k3, grid_.n3()))];
  }
  cplx& at(int k1, int k2, int k3) {
    return c_[grid_.flat(Grid::index_of(k1, grid_.n1()), Grid::index_of(k2, grid_.n2()),
                         Grid::index_of(k3, grid_.n3()))];
  }

  SpectralField& operator+=(const SpectralField& o) {
    check_same_grid(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    real_ = real_ && o.real_;
    return *this;
  }
  SpectralField& operator-=(const SpectralField& o) {
    check_same_grid(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    real_ = real_ && o.real_;
    return *this;
  }
  SpectralField& operator*=(double a) {
    for (auto& c : c_) c *= a;
    return *this;
  }

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

  /// sqrt(sum |c_k|^2), which by Parseval is the root-mean-square of the samples.
  double l2_norm() const {
    double s = 0.0;
    for (const auto& c : c_) s += std::norm(c);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& c : c_) m = std::max(m, std::abs(c));
    return m;
  }

  /// max_k |c(-k) - conj(c(k))| relative to max_k |c(k)|.
  double conjugate_asymmetry() const {
    const double scale = max_abs();
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      worst = std::max(worst, std::abs(c_[grid_.conjugate_index(i)] - std::conj(c_[i])));
    }
    return worst / scale;
  }

  /// Returns a copy with every coefficient scaled by m(k1, k2, k3).
  template <typename Multiplier>
  SpectralField multiplied(Multiplier&& m) const {
    SpectralField out(grid_, real_);
    for_each_mode(grid_, [&](std::size_t i, int k1, int k2, int k3) { out.c_[i] = c_[i] * m(k1, k2, k3); });
    return out;
  }

  void check_same_grid(const SpectralField& o) const {
    if (!(grid_ == o.grid_)) throw std::invalid_argument("fields live on different grids");
  }

 private:
  Grid grid_;
  std::vector<cplx> c_;
  bool real_;
};

/// Three components on a shared grid plus an asserted divergence-free flag.
class VectorField {
 public:
  explicit VectorField(const Grid& g) : c_{SpectralField(g), SpectralField(g), SpectralField(g)} {}
  VectorField(SpectralField u1, SpectralField u2, SpectralField u3, bool divfree = false)
      : c_{std::move(u1), std::move(u2), std::move(u3)}, divfree_(divfree) {
    c_[0].check_same_grid(c_[1]);
    c_[0].check_same_grid(c_[2]);
  }

  const Grid& grid() const { return c_[0].grid(); }
  SpectralField& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  const SpectralField& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  bool divfree() const { return divfree_; }
  void set_divfree(bool d) { divfree_ = d; }
  bool is_real() const { return c_[0].is_real() && c_[1].is_real() && c_[2].is_real(); }

  VectorField& operator+=(const VectorField& o) {
    for (int i = 0; i < 3; ++i) (*this)[i] += o[i];
    divfree_ = divfree_ && o.divfree_;
    return *this;
  }
  VectorField& operator-=(const VectorField& o) {
    for (int i = 0; i < 3; ++i) (*this)[i] -= o[i];
    divfree_ = divfree_ && o.divfree_;
    return *this;
  }
  VectorField& operator*=(double a) {
    for (auto& c : c_) c *= a;
    return *this;
  }
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(double s, VectorField a) { return a *= s; }

  double l2_norm() const {
    double s = 0.0;
    for (const auto& c : c_) s += c.l2_norm() * c.l2_norm();
    return std::sqrt(s);
  }
  double max_abs() const {
    return std::max({c_[0].max_abs(), c_[1].max_abs(), c_[2].max_abs()});
  }

  template <typename Multiplier>
  VectorField multiplied(Multiplier&& m) const {
    return VectorField(c_[0].multiplied(m), c_[1].multiplied(m), c_[2].multiplied(m), divfree_);
  }

 private:
  std::array<SpectralField, 3> c_;
  bool divfree_ = false;
};

/// max_k |k . u(k)| / max_k |u(k)|; zero for the zero field.
inline double divergence_defect(const VectorField& u) {
  const double scale = u.max_abs();
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for_each_mode(u.grid(), [&](std::size_t i, int k1, int k2, int k3) {
    const cplx d = double(k1) * u[0][i] + double(k2) * u[1][i] + double(k3) * u[2][i];
    worst = std::max(worst, std::abs(d));
  });
  return worst / scale;
}

}  // namespace alp
