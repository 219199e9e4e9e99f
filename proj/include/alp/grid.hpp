#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace alp {

/// Uniform grid on the periodic box [0, 2pi)^3.
///
/// Coefficients and samples are stored row-major with the third axis fastest.
/// Along an axis of n points, storage index i holds wavenumber i for
/// i < n/2 and i - n otherwise, so wavenumbers cover [-n/2, n/2).
class Grid {
 public:
  Grid(std::size_t n1, std::size_t n2, std::size_t n3) : n_{n1, n2, n3} {
    for (std::size_t n : n_) {
      if (n < 8 || n % 2 != 0) {
        throw std::invalid_argument("grid sizes must be even and >= 8, got " + std::to_string(n));
      }
    }
  }

  static Grid cube(std::size_t n) { return Grid(n, n, n); }

  std::size_t n(int axis) const { return n_[static_cast<std::size_t>(axis)]; }
  std::size_t n1() const { return n_[0]; }
  std::size_t n2() const { return n_[1]; }
  std::size_t n3() const { return n_[2]; }
  std::size_t size() const { return n_[0] * n_[1] * n_[2]; }
  std::size_t horizontal_size() const { return n_[0] * n_[1]; }

  double spacing(int axis) const { return 2.0 * std::numbers::pi / static_cast<double>(n(axis)); }

  std::size_t flat(std::size_t i1, std::size_t i2, std::size_t i3) const {
    return (i1 * n_[1] + i2) * n_[2] + i3;
  }

  static int wavenumber(std::size_t i, std::size_t n) {
    return i < n / 2 ? static_cast<int>(i) : static_cast<int>(i) - static_cast<int>(n);
  }

  static std::size_t index_of(int k, std::size_t n) {
    const int m = static_cast<int>(n);
    return static_cast<std::size_t>(((k % m) + m) % m);
  }

  static bool is_nyquist(int k, std::size_t n) { return k == -static_cast<int>(n / 2); }

  std::array<int, 3> wavevector(std::size_t flat_index) const {
    const std::size_t i3 = flat_index % n_[2];
    const std::size_t i2 = (flat_index / n_[2]) % n_[1];
    const std::size_t i1 = flat_index / (n_[1] * n_[2]);
    return {wavenumber(i1, n_[0]), wavenumber(i2, n_[1]), wavenumber(i3, n_[2])};
  }

  /// Storage index of -k (modulo the grid); Nyquist planes map onto themselves.
  std::size_t conjugate_index(std::size_t flat_index) const {
    const auto k = wavevector(flat_index);
    return flat(index_of(-k[0], n_[0]), index_of(-k[1], n_[1]), index_of(-k[2], n_[2]));
  }

  bool has_nyquist_component(const std::array<int, 3>& k) const {
    return is_nyquist(k[0], n_[0]) || is_nyquist(k[1], n_[1]) || is_nyquist(k[2], n_[2]);
  }

  /// Largest |k| over all stored wavevectors.
  double max_radius() const {
    double r2 = 0.0;
    for (std::size_t n : n_) r2 += 0.25 * static_cast<double>(n * n);
    return std::sqrt(r2);
  }

  /// Grid with at least 3n/2 points per axis (rounded up to even), large enough for alias-free quadratic products.
  Grid padded() const {
    auto up = [](std::size_t n) { return (3 * n / 2 + 1) & ~std::size_t{1}; };
    return Grid(up(n_[0]), up(n_[1]), up(n_[2]));
  }

  bool operator==(const Grid&) const = default;

  std::string label() const {
    if (n_[0] == n_[1] && n_[1] == n_[2]) return std::to_string(n_[0]);
    return std::to_string(n_[0]) + "x" + std::to_string(n_[1]) + "x" + std::to_string(n_[2]);
  }

 private:
  std::array<std::size_t, 3> n_;
};

/// Calls f(flat, k1, k2, k3) for every stored mode, in storage order.
template <typename F>
void for_each_mode(const Grid& g, F&& f) {
  std::size_t idx = 0;
  for (std::size_t i1 = 0; i1 < g.n1(); ++i1) {
    const int k1 = Grid::wavenumber(i1, g.n1());
    for (std::size_t i2 = 0; i2 < g.n2(); ++i2) {
      const int k2 = Grid::wavenumber(i2, g.n2());
      for (std::size_t i3 = 0; i3 < g.n3(); ++i3, ++idx) {
        f(idx, k1, k2, Grid::wavenumber(i3, g.n3()));
      }
    }
  }
}

/// Calls f(flat, x1, x2, x3) for every grid point, in storage order.
template <typename F>
void for_each_point(const Grid& g, F&& f) {
  const double h1 = g.spacing(0), h2 = g.spacing(1), h3 = g.spacing(2);
  std::size_t idx = 0;
  for (std::size_t i1 = 0; i1 < g.n1(); ++i1) {
    for (std::size_t i2 = 0; i2 < g.n2(); ++i2) {
      for (std::size_t i3 = 0; i3 < g.n3(); ++i3, ++idx) {
        f(idx, h1 * static_cast<double>(i1), h2 * static_cast<double>(i2), h3 * static_cast<double>(i3));
      }
    }
  }
}

}  // namespace alp
