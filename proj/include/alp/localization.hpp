#pragma once

#include <cmath>
#include <stdexcept>

#include "alp/field.hpp"
#include "alp/filter_bank.hpp"

namespace alp {

/// Which frequency the dyadic blocks see: |k| (isotropic) or |k3| (vertical).
enum class Bank { iso, vert };

inline double bank_radius(Bank b, int k1, int k2, int k3) {
  if (b == Bank::vert) return std::abs(static_cast<double>(k3));
  return std::sqrt(static_cast<double>(k1 * k1 + k2 * k2 + k3 * k3));
}

inline int jmax(const Grid& g, Bank b) {
  return FilterBank::jmax(b == Bank::iso ? g.max_radius() : 0.5 * static_cast<double>(g.n3()));
}

/// Delta_j u; zero for j < -1 and for j beyond the last resolvable block.
inline SpectralField dyadic_block(const SpectralField& u, int j, Bank b) {
  if (j < -1 || j > jmax(u.grid(), b)) return SpectralField(u.grid(), u.is_real());
  return u.multiplied([&](int k1, int k2, int k3) { return FilterBank::block(j, bank_radius(b, k1, k2, k3)); });
}

/// S_q u = sum_{q' <= q-1} Delta_q' u.
inline SpectralField low_pass(const SpectralField& u, int q, Bank b) {
  if (q < 0) return SpectralField(u.grid(), u.is_real());
  return u.multiplied([&](int k1, int k2, int k3) { return FilterBank::low(q, bank_radius(b, k1, k2, k3)); });
}

inline SpectralField dyadic_block_iso(const SpectralField& u, int j) { return dyadic_block(u, j, Bank::iso); }
inline SpectralField dyadic_block_vert(const SpectralField& u, int q) { return dyadic_block(u, q, Bank::vert); }

/// S_N u with multiplier chi(2^-N |k|).
inline SpectralField low_pass_S(const SpectralField& u, int n) {
  if (n < 0) throw std::invalid_argument("S_N needs N >= 0");
  return low_pass(u, n, Bank::iso);
}

/// S_q^v u with multiplier depending on |k3| only.
inline SpectralField low_pass_vert_S(const SpectralField& u, int q) { return low_pass(u, q, Bank::vert); }

/// S_N^{x2,x3} u with multiplier chi~(2^-N |(k2,k3)|).
inline SpectralField low_pass_x2x3(const SpectralField& u, int n) {
  if (n < 0) throw std::invalid_argument("S_N^{x2,x3} needs N >= 0");
  return u.multiplied([&](int, int k2, int k3) {
    return FilterBank::low_wide(n, std::sqrt(static_cast<double>(k2 * k2 + k3 * k3)));
  });
}

inline VectorField dyadic_block(const VectorField& u, int j, Bank b) {
  return VectorField(dyadic_block(u[0], j, b), dyadic_block(u[1], j, b), dyadic_block(u[2], j, b), u.divfree());
}
inline VectorField low_pass(const VectorField& u, int q, Bank b) {
  return VectorField(low_pass(u[0], q, b), low_pass(u[1], q, b), low_pass(u[2], q, b), u.divfree());
}
inline VectorField low_pass_S(const VectorField& u, int n) {
  return VectorField(low_pass_S(u[0], n), low_pass_S(u[1], n), low_pass_S(u[2], n), u.divfree());
}
inline VectorField low_pass_x2x3(const VectorField& u, int n) {
  return VectorField(low_pass_x2x3(u[0], n), low_pass_x2x3(u[1], n), low_pass_x2x3(u[2], n), u.divfree());
}

/// Sum of all dyadic blocks; equals u up to rounding.
inline SpectralField block_sum(const SpectralField& u, Bank b) {
  SpectralField acc(u.grid(), u.is_real());
  for (int j = -1; j <= jmax(u.grid(), b); ++j) acc += dyadic_block(u, j, b);
  return acc;
}

}  // namespace alp
