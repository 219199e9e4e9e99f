#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "alp/field.hpp"
#include "alp/localization.hpp"
#include "alp/operators.hpp"
#include "alp/transform.hpp"

namespace alp {

/// Exponents of the anisotropic Sobolev space H^{s,s'}: horizontal s, vertical s'.
struct NormSpec {
  double s = 0.0;
  double s_v = 0.0;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

namespace detail {

inline double aniso_weight(const NormSpec& spec, int k1, int k2, int k3) {
  const double h = 1.0 + static_cast<double>(k1 * k1 + k2 * k2);
  const double v = 1.0 + static_cast<double>(k3 * k3);
  double w = 1.0;
  if (spec.s != 0.0) w *= std::pow(h, spec.s);
  if (spec.s_v != 0.0) w *= std::pow(v, spec.s_v);
  return w;
}

inline double iso_weight(double s, int k1, int k2, int k3) {
  if (s == 0.0) return 1.0;
  return std::pow(1.0 + static_cast<double>(k1 * k1 + k2 * k2 + k3 * k3), s);
}

// |k_h|^2 as seen by derivative(): Nyquist planes of the differentiated axis contribute 0.
inline double gradh_weight(const Grid& g, int k1, int k2) {
  double w = 0.0;
  if (!Grid::is_nyquist(k1, g.n1())) w += static_cast<double>(k1 * k1);
  if (!Grid::is_nyquist(k2, g.n2())) w += static_cast<double>(k2 * k2);
  return w;
}

template <typename Weight>
double weighted_sum(const SpectralField& u, Weight&& w) {
  double acc = 0.0;
  for_each_mode(u.grid(), [&](std::size_t i, int k1, int k2, int k3) { acc += w(k1, k2, k3) * std::norm(u[i]); });
  return acc;
}

template <typename Weight>
double weighted_inner(const SpectralField& u, const SpectralField& v, Weight&& w) {
  u.check_same_grid(v);
  double acc = 0.0;
  for_each_mode(u.grid(), [&](std::size_t i, int k1, int k2, int k3) {
    acc += w(k1, k2, k3) * (u[i].real() * v[i].real() + u[i].imag() * v[i].imag());
  });
  return acc;
}

inline void check_exponent(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("Lebesgue exponents must lie in [1, inf]");
}

}  // namespace detail

// ---- Fourier-weighted norms -------------------------------------------------

/// ||u||_{H^{s,s'}} = (sum_k (1+|k_h|^2)^s (1+k3^2)^s' |u(k)|^2)^{1/2}.
inline double norm_Hss(const SpectralField& u, const NormSpec& spec) {
  return std::sqrt(detail::weighted_sum(u, [&](int a, int b, int c) { return detail::aniso_weight(spec, a, b, c); }));
}
inline double norm_Hss(const VectorField& u, const NormSpec& spec) {
  double acc = 0.0;
  for (int i = 0; i < 3; ++i) acc += std::pow(norm_Hss(u[i], spec), 2);
  return std::sqrt(acc);
}

/// Isotropic H^s with weight (1+|k|^2)^s.
inline double norm_Hs(const SpectralField& u, double s) {
  return std::sqrt(detail::weighted_sum(u, [&](int a, int b, int c) { return detail::iso_weight(s, a, b, c); }));
}
inline double norm_Hs(const VectorField& u, double s) {
  double acc = 0.0;
  for (int i = 0; i < 3; ++i) acc += std::pow(norm_Hs(u[i], s), 2);
  return std::sqrt(acc);
}

inline double inner_product_Hss(const SpectralField& u, const SpectralField& v, const NormSpec& spec) {
  return detail::weighted_inner(u, v, [&](int a, int b, int c) { return detail::aniso_weight(spec, a, b, c); });
}
inline double inner_product_Hss(const VectorField& u, const VectorField& v, const NormSpec& spec) {
  double acc = 0.0;
  for (int i = 0; i < 3; ++i) acc += inner_product_Hss(u[i], v[i], spec);
  return acc;
}

inline double inner_product_Hs(const SpectralField& u, const SpectralField& v, double s) {
  return detail::weighted_inner(u, v, [&](int a, int b, int c) { return detail::iso_weight(s, a, b, c); });
}
inline double inner_product_Hs(const VectorField& u, const VectorField& v, double s) {
  double acc = 0.0;
  for (int i = 0; i < 3; ++i) acc += inner_product_Hs(u[i], v[i], s);
  return acc;
}

/// ||grad_h u|| in H^{s,s'}, computed from the multiplier without forming derivatives.
inline double norm_gradh_Hss(const VectorField& u, const NormSpec& spec) {
  const Grid& g = u.grid();
  double acc = 0.0;
  for (int i = 0; i < 3; ++i) {
    acc += detail::weighted_sum(
        u[i], [&](int a, int b, int c) { return detail::gradh_weight(g, a, b) * detail::aniso_weight(spec, a, b, c); });
  }
  return std::sqrt(acc);
}

inline double norm_gradh_Hs(const VectorField& u, double s) {
  const Grid& g = u.grid();
  double acc = 0.0;
  for (int i = 0; i < 3; ++i) {
    acc += detail::weighted_sum(
        u[i], [&](int a, int b, int c) { return detail::gradh_weight(g, a, b) * detail::iso_weight(s, a, b, c); });
  }
  return std::sqrt(acc);
}

// ---- dyadic-sum norms -----------------------------------------------------------

/// (sum_q 2^{2qs} ||Delta_q u||_{L^2}^2)^{1/2} for the chosen bank.
inline double norm_dyadic(const SpectralField& u, double s, Bank b) {
  double acc = 0.0;
  for (int q = -1; q <= jmax(u.grid(), b); ++q) {
    const double n = dyadic_block(u, q, b).l2_norm();
    acc += std::exp2(2.0 * q * s) * n * n;
  }
  return std::sqrt(acc);
}
inline double norm_dyadic(const VectorField& u, double s, Bank b) {
  double acc = 0.0;
  for (int i = 0; i < 3; ++i) acc += std::pow(norm_dyadic(u[i], s, b), 2);
  return std::sqrt(acc);
}

inline double norm_dyadic_vert(const SpectralField& u, double s) { return norm_dyadic(u, s, Bank::vert); }
inline double norm_dyadic_vert(const VectorField& u, double s) { return norm_dyadic(u, s, Bank::vert); }

// ---- anisotropic Lebesgue norms ----------------------------------------------

/// Which variable is integrated last.
enum class LebesgueOrder {
  h_outer,  ///< L^p_h(L^r_v): vertical norm first, then horizontal
  v_outer,  ///< L^r_v(L^p_h): horizontal norm first, then vertical
};

namespace detail {

inline double lp_add(double acc, double x, double p) { return std::isinf(p) ? std::max(acc, x) : acc + std::pow(x, p); }

inline double lp_finish(double acc, double p, double measure) {
  return std::isinf(p) ? acc : std::pow(acc * measure, 1.0 / p);
}

}  // namespace detail

/// Anisotropic Lebesgue norm of the pointwise Euclidean magnitude of the given
/// components, sampled on g with cell measure (2pi/n) per axis.
inline double aniso_lebesgue(const Grid& g, std::span<const std::vector<double>> comps, double p_h, double r_v,
                             LebesgueOrder order) {
  detail::check_exponent(p_h);
  detail::check_exponent(r_v);
  const std::size_t nh = g.horizontal_size(), n3 = g.n3();
  const double dh = g.spacing(0) * g.spacing(1), dv = g.spacing(2);
  auto mag = [&](std::size_t idx) {
    double s = 0.0;
    for (const auto& c : comps) s += c[idx] * c[idx];
    return std::sqrt(s);
  };
  if (order == LebesgueOrder::h_outer) {
    double outer = 0.0;
    for (std::size_t h = 0; h < nh; ++h) {
      double inner = 0.0;
      for (std::size_t k = 0; k < n3; ++k) inner = detail::lp_add(inner, mag(h * n3 + k), r_v);
      outer = detail::lp_add(outer, detail::lp_finish(inner, r_v, dv), p_h);
    }
    return detail::lp_finish(outer, p_h, dh);
  }
  std::vector<double> inner(n3, 0.0);
  for (std::size_t h = 0; h < nh; ++h) {
    for (std::size_t k = 0; k < n3; ++k) inner[k] = detail::lp_add(inner[k], mag(h * n3 + k), p_h);
  }
  double outer = 0.0;
  for (std::size_t k = 0; k < n3; ++k) outer = detail::lp_add(outer, detail::lp_finish(inner[k], p_h, dh), r_v);
  return detail::lp_finish(outer, r_v, dv);
}

inline double norm_aniso_lebesgue(const SpectralField& u, double p_h, double r_v, LebesgueOrder order) {
  std::vector<std::vector<double>> c{inverse_transform(u)};
  return aniso_lebesgue(u.grid(), c, p_h, r_v, order);
}

inline double norm_aniso_lebesgue(const VectorField& u, double p_h, double r_v, LebesgueOrder order) {
  auto phys = to_physical(u, u.grid());
  std::vector<std::vector<double>> c(phys.begin(), phys.end());
  return aniso_lebesgue(u.grid(), c, p_h, r_v, order);
}

/// ||u||_{L^inf_v(L^2_h)}.
inline double norm_Linfv_L2h(const VectorField& u) { return norm_aniso_lebesgue(u, 2.0, kInf, LebesgueOrder::v_outer); }

/// ||grad_h u||_{L^inf_v(L^2_h)} over the six horizontal derivatives.
inline double norm_gradh_Linfv_L2h(const VectorField& u) {
  auto d = horizontal_gradient(u);
  const SpectralField* ptr[] = {&d[0], &d[1], &d[2], &d[3], &d[4], &d[5]};
  auto phys = to_physical(ptr, u.grid());
  return aniso_lebesgue(u.grid(), phys, 2.0, kInf, LebesgueOrder::v_outer);
}

/// ||u||_{L^2} with the physical measure (2pi)^3 of the box.
inline double norm_L2_physical(const VectorField& u) {
  return std::pow(2.0 * std::numbers::pi, 1.5) * u.l2_norm();
}

}  // namespace alp
