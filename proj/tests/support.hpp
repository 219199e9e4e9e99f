#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "alp/field.hpp"
#include "alp/operators.hpp"
#include "alp/transform.hpp"

namespace alp::test {

/// Real field from i.i.d. Gaussian samples (all modes populated, Nyquist included).
inline SpectralField random_field(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> s(g.size());
  for (auto& x : s) x = n(rng);
  return forward_transform(g, s);
}

inline VectorField random_vector(const Grid& g, std::uint64_t seed) {
  return VectorField(random_field(g, seed), random_field(g, seed + 1000), random_field(g, seed + 2000));
}

/// Smooth-ish random field: modes damped like (1+|k|)^-decay, no Nyquist.
inline SpectralField smooth_field(const Grid& g, std::uint64_t seed, double decay = 2.0) {
  SpectralField u = random_field(g, seed);
  for_each_mode(g, [&](std::size_t i, int k1, int k2, int k3) {
    if (g.has_nyquist_component({k1, k2, k3})) {
      u[i] = 0.0;
      return;
    }
    u[i] *= std::pow(1.0 + std::sqrt(double(k1 * k1 + k2 * k2 + k3 * k3)), -decay);
  });
  return u;
}

inline VectorField smooth_divfree(const Grid& g, std::uint64_t seed, double decay = 2.0) {
  return leray_project(
      VectorField(smooth_field(g, seed, decay), smooth_field(g, seed + 7, decay), smooth_field(g, seed + 13, decay)));
}

inline SpectralField sample(const Grid& g, const std::function<double(double, double, double)>& f) {
  std::vector<double> s(g.size());
  for_each_point(g, [&](std::size_t i, double x1, double x2, double x3) { s[i] = f(x1, x2, x3); });
  return forward_transform(g, s);
}

/// Real field a cos(k.x), set directly in coefficient space.
inline SpectralField cos_mode(const Grid& g, int k1, int k2, int k3, double a = 1.0) {
  SpectralField u(g);
  u.at(k1, k2, k3) += 0.5 * a;
  u.at(-k1, -k2, -k3) += 0.5 * a;
  return u;
}

inline double max_diff(const SpectralField& a, const SpectralField& b) { return (a - b).max_abs(); }
inline double max_diff(const VectorField& a, const VectorField& b) { return (a - b).max_abs(); }

}  // namespace alp::test
