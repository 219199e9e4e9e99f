#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "alp/localization.hpp"
#include "alp/operators.hpp"

namespace alp {

/// Recipe for a reproducible family of random vector fields.
struct FieldEnsembleSpec {
  std::uint64_t seed = 1;
  int count = 100;
  double spectrum = 4.0;                   ///< |u(k)| = amplitude (1+|k|)^-spectrum
  std::optional<std::pair<int, int>> band;  ///< keep isotropic blocks jlo..jhi only
  bool divfree = true;
  double amplitude = 1.0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Phase in [0, 2pi) depending only on (seed, sample, component, k); the same
// wavevector gets the same phase on every grid that resolves it.
inline double mode_phase(std::uint64_t seed, std::uint64_t sample, int comp, int k1, int k2, int k3) {
  const auto enc = [](int k) { return static_cast<std::uint64_t>(static_cast<std::int64_t>(k) + (1 << 20)); };
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ sample);
  h = splitmix64(h ^ static_cast<std::uint64_t>(comp));
  h = splitmix64(h ^ (enc(k1) << 42 | enc(k2) << 21 | enc(k3)));
  return 2.0 * std::numbers::pi * static_cast<double>(h >> 11) * 0x1.0p-53;
}

// First nonzero component positive: one representative per {k, -k} pair.
inline bool canonical(int k1, int k2, int k3) {
  if (k1 != 0) return k1 > 0;
  if (k2 != 0) return k2 > 0;
  return k3 > 0;
}

}  // namespace detail

/// One sample of the ensemble; index is the sample number.
inline VectorField gen_sample(const FieldEnsembleSpec& spec, const Grid& g, std::uint64_t index) {
  VectorField u(g);
  for (int c = 0; c < 3; ++c) {
    SpectralField& f = u[c];
    for_each_mode(g, [&](std::size_t i, int k1, int k2, int k3) {
      if (!detail::canonical(k1, k2, k3) || g.has_nyquist_component({k1, k2, k3})) return;
      const double r = std::sqrt(static_cast<double>(k1 * k1 + k2 * k2 + k3 * k3));
      const double a = spec.amplitude * std::pow(1.0 + r, -spec.spectrum);
      const cplx z = std::polar(a, detail::mode_phase(spec.seed, index, c, k1, k2, k3));
      f[i] = z;
      f[g.conjugate_index(i)] = std::conj(z);
    });
  }
  if (spec.band) {
    VectorField acc(g);
    for (int j = spec.band->first; j <= spec.band->second; ++j) acc += dyadic_block(u, j, Bank::iso);
    u = acc;
  }
  if (spec.divfree) u = leray_project(u);
  return u;
}

inline std::vector<VectorField> gen_ensemble(const FieldEnsembleSpec& spec, const Grid& g) {
  if (spec.count < 1) throw std::invalid_argument("ensemble count must be at least 1");
  std::vector<VectorField> out;
  out.reserve(static_cast<std::size_t>(spec.count));
  for (int i = 0; i < spec.count; ++i) out.push_back(gen_sample(spec, g, static_cast<std::uint64_t>(i)));
  return out;
}

}  // namespace alp
