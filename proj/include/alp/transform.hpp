#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "alp/fft.hpp"
#include "alp/field.hpp"

namespace alp {

/// Rule for evaluating pointwise products of spectral fields.
enum class Dealias {
  pad,   ///< 3/2 zero padding, alias-free for quadratic terms, Nyquist modes dropped
  none,  ///< products on the native grid, aliased
};

inline Grid quadrature_grid(const Grid& g, Dealias rule) { return rule == Dealias::pad ? g.padded() : g; }

inline SpectralField forward_transform(const Grid& g, std::span<const double> samples) {
  if (samples.size() != g.size()) throw std::invalid_argument("sample array does not match grid shape");
  auto& p = fft::plan(g);
  auto buf = p.buffer();
  for (std::size_t i = 0; i < samples.size(); ++i) buf[i] = samples[i];
  p.forward();
  const double inv = 1.0 / static_cast<double>(g.size());
  std::vector<cplx> c(buf.begin(), buf.end());
  for (auto& x : c) x *= inv;
  return SpectralField(g, std::move(c), true);
}

inline std::vector<cplx> inverse_transform_complex(const SpectralField& u) {
  auto& p = fft::plan(u.grid());
  auto buf = p.buffer();
  std::copy(u.coeffs().begin(), u.coeffs().end(), buf.begin());
  p.backward();
  return {buf.begin(), buf.end()};
}

/// Samples on the native grid (real parts; exact when the field is conjugate symmetric).
inline std::vector<double> inverse_transform(const SpectralField& u) {
  auto& p = fft::plan(u.grid());
  auto buf = p.buffer();
  std::copy(u.coeffs().begin(), u.coeffs().end(), buf.begin());
  p.backward();
  std::vector<double> out(buf.size());
  for (std::size_t i = 0; i < buf.size(); ++i) out[i] = buf[i].real();
  return out;
}

namespace detail {

// Adds factor * u into buf laid out on quad. When quad differs from the
// native grid the Nyquist modes are not carried over.
inline void scatter(const SpectralField& u, const Grid& quad, std::span<cplx> buf, cplx factor) {
  const Grid& g = u.grid();
  if (g == quad) {
    for (std::size_t i = 0; i < g.size(); ++i) buf[i] += factor * u[i];
    return;
  }
  for_each_mode(g, [&](std::size_t i, int k1, int k2, int k3) {
    if (g.has_nyquist_component({k1, k2, k3})) return;
    const std::size_t j =
        quad.flat(Grid::index_of(k1, quad.n1()), Grid::index_of(k2, quad.n2()), Grid::index_of(k3, quad.n3()));
    buf[j] += factor * u[i];
  });
}

// Splits the transform F of (a + i b), with a, b real, into A and B restricted to target.
inline void gather_pair(std::span<const cplx> buf, const Grid& quad, const Grid& target, double scale,
                        SpectralField& a, SpectralField* b) {
  const bool same = quad == target;
  for_each_mode(target, [&](std::size_t i, int k1, int k2, int k3) {
    if (!same && target.has_nyquist_component({k1, k2, k3})) {
      a[i] = 0.0;
      if (b) (*b)[i] = 0.0;
      return;
    }
    const std::size_t j =
        quad.flat(Grid::index_of(k1, quad.n1()), Grid::index_of(k2, quad.n2()), Grid::index_of(k3, quad.n3()));
    const std::size_t jm =
        quad.flat(Grid::index_of(-k1, quad.n1()), Grid::index_of(-k2, quad.n2()), Grid::index_of(-k3, quad.n3()));
    const cplx f = buf[j];
    const cplx fm = std::conj(buf[jm]);
    a[i] = 0.5 * (f + fm) * scale;
    if (b) (*b)[i] = cplx(0.0, -0.5) * (f - fm) * scale;
  });
}

}  // namespace detail

/// Real samples of each field on quad; fields are transformed two at a time.
inline std::vector<std::vector<double>> to_physical(std::span<const SpectralField* const> fields, const Grid& quad) {
  std::vector<std::vector<double>> out(fields.size());
  auto& p = fft::plan(quad);
  auto buf = p.buffer();
  for (std::size_t f = 0; f < fields.size(); f += 2) {
    std::fill(buf.begin(), buf.end(), cplx{});
    const bool pair = f + 1 < fields.size();
    detail::scatter(*fields[f], quad, buf, 1.0);
    if (pair) detail::scatter(*fields[f + 1], quad, buf, cplx(0.0, 1.0));
    p.backward();
    out[f].resize(buf.size());
    for (std::size_t i = 0; i < buf.size(); ++i) out[f][i] = buf[i].real();
    if (pair) {
      out[f + 1].resize(buf.size());
      for (std::size_t i = 0; i < buf.size(); ++i) out[f + 1][i] = buf[i].imag();
    }
  }
  return out;
}

inline std::vector<double> to_physical(const SpectralField& u, const Grid& quad) {
  const SpectralField* ptr[] = {&u};
  return std::move(to_physical(ptr, quad)[0]);
}

inline std::array<std::vector<double>, 3> to_physical(const VectorField& u, const Grid& quad) {
  const SpectralField* ptr[] = {&u[0], &u[1], &u[2]};
  auto v = to_physical(ptr, quad);
  return {std::move(v[0]), std::move(v[1]), std::move(v[2])};
}

/// Spectral coefficients on target of real samples given on quad (truncating when quad is larger).
inline std::vector<SpectralField> from_physical(std::span<const std::vector<double>* const> samples, const Grid& quad,
                                                const Grid& target) {
  std::vector<SpectralField> out;
  out.reserve(samples.size());
  auto& p = fft::plan(quad);
  auto buf = p.buffer();
  const double scale = 1.0 / static_cast<double>(quad.size());
  for (std::size_t f = 0; f < samples.size(); f += 2) {
    const bool pair = f + 1 < samples.size();
    const auto& a = *samples[f];
    if (a.size() != quad.size()) throw std::invalid_argument("sample array does not match quadrature grid");
    if (pair) {
      const auto& b = *samples[f + 1];
      if (b.size() != quad.size()) throw std::invalid_argument("sample array does not match quadrature grid");
      for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = cplx(a[i], b[i]);
    } else {
      for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = a[i];
    }
    p.forward();
    out.emplace_back(target, true);
    if (pair) {
      out.emplace_back(target, true);
      detail::gather_pair(buf, quad, target, scale, out[f], &out[f + 1]);
    } else {
      detail::gather_pair(buf, quad, target, scale, out[f], nullptr);
    }
  }
  return out;
}

inline SpectralField from_physical(const std::vector<double>& samples, const Grid& quad, const Grid& target) {
  const std::vector<double>* ptr[] = {&samples};
  return std::move(from_physical(ptr, quad, target)[0]);
}

namespace detail {
inline void require_real(const SpectralField& u) {
  if (!u.is_real()) throw std::invalid_argument("pointwise products need conjugate-symmetric fields");
}
}  // namespace detail

/// Pointwise product a*b projected onto the modes of a's grid.
inline SpectralField product(const SpectralField& a, const SpectralField& b, Dealias rule = Dealias::pad) {
  a.check_same_grid(b);
  detail::require_real(a);
  detail::require_real(b);
  const Grid quad = quadrature_grid(a.grid(), rule);
  const SpectralField* in[] = {&a, &b};
  auto phys = to_physical(in, quad);
  for (std::size_t i = 0; i < phys[0].size(); ++i) phys[0][i] *= phys[1][i];
  return from_physical(phys[0], quad, a.grid());
}

}  // namespace alp
