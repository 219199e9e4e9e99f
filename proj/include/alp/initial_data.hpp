#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "alp/ensemble.hpp"
#include "alp/norms.hpp"

namespace alp {

/// (sin x1 cos x2 cos x3, -cos x1 sin x2 cos x3, 0), set in coefficient space.
inline VectorField taylor_green(const Grid& g) {
  VectorField u(g);
  for (int s1 : {-1, 1})
    for (int s2 : {-1, 1})
      for (int s3 : {-1, 1}) {
        u[0].at(s1, s2, s3) = cplx(0.0, -0.125 * s1);
        u[1].at(s1, s2, s3) = cplx(0.0, 0.125 * s2);
      }
  u.set_divfree(true);
  return u;
}

/// (0, sin x1, 0): a steady solution of the Euler part, decaying like e^{-nu_h t} under viscosity.
inline VectorField shear_flow(const Grid& g) {
  VectorField u(g);
  u[1].at(1, 0, 0) = cplx(0.0, -0.5);
  u[1].at(-1, 0, 0) = cplx(0.0, 0.5);
  u.set_divfree(true);
  return u;
}

/// u scaled to ||u||_{H^{0,s}} = target; the zero field stays zero.
inline VectorField with_H0s_norm(VectorField u, double s, double target) {
  const double n = norm_Hss(u, {0.0, s});
  if (n > 0.0) u *= target / n;
  return u;
}

/// Named initial condition: zero, shear, taylor-green or random (one ensemble sample).
inline VectorField initial_field(const std::string& name, const Grid& g, std::uint64_t seed = 1) {
  if (name == "zero") {
    VectorField u(g);
    u.set_divfree(true);
    return u;
  }
  if (name == "shear") return shear_flow(g);
  if (name == "taylor-green") return taylor_green(g);
  if (name == "random") {
    FieldEnsembleSpec spec;
    spec.seed = seed;
    spec.count = 1;
    return gen_sample(spec, g, 0);
  }
  throw std::invalid_argument("unknown initial field '" + name + "'");
}

}  // namespace alp
