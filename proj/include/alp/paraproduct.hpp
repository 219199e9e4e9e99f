#pragma once

#include <vector>

#include "alp/localization.hpp"
#include "alp/transform.hpp"

namespace alp {

/// uv = T_u v + T_v u + R(u, v).
struct BonySplit {
  SpectralField Tuv;
  SpectralField Tvu;
  SpectralField R;
};

namespace detail {

// Physical samples of Delta_q f for q = -1 .. jmax (index q + 1), on quad.
inline std::vector<std::vector<double>> physical_blocks(const SpectralField& f, Bank b, const Grid& quad) {
  const int jm = jmax(f.grid(), b);
  std::vector<SpectralField> blocks;
  blocks.reserve(static_cast<std::size_t>(jm + 2));
  for (int q = -1; q <= jm; ++q) blocks.push_back(dyadic_block(f, q, b));
  std::vector<const SpectralField*> ptr;
  for (const auto& x : blocks) ptr.push_back(&x);
  return to_physical(ptr, quad);
}

inline void accumulate_product(std::vector<double>& acc, const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += a[i] * b[i];
}

}  // namespace detail

/// Bony decomposition with blocks of the chosen bank. Paraproducts pair
/// S_{q-1} with Delta_q; the remainder collects |q - q'| <= 1.
inline BonySplit bony(const SpectralField& u, const SpectralField& v, Bank b) {
  u.check_same_grid(v);
  detail::require_real(u);
  detail::require_real(v);
  const Grid& g = u.grid();
  const Grid quad = g.padded();
  const auto pu = detail::physical_blocks(u, b, quad);
  const auto pv = detail::physical_blocks(v, b, quad);
  const std::size_t nb = pu.size(), m = quad.size();

  std::vector<double> tuv(m, 0.0), tvu(m, 0.0), r(m, 0.0);
  std::vector<double> su(m, 0.0), sv(m, 0.0);  // S_{q-1} as running sums of lower blocks
  for (std::size_t i = 0; i < nb; ++i) {
    // block index i holds q = i - 1; S_{q-1} needs blocks up to q - 2, i.e. index i - 2
    if (i >= 2) {
      for (std::size_t p = 0; p < m; ++p) {
        su[p] += pu[i - 2][p];
        sv[p] += pv[i - 2][p];
      }
    }
    detail::accumulate_product(tuv, su, pv[i]);
    detail::accumulate_product(tvu, sv, pu[i]);
    for (std::size_t p = 0; p < m; ++p) {
      double near = pv[i][p];
      if (i > 0) near += pv[i - 1][p];
      if (i + 1 < nb) near += pv[i + 1][p];
      r[p] += pu[i][p] * near;
    }
  }
  const std::vector<double>* ptr[] = {&tuv, &tvu, &r};
  auto f = from_physical(ptr, quad, g);
  return {std::move(f[0]), std::move(f[1]), std::move(f[2])};
}

inline BonySplit bony_vert(const SpectralField& u, const SpectralField& v) { return bony(u, v, Bank::vert); }
inline BonySplit bony_iso(const SpectralField& u, const SpectralField& v) { return bony(u, v, Bank::iso); }

/// The summands S_{q-1}u Delta_q v of T_u v, index q + 1.
inline std::vector<SpectralField> paraproduct_terms(const SpectralField& u, const SpectralField& v, Bank b) {
  u.check_same_grid(v);
  std::vector<SpectralField> out;
  for (int q = -1; q <= jmax(u.grid(), b); ++q) out.push_back(product(low_pass(u, q - 1, b), dyadic_block(v, q, b)));
  return out;
}

/// [Delta_j; a] b = Delta_j(ab) - a Delta_j b, products alias-free.
inline SpectralField commutator(const SpectralField& a, const SpectralField& b, int j, Bank bank) {
  a.check_same_grid(b);
  return dyadic_block(product(a, b), j, bank) - product(a, dyadic_block(b, j, bank));
}

}  // namespace alp
