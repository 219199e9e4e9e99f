#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "alp/csv.hpp"
#include "alp/ensemble.hpp"
#include "alp/filter_bank.hpp"
#include "alp/norms.hpp"
#include "alp/operators.hpp"
#include "alp/paraproduct.hpp"

namespace alp {

struct ReportRow {
  std::size_t sample_id = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  std::optional<int> j_or_q;
  std::string grid;
};

/// Measured LHS/RHS ratios of one inequality over an ensemble.
struct InequalityReport {
  InequalityReport() = default;
  explicit InequalityReport(std::string n) : name(std::move(n)) {}

  std::string name;
  std::size_t samples = 0;  ///< rows kept
  std::size_t skipped = 0;  ///< degenerate right-hand sides
  double worst_ratio = 0.0;
  std::vector<ReportRow> rows;
  std::map<int, double> per_scale;             ///< worst ratio per j or q
  std::vector<std::vector<double>> sequences;  ///< realized c_q (or b_q) per sample

  /// Records one measurement. Rows with rhs below 1e-14 * scale are counted as skipped.
  bool add(std::size_t id, double lhs, double rhs, double scale, std::optional<int> jq, const Grid& g) {
    if (!std::isfinite(lhs) || !std::isfinite(rhs) || !(rhs > 1e-14 * scale) || !(scale > 0.0)) {
      ++skipped;
      return false;
    }
    const double r = lhs / rhs;
    rows.push_back({id, lhs, rhs, r, jq, g.label()});
    ++samples;
    worst_ratio = std::max(worst_ratio, r);
    if (jq) {
      auto [it, fresh] = per_scale.emplace(*jq, r);
      if (!fresh) it->second = std::max(it->second, r);
    }
    return true;
  }

  void merge(const InequalityReport& o) {
    samples += o.samples;
    skipped += o.skipped;
    worst_ratio = std::max(worst_ratio, o.worst_ratio);
    rows.insert(rows.end(), o.rows.begin(), o.rows.end());
    for (const auto& [k, v] : o.per_scale) {
      auto [it, fresh] = per_scale.emplace(k, v);
      if (!fresh) it->second = std::max(it->second, v);
    }
    sequences.insert(sequences.end(), o.sequences.begin(), o.sequences.end());
  }
};

inline void write_csv_header(std::ostream& os) { os << "name,sample_id,lhs,rhs,ratio,j_or_q,grid\n"; }

inline void write_csv(std::ostream& os, const InequalityReport& r) {
  for (const auto& row : r.rows) {
    os << r.name << ',' << row.sample_id << ',' << format_double(row.lhs) << ',' << format_double(row.rhs) << ','
       << format_double(row.ratio) << ',';
    if (row.j_or_q) os << *row.j_or_q;
    os << ',' << row.grid << '\n';
  }
}

namespace detail {

inline double pair_L2(const VectorField& f, const VectorField& g) { return inner_product_Hss(f, g, {0.0, 0.0}); }

inline VectorField scale_product(const SpectralField& a, const VectorField& v) {
  return VectorField(product(a, v[0]), product(a, v[1]), product(a, v[2]));
}

inline VectorField d3_power(VectorField u, int k) {
  for (int i = 0; i < k; ++i) u = VectorField(derivative(u[0], 2), derivative(u[1], 2), derivative(u[2], 2));
  return u;
}

inline VectorField dx(const VectorField& u, int axis) {
  return VectorField(derivative(u[0], axis), derivative(u[1], axis), derivative(u[2], axis));
}

// Vector with the six horizontal derivatives, for Lebesgue norms of grad_h u.
inline std::vector<std::vector<double>> gradh_samples(const VectorField& u) {
  auto d = horizontal_gradient(u);
  const SpectralField* ptr[] = {&d[0], &d[1], &d[2], &d[3], &d[4], &d[5]};
  return to_physical(ptr, u.grid());
}

inline double vec_lebesgue(const VectorField& u, double p_h, double r_v, LebesgueOrder o) {
  return norm_aniso_lebesgue(u, p_h, r_v, o);
}

}  // namespace detail

// ---- Bernstein -----------------------------------------------------------------

struct BernsteinParams {
  int q = 1;
  int k = 1;
  double p = 2.0;
  double r = kInf;
  double rprime = 2.0;
};

/// The six directions of the Bernstein estimates for fields filtered to the vertical ring q.
struct BernsteinReports {
  InequalityReport upper_h_outer{"bernstein_upper_h_outer"};
  InequalityReport lower_h_outer{"bernstein_lower_h_outer"};
  InequalityReport upper_v_outer{"bernstein_upper_v_outer"};
  InequalityReport lower_v_outer{"bernstein_lower_v_outer"};
  InequalityReport embed_h_outer{"bernstein_embed_h_outer"};
  InequalityReport embed_v_outer{"bernstein_embed_v_outer"};

  std::vector<InequalityReport*> all() {
    return {&upper_h_outer, &lower_h_outer, &upper_v_outer, &lower_v_outer, &embed_h_outer, &embed_v_outer};
  }
  void merge(BernsteinReports& o) {
    auto a = all(), b = o.all();
    for (std::size_t i = 0; i < a.size(); ++i) a[i]->merge(*b[i]);
  }
};

inline BernsteinReports verify_bernstein(std::span<const VectorField> ensemble, const BernsteinParams& bp) {
  if (bp.q < 0) throw std::invalid_argument("Bernstein rings need q >= 0");
  if (bp.rprime > bp.r) throw std::invalid_argument("Bernstein embedding needs r >= r'");
  BernsteinReports out;
  const double two_qk = std::exp2(bp.q * bp.k);
  const double gain = std::exp2(bp.q * ((1.0 / bp.rprime) - (std::isinf(bp.r) ? 0.0 : 1.0 / bp.r)));
  for (std::size_t id = 0; id < ensemble.size(); ++id) {
    const VectorField& u = ensemble[id];
    const Grid& g = u.grid();
    const VectorField w = dyadic_block(u, bp.q, Bank::vert);
    const double scale = u.l2_norm();
    if (!(w.l2_norm() > 1e-14 * scale)) {
      for (auto* r : out.all()) ++r->skipped;
      continue;
    }
    const VectorField dw = detail::d3_power(w, bp.k);
    for (auto order : {LebesgueOrder::h_outer, LebesgueOrder::v_outer}) {
      const bool h = order == LebesgueOrder::h_outer;
      const double nw = detail::vec_lebesgue(w, bp.p, bp.r, order);
      const double nd = detail::vec_lebesgue(dw, bp.p, bp.r, order);
      const double nwp = detail::vec_lebesgue(w, bp.p, bp.rprime, order);
      (h ? out.upper_h_outer : out.upper_v_outer).add(id, nd, two_qk * nw, two_qk * nw, bp.q, g);
      (h ? out.lower_h_outer : out.lower_v_outer).add(id, two_qk * nw, nd, two_qk * nw, bp.q, g);
      (h ? out.embed_h_outer : out.embed_v_outer).add(id, nw, gain * nwp, nw, bp.q, g);
    }
  }
  return out;
}

// ---- commutator (exponents r = 4/3, s = 2, t = 4, p = 2) -------------------------

inline InequalityReport verify_commutator(std::span<const VectorField> ensemble_a, std::span<const VectorField> ensemble_b,
                                          int j) {
  if (j < 0) throw std::invalid_argument("commutator estimate needs j >= 0");
  InequalityReport rep{"commutator"};
  const std::size_t n = std::min(ensemble_a.size(), ensemble_b.size());
  for (std::size_t id = 0; id < n; ++id) {
    const SpectralField& a = ensemble_a[id][0];
    const VectorField& b = ensemble_b[id];
    const Grid& g = a.grid();
    const VectorField c(commutator(a, b[0], j, Bank::iso), commutator(a, b[1], j, Bank::iso),
                        commutator(a, b[2], j, Bank::iso));
    const double lhs = detail::vec_lebesgue(c, 4.0 / 3.0, 2.0, LebesgueOrder::v_outer);
    const double grad_a = detail::vec_lebesgue(gradient(a), 2.0, kInf, LebesgueOrder::v_outer);
    const double nb = detail::vec_lebesgue(b, 4.0, 2.0, LebesgueOrder::v_outer);
    const double rhs = std::exp2(-j) * grad_a * nb;
    rep.add(id, lhs, rhs, a.l2_norm() * b.l2_norm(), j, g);
  }
  return rep;
}

// ---- product law in H^{0,s} ---------------------------------------------------

/// |<u.grad v, v>_{H^{0,s}}| against the two-term right-hand side; u divergence free.
inline InequalityReport verify_product_law_H0s(std::span<const VectorField> us, std::span<const VectorField> vs,
                                               double s) {
  InequalityReport rep{"product_law_H0s"};
  const NormSpec spec{0.0, s};
  const std::size_t n = std::min(us.size(), vs.size());
  for (std::size_t id = 0; id < n; ++id) {
    const VectorField& u = us[id];
    const VectorField& v = vs[id];
    const double lhs = std::abs(inner_product_Hss(advect(u, v), v, spec));
    const double nu = norm_Hss(u, spec), gu = norm_gradh_Hss(u, spec);
    const double nv = norm_Hss(v, spec), gv = norm_gradh_Hss(v, spec);
    const double rhs = std::sqrt(nu * gu * nv) * std::pow(gv, 1.5) + nv * gv * gu;
    rep.add(id, lhs, rhs, std::pow(u.l2_norm(), 1.5) * std::pow(v.l2_norm(), 1.5), std::nullopt, u.grid());
  }
  return rep;
}

/// Self case: |<u.grad u, u>_{H^{0,s}}| <= C ||u||_{H^{0,s}} ||grad_h u||^2_{H^{0,s}}.
inline InequalityReport verify_product_law_H0s_self(std::span<const VectorField> us, double s) {
  InequalityReport rep{"product_law_H0s_self"};
  const NormSpec spec{0.0, s};
  for (std::size_t id = 0; id < us.size(); ++id) {
    const VectorField& u = us[id];
    const double lhs = std::abs(inner_product_Hss(advect(u, u), u, spec));
    const double gu = norm_gradh_Hss(u, spec);
    rep.add(id, lhs, norm_Hss(u, spec) * gu * gu, std::pow(u.l2_norm(), 3), std::nullopt, u.grid());
  }
  return rep;
}

// ---- trilinear estimate in H^s ------------------------------------------------

/// Per-block split of (Delta_q(u.grad u), Delta_q u) into horizontal and vertical
/// parts, and of the vertical part into the paraproduct pieces.
struct TrilinearBlock {
  int q = 0;
  double Ih = 0.0, Iv = 0.0;
  double I1 = 0.0, I2 = 0.0, I3 = 0.0, I4 = 0.0, R = 0.0;
  double leak = 0.0;  ///< Iv - (I1+I2+I3+I4+R): mass outside the |q'-q| < N0 windows
};

inline std::vector<TrilinearBlock> trilinear_blocks(const VectorField& u) {
  const Grid& g = u.grid();
  const int jm = jmax(g, Bank::iso);
  const int n0 = FilterBank::standard().n0();
  const VectorField d1 = detail::dx(u, 0), d2 = detail::dx(u, 1), d3 = detail::dx(u, 2);
  const VectorField fh = detail::scale_product(u[0], d1) + detail::scale_product(u[1], d2);
  const VectorField fv = detail::scale_product(u[2], d3);

  auto blk = [&](const VectorField& f, int q) { return dyadic_block(f, q, Bank::iso); };
  auto lowp = [&](const SpectralField& f, int q) { return low_pass(f, q, Bank::iso); };
  std::vector<VectorField> du, dd3;
  std::vector<SpectralField> du3;
  for (int q = -1; q <= jm; ++q) {
    du.push_back(blk(u, q));
    dd3.push_back(blk(d3, q));
    du3.push_back(dyadic_block(u[2], q, Bank::iso));
  }
  auto at = [&](const auto& v, int q) -> decltype(v[0]) { return v[static_cast<std::size_t>(q + 1)]; };
  auto in_range = [&](int q) { return q >= -1 && q <= jm; };

  std::vector<TrilinearBlock> out;
  for (int q = -1; q <= jm; ++q) {
    TrilinearBlock b;
    b.q = q;
    const VectorField& uq = at(du, q);
    b.Ih = detail::pair_L2(blk(fh, q), uq);
    b.Iv = detail::pair_L2(blk(fv, q), uq);
    b.I1 = detail::pair_L2(detail::scale_product(lowp(u[2], q - 1), detail::dx(uq, 2)), uq);
    for (int qp = q - n0 + 1; qp <= q + n0 - 1; ++qp) {
      if (!in_range(qp)) continue;
      const SpectralField s_qp = lowp(u[2], qp - 1);
      const VectorField& d3_qp = at(dd3, qp);
      // [Delta_q, S_{q'-1} u3] d3 Delta_q' u
      const VectorField comm = blk(detail::scale_product(s_qp, d3_qp), q) - detail::scale_product(s_qp, blk(d3_qp, q));
      b.I2 += detail::pair_L2(comm, uq);
      b.I3 += detail::pair_L2(detail::scale_product(s_qp - lowp(u[2], q - 1), blk(d3_qp, q)), uq);
      b.I4 += detail::pair_L2(blk(detail::scale_product(at(du3, qp), detail::dx(low_pass(u, qp - 1, Bank::iso), 2)), q), uq);
    }
    for (int qp = q - n0 + 1; qp <= jm; ++qp) {
      if (!in_range(qp)) continue;
      VectorField near(g);
      for (int i = -1; i <= 1; ++i)
        if (in_range(qp + i)) near += at(dd3, qp + i);
      b.R += detail::pair_L2(blk(detail::scale_product(at(du3, qp), near), q), uq);
    }
    b.leak = b.Iv - (b.I1 + b.I2 + b.I3 + b.I4 + b.R);
    out.push_back(b);
  }
  return out;
}

/// |<u.grad u, u>_{H^s}| against the two-term right-hand side with L^inf_v(L^2_h) factors.
inline InequalityReport verify_trilinear_Hs(std::span<const VectorField> us, double s) {
  InequalityReport rep{"trilinear_Hs"};
  for (std::size_t id = 0; id < us.size(); ++id) {
    const VectorField& u = us[id];
    const double lhs = std::abs(inner_product_Hs(advect(u, u), u, s));
    const double a = norm_Linfv_L2h(u), ga = norm_gradh_Linfv_L2h(u);
    const double nu = norm_Hs(u, s), gu = norm_gradh_Hs(u, s);
    const double rhs = std::sqrt(a * ga * nu) * std::pow(gu, 1.5) + ga * nu * gu;
    rep.add(id, lhs, rhs, std::pow(u.l2_norm(), 3), std::nullopt, u.grid());
  }
  return rep;
}

/// Shares of the weighted block terms sum_q 2^{2qs}|term_q| in the total, one sequence per sample:
/// {Ih, I1, I2, I3, I4, R, leak}.
inline InequalityReport trilinear_shares(std::span<const VectorField> us, double s) {
  InequalityReport rep{"trilinear_Hs_shares"};
  for (std::size_t id = 0; id < us.size(); ++id) {
    std::vector<double> acc(7, 0.0);
    for (const auto& b : trilinear_blocks(us[id])) {
      const double w = std::exp2(2.0 * b.q * s);
      const double t[7] = {b.Ih, b.I1, b.I2, b.I3, b.I4, b.R, b.leak};
      for (int i = 0; i < 7; ++i) acc[static_cast<std::size_t>(i)] += w * std::abs(t[i]);
    }
    double total = 0.0;
    for (double x : acc) total += x;
    if (total > 0.0)
      for (double& x : acc) x /= total;
    rep.sequences.push_back(acc);
    ++rep.samples;
  }
  return rep;
}

// ---- divergence-free estimates ---------------------------------------------------

struct DivfreeReports {
  InequalityReport grad_u3{"divfree_grad_u3"};
  InequalityReport blocks{"divfree_blocks"};  ///< ratio = (sum_q c_q^2)^{1/2}; sequences hold c_q
};

inline DivfreeReports verify_divfree_prop(std::span<const VectorField> us, double s) {
  DivfreeReports out;
  for (std::size_t id = 0; id < us.size(); ++id) {
    const VectorField& u = us[id];
    const Grid& g = u.grid();
    const double gh = norm_gradh_Hs(u, s);
    const double gu3 = norm_Hs(gradient(u[2]), s);
    const double scale = u.l2_norm();
    if (!(gh > 1e-14 * scale) && gu3 > 1e-14 * scale)
      throw std::logic_error("divergence-free field with grad u3 != 0 and grad_h u = 0");
    out.grad_u3.add(id, gu3, gh, scale, std::nullopt, g);

    const double denom = std::sqrt(norm_Hs(u, s) * gh);
    if (!(denom > 1e-14 * scale)) {
      ++out.blocks.skipped;
      continue;
    }
    std::vector<double> c;
    double sum2 = 0.0;
    for (int q = -1; q <= jmax(g, Bank::iso); ++q) {
      const double n = detail::vec_lebesgue(dyadic_block(u, q, Bank::iso), 4.0, 2.0, LebesgueOrder::v_outer);
      c.push_back(std::exp2(q * s) * n / denom);
      sum2 += c.back() * c.back();
    }
    out.blocks.add(id, std::sqrt(sum2), 1.0, 1.0, std::nullopt, g);
    out.blocks.sequences.push_back(std::move(c));
  }
  return out;
}

// ---- Gagliardo-Nirenberg in x1 -------------------------------------------------

/// ||v||_{L^p_{x1}(L^r_{x2,x3})} of the pointwise magnitude, physical measure.
inline double norm_x1_outer(const VectorField& v, double p, double r) {
  const Grid& g = v.grid();
  auto phys = to_physical(v, g);
  const std::size_t slab = g.n2() * g.n3();
  const double d1 = g.spacing(0), d23 = g.spacing(1) * g.spacing(2);
  double outer = 0.0;
  for (std::size_t i1 = 0; i1 < g.n1(); ++i1) {
    double inner = 0.0;
    for (std::size_t m = 0; m < slab; ++m) {
      const std::size_t idx = i1 * slab + m;
      double s = 0.0;
      for (const auto& c : phys) s += c[idx] * c[idx];
      inner = detail::lp_add(inner, std::sqrt(s), r);
    }
    outer = detail::lp_add(outer, detail::lp_finish(inner, r, d23), p);
  }
  return detail::lp_finish(outer, p, d1);
}

/// ||v||_{L^4_{x1}(L^2_{x2,x3})} <= C ||v||^{3/4}_{L^2} ||d1 v||^{1/4}_{L^2}.
inline InequalityReport verify_gagliardo_nirenberg(std::span<const VectorField> vs) {
  InequalityReport rep{"gagliardo_nirenberg"};
  for (std::size_t id = 0; id < vs.size(); ++id) {
    const VectorField& v = vs[id];
    const double lhs = norm_x1_outer(v, 4.0, 2.0);
    const double n = norm_L2_physical(v), d = norm_L2_physical(detail::dx(v, 0));
    rep.add(id, lhs, std::pow(n, 0.75) * std::pow(d, 0.25), n, std::nullopt, v.grid());
  }
  return rep;
}

// ---- interpolation ------------------------------------------------------------

struct InterpolationParams {
  NormSpec a{1.0, 0.0};  ///< (s, s')
  NormSpec b{0.0, 1.0};  ///< (t, t')
  double alpha = 0.5;
};

inline InequalityReport verify_interpolation(std::span<const VectorField> us, const InterpolationParams& ip) {
  InequalityReport rep{"interpolation"};
  const double al = ip.alpha;
  const NormSpec mid{al * ip.a.s + (1 - al) * ip.b.s, al * ip.a.s_v + (1 - al) * ip.b.s_v};
  for (std::size_t id = 0; id < us.size(); ++id) {
    const VectorField& u = us[id];
    const double lhs = norm_Hss(u, mid);
    const double rhs = std::pow(norm_Hss(u, ip.a), al) * std::pow(norm_Hss(u, ip.b), 1 - al);
    rep.add(id, lhs, rhs, u.l2_norm(), std::nullopt, u.grid());
  }
  return rep;
}

// ---- uniform boundedness of blocks -----------------------------------------------

/// ||Delta_j u||_{L^p_v L^r_h} / ||u||_{L^p_v L^r_h} with isotropic blocks.
inline InequalityReport verify_uniform_block_bound(std::span<const VectorField> us, int j, double p, double r) {
  InequalityReport rep{"uniform_block_bound"};
  for (std::size_t id = 0; id < us.size(); ++id) {
    const VectorField& u = us[id];
    const double lhs = detail::vec_lebesgue(dyadic_block(u, j, Bank::iso), r, p, LebesgueOrder::v_outer);
    const double rhs = detail::vec_lebesgue(u, r, p, LebesgueOrder::v_outer);
    rep.add(id, lhs, rhs, rhs, j, u.grid());
  }
  return rep;
}

// ---- norm diagnostics -----------------------------------------------------------

/// Dyadic over Fourier-weighted H^{0,s} norm.
inline InequalityReport verify_norm_equivalence(std::span<const VectorField> us, double s) {
  InequalityReport rep{"norm_equivalence_H0s"};
  for (std::size_t id = 0; id < us.size(); ++id) {
    const VectorField& u = us[id];
    rep.add(id, norm_dyadic_vert(u, s), norm_Hss(u, {0.0, s}), u.l2_norm(), std::nullopt, u.grid());
  }
  return rep;
}

/// ||u||_{L^inf_v L^2_h} / ||u||_{H^{0,s}}.
inline InequalityReport verify_embedding(std::span<const VectorField> us, double s) {
  InequalityReport rep{"embedding_H0s_LinfvL2h"};
  for (std::size_t id = 0; id < us.size(); ++id) {
    const VectorField& u = us[id];
    rep.add(id, norm_Linfv_L2h(u), norm_Hss(u, {0.0, s}), u.l2_norm(), std::nullopt, u.grid());
  }
  return rep;
}

}  // namespace alp
