#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "alp/filter_bank.hpp"
#include "alp/norms.hpp"
#include "support.hpp"

using namespace alp;
using alp::test::cos_mode;
using alp::test::random_field;
using alp::test::sample;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Pointwise u x B on the native grid for B = B(x1, x2).
VectorField cross_native(const VectorField& u, const std::function<std::array<double, 3>(double, double)>& B) {
  const Grid& g = u.grid();
  auto p = to_physical(u, g);
  std::array<std::vector<double>, 3> w;
  for (auto& c : w) c.resize(g.size());
  for_each_point(g, [&](std::size_t i, double x1, double x2, double) {
    const auto b = B(x1, x2);
    w[0][i] = p[1][i] * b[2] - p[2][i] * b[1];
    w[1][i] = p[2][i] * b[0] - p[0][i] * b[2];
    w[2][i] = p[0][i] * b[1] - p[1][i] * b[0];
  });
  return VectorField(forward_transform(g, w[0]), forward_transform(g, w[1]), forward_transform(g, w[2]));
}

}  // namespace

TEST(NormHss, ConstantField) {
  Grid g = Grid::cube(8);
  auto u = sample(g, [](double, double, double) { return -2.5; });
  for (NormSpec s : {NormSpec{0, 0}, NormSpec{1, 0}, NormSpec{0.6, 2}, NormSpec{-1, 3}})
    EXPECT_NEAR(norm_Hss(u, s), 2.5, 1e-14);
}

TEST(NormHss, VerticalModeWeight) {
  Grid g = Grid::cube(8);
  auto u = cos_mode(g, 0, 0, 2, 3.0);
  EXPECT_NEAR(norm_Hss(u, {0, 1}), u.l2_norm() * std::sqrt(5.0), 1e-14);
}

TEST(NormHss, ZeroSpecIsL2) {
  Grid g = Grid::cube(16);
  auto u = random_field(g, 1);
  auto v = inverse_transform(u);
  double s = 0.0;
  for (double x : v) s += x * x;
  EXPECT_NEAR(norm_Hss(u, {0, 0}), std::sqrt(s / double(g.size())), 1e-12 * u.l2_norm());
}

TEST(NormHss, MonotoneInExponents) {
  Grid g = Grid::cube(16);
  auto u = random_field(g, 2);
  double prev = 0.0;
  for (double s = -1.0; s <= 2.0; s += 0.25) {
    const double n = norm_Hss(u, {s, 0.3});
    EXPECT_GT(n, prev);
    prev = n;
  }
  prev = 0.0;
  for (double s = -1.0; s <= 2.0; s += 0.25) {
    const double n = norm_Hss(u, {0.3, s});
    EXPECT_GT(n, prev);
    prev = n;
  }
}

TEST(NormHs, IsotropicWeight) {
  Grid g = Grid::cube(8);
  auto u = cos_mode(g, 1, 2, 2);
  EXPECT_NEAR(norm_Hs(u, 1.0), u.l2_norm() * std::sqrt(10.0), 1e-14);
}

TEST(NormGradient, MatchesExplicitDerivatives) {
  Grid g = Grid::cube(16);
  auto u = alp::test::random_vector(g, 3);
  const NormSpec spec{0.0, 0.6};
  double acc = 0.0;
  for (const auto& d : horizontal_gradient(u)) acc += std::pow(norm_Hss(d, spec), 2);
  EXPECT_NEAR(norm_gradh_Hss(u, spec), std::sqrt(acc), 1e-12 * std::sqrt(acc));
}

TEST(NormDyadic, ZeroAndSingleBlock) {
  Grid g = Grid::cube(16);
  EXPECT_EQ(norm_dyadic_vert(SpectralField(g), 0.6), 0.0);
  auto u = cos_mode(g, 0, 0, 4, 2.0);
  for (double s : {0.0, 0.6, 1.5}) EXPECT_NEAR(norm_dyadic_vert(u, s), u.l2_norm() * std::exp2(s), 1e-14);
}

TEST(NormDyadic, EquivalenceWithinMultiplierBounds) {
  // ratio^2 is a convex combination of w_d(k3) / (1+k3^2)^s over the occupied k3
  Grid g = Grid::cube(16);
  const double s = 0.6;
  const int jm = jmax(g, Bank::vert);
  double lo = 1e300, hi = 0.0;
  for (int k3 = 0; k3 <= 8; ++k3) {
    double wd = 0.0;
    for (int q = -1; q <= jm; ++q) wd += std::exp2(2 * q * s) * std::pow(FilterBank::block(q, k3), 2);
    const double r = wd / std::pow(1.0 + k3 * k3, s);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  for (int i = 0; i < 100; ++i) {
    auto u = random_field(g, 100 + i);
    const double ratio = norm_dyadic_vert(u, s) / norm_Hss(u, {0, s});
    EXPECT_GE(ratio, std::sqrt(lo) * (1 - 1e-12));
    EXPECT_LE(ratio, std::sqrt(hi) * (1 + 1e-12));
  }
}

TEST(AnisoLebesgue, ConstantOne) {
  Grid g(8, 10, 12);
  auto u = sample(g, [](double, double, double) { return 1.0; });
  for (double p : {1.0, 2.0, 4.0 / 3.0, kInf}) {
    for (double r : {1.0, 2.0, 4.0, kInf}) {
      const double expect = (std::isinf(p) ? 1.0 : std::pow(two_pi, 2.0 / p)) * (std::isinf(r) ? 1.0 : std::pow(two_pi, 1.0 / r));
      EXPECT_NEAR(norm_aniso_lebesgue(u, p, r, LebesgueOrder::h_outer), expect, 1e-12 * expect);
      EXPECT_NEAR(norm_aniso_lebesgue(u, p, r, LebesgueOrder::v_outer), expect, 1e-12 * expect);
    }
  }
}

TEST(AnisoLebesgue, TensorProductFactorizes) {
  Grid g(16, 16, 12);
  auto gh = [](double x1, double x2) { return 2.0 + std::sin(x1) * std::cos(x2); };
  auto hv = [](double x3) { return 1.0 + 0.5 * std::cos(x3) + 0.25 * std::sin(2 * x3); };
  auto u = sample(g, [&](double x1, double x2, double x3) { return gh(x1, x2) * hv(x3); });
  for (double p : {1.0, 2.0, 3.0, kInf}) {
    for (double r : {1.0, 2.0, 4.0, kInf}) {
      double nh = 0.0, nv = 0.0;
      const double d1 = g.spacing(0), d2 = g.spacing(1), d3 = g.spacing(2);
      for (std::size_t i = 0; i < g.n1(); ++i)
        for (std::size_t j = 0; j < g.n2(); ++j) {
          const double x = std::abs(gh(i * d1, j * d2));
          nh = std::isinf(p) ? std::max(nh, x) : nh + std::pow(x, p) * d1 * d2;
        }
      for (std::size_t k = 0; k < g.n3(); ++k) {
        const double x = std::abs(hv(k * d3));
        nv = std::isinf(r) ? std::max(nv, x) : nv + std::pow(x, r) * d3;
      }
      if (!std::isinf(p)) nh = std::pow(nh, 1.0 / p);
      if (!std::isinf(r)) nv = std::pow(nv, 1.0 / r);
      EXPECT_NEAR(norm_aniso_lebesgue(u, p, r, LebesgueOrder::h_outer), nh * nv, 1e-12 * nh * nv);
      EXPECT_NEAR(norm_aniso_lebesgue(u, p, r, LebesgueOrder::v_outer), nh * nv, 1e-12 * nh * nv);
    }
  }
}

TEST(AnisoLebesgue, EqualExponentsGivePlainNorm) {
  Grid g = Grid::cube(8);
  auto u = random_field(g, 5);
  auto v = inverse_transform(u);
  const double cell = std::pow(two_pi / 8, 3);
  for (double p : {1.0, 2.0, 3.5}) {
    double s = 0.0;
    for (double x : v) s += std::pow(std::abs(x), p) * cell;
    const double ref = std::pow(s, 1.0 / p);
    EXPECT_NEAR(norm_aniso_lebesgue(u, p, p, LebesgueOrder::h_outer), ref, 1e-12 * ref);
    EXPECT_NEAR(norm_aniso_lebesgue(u, p, p, LebesgueOrder::v_outer), ref, 1e-12 * ref);
  }
}

TEST(AnisoLebesgue, CauchySchwarz) {
  Grid g = Grid::cube(8);
  for (int i = 0; i < 10; ++i) {
    auto f = random_field(g, 10 + i), h = random_field(g, 50 + i);
    auto fh = product(f, h, Dealias::none);
    const double lhs = norm_aniso_lebesgue(fh, 1, 1, LebesgueOrder::v_outer);
    const double rhs = norm_aniso_lebesgue(f, 2, 2, LebesgueOrder::v_outer) * norm_aniso_lebesgue(h, 2, 2, LebesgueOrder::v_outer);
    EXPECT_LE(lhs, rhs * (1 + 1e-12));
  }
}

TEST(AnisoLebesgue, MixedNormMinkowskiOrder) {
  // for p <= r, L^r_v(L^p_h) <= L^p_h(L^r_v)
  Grid g = Grid::cube(8);
  auto u = random_field(g, 7);
  EXPECT_LE(norm_aniso_lebesgue(u, 2, 4, LebesgueOrder::v_outer), norm_aniso_lebesgue(u, 2, 4, LebesgueOrder::h_outer) * (1 + 1e-12));
}

TEST(AnisoLebesgue, RejectsInvalidExponent) {
  Grid g = Grid::cube(8);
  auto u = random_field(g, 7);
  EXPECT_THROW(norm_aniso_lebesgue(u, 0.5, 2, LebesgueOrder::h_outer), std::invalid_argument);
  EXPECT_THROW(norm_aniso_lebesgue(u, 2, std::nan(""), LebesgueOrder::h_outer), std::invalid_argument);
}

TEST(AnisoLebesgue, LinfvL2hOfVector) {
  Grid g = Grid::cube(8);
  auto u = alp::test::random_vector(g, 9);
  auto p = to_physical(u, g);
  double best = 0.0;
  for (std::size_t k = 0; k < g.n3(); ++k) {
    double s = 0.0;
    for (std::size_t h = 0; h < g.horizontal_size(); ++h)
      for (int c = 0; c < 3; ++c) s += p[c][h * g.n3() + k] * p[c][h * g.n3() + k];
    best = std::max(best, std::sqrt(s * g.spacing(0) * g.spacing(1)));
  }
  EXPECT_NEAR(norm_Linfv_L2h(u), best, 1e-12 * best);
}

TEST(InnerProduct, OrthogonalModes) {
  Grid g = Grid::cube(8);
  EXPECT_EQ(inner_product_Hs(cos_mode(g, 1, 0, 0), cos_mode(g, 0, 2, 0), 0.6), 0.0);
  EXPECT_EQ(inner_product_Hss(cos_mode(g, 1, 0, 0), cos_mode(g, 0, 0, 3), {0, 0.6}), 0.0);
}

TEST(InnerProduct, SelfIsSquaredNormAndSymmetric) {
  Grid g = Grid::cube(16);
  auto u = alp::test::random_vector(g, 11), v = alp::test::random_vector(g, 12);
  const double n = norm_Hs(u, 0.6);
  EXPECT_NEAR(inner_product_Hs(u, u, 0.6), n * n, 1e-12 * n * n);
  EXPECT_NEAR(inner_product_Hss(u, v, {0.3, 0.6}), inner_product_Hss(v, u, {0.3, 0.6}), 1e-12 * n * n);
  EXPECT_THROW(inner_product_Hs(u[0], random_field(Grid::cube(8), 1), 0.6), std::invalid_argument);
}

TEST(InnerProduct, CoriolisSkewSymmetryInH0s) {
  Grid g = Grid::cube(16);
  const NormSpec spec{0, 0.6};
  auto B = [](double x1, double x2) {
    return std::array<double, 3>{0.3 * std::cos(x2), 0.4 * std::sin(x1), 1.0 + 0.5 * std::sin(x1) * std::cos(x2)};
  };
  for (int i = 0; i < 10; ++i) {
    auto u = alp::test::random_vector(g, 200 + 3 * i);
    const double n = norm_Hss(u, spec);
    EXPECT_LE(std::abs(inner_product_Hss(cross_native(u, B), u, spec)), 1e-12 * n * n);
  }
}

TEST(Interpolation, BlendedNormBelowGeometricMean) {
  Grid g = Grid::cube(16);
  for (int i = 0; i < 5; ++i) {
    auto u = random_field(g, 300 + i);
    for (double a : {0.25, 0.5, 0.75}) {
      const NormSpec s1{1.2, -0.4}, s2{-0.5, 1.1};
      const NormSpec blend{a * s1.s + (1 - a) * s2.s, a * s1.s_v + (1 - a) * s2.s_v};
      EXPECT_LE(norm_Hss(u, blend), std::pow(norm_Hss(u, s1), a) * std::pow(norm_Hss(u, s2), 1 - a) + 1e-10);
    }
  }
}

TEST(Embedding, H0sControlsLinfvL2hOnEnsemble) {
  // Cauchy-Schwarz in k3 bounds the ratio by (2pi)(sum_k3 (1+k3^2)^-s)^{1/2}
  Grid g = Grid::cube(16);
  const double s = 0.6;
  double bound = 0.0;
  for (int k3 = -8; k3 < 8; ++k3) bound += std::pow(1.0 + k3 * k3, -s);
  bound = two_pi * std::sqrt(bound);
  for (int i = 0; i < 20; ++i) {
    auto u = alp::test::random_vector(g, 400 + 3 * i);
    EXPECT_LE(norm_Linfv_L2h(u) / norm_Hss(u, {0, s}), bound);
  }
}
