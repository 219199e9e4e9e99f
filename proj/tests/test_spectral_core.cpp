#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "alp/filter_bank.hpp"
#include "alp/localization.hpp"
#include "alp/operators.hpp"
#include "alp/snapshot.hpp"
#include "alp/transform.hpp"
#include "support.hpp"

using namespace alp;
using alp::test::cos_mode;
using alp::test::max_diff;
using alp::test::random_field;
using alp::test::sample;

namespace {

// Direct O(N^2) DFT, normalized by 1/N.
std::vector<cplx> naive_dft(const Grid& g, const std::vector<double>& s) {
  std::vector<cplx> out(g.size());
  for_each_mode(g, [&](std::size_t i, int k1, int k2, int k3) {
    cplx acc = 0.0;
    for_each_point(g, [&](std::size_t p, double x1, double x2, double x3) {
      acc += s[p] * std::polar(1.0, -(k1 * x1 + k2 * x2 + k3 * x3));
    });
    out[i] = acc / static_cast<double>(g.size());
  });
  return out;
}

// Galerkin product by explicit convolution over non-Nyquist modes.
SpectralField naive_product(const SpectralField& a, const SpectralField& b) {
  const Grid& g = a.grid();
  SpectralField out(g);
  const int h1 = int(g.n1()) / 2, h2 = int(g.n2()) / 2, h3 = int(g.n3()) / 2;
  for_each_mode(g, [&](std::size_t i, int p1, int p2, int p3) {
    if (g.has_nyquist_component({p1, p2, p3})) return;
    for_each_mode(g, [&](std::size_t j, int q1, int q2, int q3) {
      if (g.has_nyquist_component({q1, q2, q3})) return;
      const int r1 = p1 + q1, r2 = p2 + q2, r3 = p3 + q3;
      if (std::abs(r1) >= h1 || std::abs(r2) >= h2 || std::abs(r3) >= h3) return;
      out.at(r1, r2, r3) += a[i] * b[j];
    });
  });
  return out;
}

}  // namespace

TEST(Grid, RejectsOddOrSmall) {
  EXPECT_THROW(Grid(7, 8, 8), std::invalid_argument);
  EXPECT_THROW(Grid(8, 6, 8), std::invalid_argument);
  EXPECT_NO_THROW(Grid(8, 10, 12));
}

TEST(Grid, ConjugateIndexIsInvolution) {
  Grid g(8, 10, 12);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(g.conjugate_index(g.conjugate_index(i)), i);
}

TEST(Grid, PaddedIsEvenAndLargeEnough) {
  Grid g(10, 8, 12);
  Grid p = g.padded();
  EXPECT_EQ(p.n1(), 16u);
  EXPECT_EQ(p.n2(), 12u);
  EXPECT_EQ(p.n3(), 18u);
}

TEST(Transform, ConstantHasOnlyMeanMode) {
  Grid g = Grid::cube(8);
  auto u = sample(g, [](double, double, double) { return 1.0; });
  EXPECT_NEAR(u.at(0, 0, 0).real(), 1.0, 1e-15);
  u.at(0, 0, 0) = 0.0;
  EXPECT_LT(u.max_abs(), 1e-15);
}

TEST(Transform, CosineSplitsIntoTwoHalves) {
  Grid g = Grid::cube(16);
  auto u = sample(g, [](double x1, double, double) { return std::cos(x1); });
  EXPECT_NEAR(std::abs(u.at(1, 0, 0) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(u.at(-1, 0, 0) - 0.5), 0.0, 1e-15);
  u.at(1, 0, 0) = 0.0;
  u.at(-1, 0, 0) = 0.0;
  EXPECT_LT(u.max_abs(), 1e-15);
}

TEST(Transform, MatchesDirectSum) {
  Grid g(8, 8, 10);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-1, 1);
  std::vector<double> s(g.size());
  for (auto& x : s) x = d(rng);
  auto u = forward_transform(g, s);
  auto ref = naive_dft(g, s);
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(u[i] - ref[i]));
  EXPECT_LT(err, 1e-13);
}

TEST(Transform, RoundTrip) {
  Grid g = Grid::cube(16);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> d;
  std::vector<double> s(g.size());
  for (auto& x : s) x = d(rng);
  auto back = inverse_transform(forward_transform(g, s));
  double err = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    err = std::max(err, std::abs(back[i] - s[i]));
    scale = std::max(scale, std::abs(s[i]));
  }
  EXPECT_LT(err, 1e-12 * scale);
}

TEST(Transform, ShapeMismatchThrows) {
  std::vector<double> s(10);
  EXPECT_THROW(forward_transform(Grid::cube(8), s), std::invalid_argument);
}

TEST(Transform, InverseOfZeroAndCosine) {
  Grid g = Grid::cube(8);
  for (double x : inverse_transform(SpectralField(g))) EXPECT_EQ(x, 0.0);
  SpectralField c(g);
  c.at(0, 0, 1) = 0.5;
  c.at(0, 0, -1) = 0.5;
  auto v = inverse_transform(c);
  for_each_point(g, [&](std::size_t i, double, double, double x3) { EXPECT_NEAR(v[i], std::cos(x3), 1e-13); });
}

TEST(Transform, Parseval) {
  Grid g = Grid::cube(16);
  auto u = random_field(g, 5);
  auto v = inverse_transform(u);
  double phys = 0.0;
  for (double x : v) phys += x * x;
  phys /= static_cast<double>(g.size());
  EXPECT_NEAR(phys, u.l2_norm() * u.l2_norm(), 1e-12 * phys);
}

TEST(FilterBank, ShapeOfCutoffs) {
  EXPECT_EQ(FilterBank::eta(0.5), 1.0);
  EXPECT_EQ(FilterBank::eta(2.5), 0.0);
  EXPECT_EQ(FilterBank::phi(2.0), 1.0);
  EXPECT_EQ(FilterBank::phi(1.0), 0.0);
  EXPECT_EQ(FilterBank::phi(4.0), 0.0);
  double prev = 1.0;
  for (double r = 1.0; r <= 2.0; r += 1.0 / 512) {
    const double e = FilterBank::eta(r);
    EXPECT_LE(e, prev);
    prev = e;
    EXPECT_NEAR(e + FilterBank::one_minus_eta(r), 1.0, 1e-15);
  }
  for (double r = 0.0; r < 8.0; r += 1.0 / 256) EXPECT_GE(FilterBank::phi(r), 0.0);
}

TEST(FilterBank, PartitionOfUnityOnGridRadii) {
  Grid g = Grid::cube(32);
  const int jm = FilterBank::jmax(g.max_radius());
  for (int m = 0; m <= 3 * 16 * 16; ++m) {
    const double r = std::sqrt(double(m));
    double s = 0.0;
    for (int j = -1; j <= jm; ++j) s += FilterBank::block(j, r);
    EXPECT_NEAR(s, 1.0, 1e-13) << "r=" << r;
  }
}

TEST(FilterBank, MeasuredConstants) {
  const auto& b = FilterBank::standard();
  EXPECT_EQ(b.n0(), 2);
  EXPECT_NEAR(b.ring_support().first, 1.0, 5e-3);
  EXPECT_NEAR(b.ring_support().second, 4.0, 5e-3);
  EXPECT_NEAR(b.ball_radius(), 2.0, 5e-3);
  // ring of S_{q'-1}a Delta_q' b ends below 5 * 2^q'; Delta_q starts at 2^q
  EXPECT_EQ(b.quasi_orthogonal_lag(), 3);
}

TEST(FilterBank, DisjointRingsAtN0) {
  const int n0 = FilterBank::standard().n0();
  for (double r = 0.0; r < 64.0; r += 1.0 / 64) {
    for (int j = 0; j < 4; ++j) EXPECT_EQ(FilterBank::block(j, r) * FilterBank::block(j + n0, r), 0.0);
  }
}

TEST(Localization, IsoBlockOfModeTwoIsExact) {
  Grid g = Grid::cube(16);
  auto u = cos_mode(g, 2, 0, 0);
  EXPECT_EQ(max_diff(dyadic_block_iso(u, 0), u), 0.0);
}

TEST(Localization, IsoPartitionOfUnity) {
  Grid g = Grid::cube(16);
  auto u = random_field(g, 1);
  EXPECT_LT((u - block_sum(u, Bank::iso)).l2_norm(), 1e-12 * u.l2_norm());
}

TEST(Localization, NegativeIndexIsZero) {
  Grid g = Grid::cube(8);
  auto u = random_field(g, 2);
  EXPECT_EQ(dyadic_block_iso(u, -5).max_abs(), 0.0);
  EXPECT_EQ(dyadic_block_iso(u, jmax(g, Bank::iso) + 1).max_abs(), 0.0);
}

TEST(Localization, VerticalBlocksOfHorizontalMode) {
  Grid g = Grid::cube(16);
  auto u = cos_mode(g, 5, 7, 0);
  EXPECT_EQ(max_diff(dyadic_block_vert(u, -1), u), 0.0);
  for (int q = 0; q <= jmax(g, Bank::vert); ++q) EXPECT_EQ(dyadic_block_vert(u, q).max_abs(), 0.0);
}

TEST(Localization, VerticalBlockOfModeFour) {
  Grid g = Grid::cube(16);
  auto u = cos_mode(g, 0, 0, 4);
  EXPECT_EQ(max_diff(dyadic_block_vert(u, 1), u), 0.0);
  EXPECT_EQ(dyadic_block_vert(u, 0).max_abs(), 0.0);
  EXPECT_EQ(dyadic_block_vert(u, 2).max_abs(), 0.0);
}

TEST(Localization, VerticalPartitionOfUnity) {
  Grid g(16, 16, 32);
  auto u = random_field(g, 4);
  EXPECT_LT((u - block_sum(u, Bank::vert)).l2_norm(), 1e-12 * u.l2_norm());
}

TEST(Localization, LowPassFullSupport) {
  Grid g = Grid::cube(16);
  auto u = random_field(g, 8);
  EXPECT_LT(max_diff(low_pass_S(u, jmax(g, Bank::iso) + 2), u), 1e-13);
  EXPECT_LT(max_diff(low_pass_vert_S(u, jmax(g, Bank::vert) + 2), u), 1e-13);
}

TEST(Localization, LowPassKeepsUnitMode) {
  Grid g = Grid::cube(8);
  auto u = cos_mode(g, 1, 0, 0);
  EXPECT_EQ(max_diff(low_pass_S(u, 1), u), 0.0);
  auto w = cos_mode(g, 0, 0, 1);
  EXPECT_EQ(max_diff(low_pass_vert_S(w, 1), w), 0.0);
}

TEST(Localization, LowPassSplitting) {
  Grid g = Grid::cube(16);
  auto u = random_field(g, 9);
  for (int n = 0; n < 5; ++n) {
    auto lo = low_pass_S(u, n);
    EXPECT_LT(max_diff(lo + (u - lo), u), 1e-15);
    auto lv = low_pass_vert_S(u, n);
    EXPECT_LT(max_diff(lv + (u - lv), u), 1e-15);
  }
  EXPECT_THROW(low_pass_S(u, -1), std::invalid_argument);
}

TEST(Localization, LowPassEqualsSumOfLowerBlocks) {
  Grid g = Grid::cube(16);
  auto u = random_field(g, 10);
  for (int q = 0; q <= 4; ++q) {
    SpectralField acc(g);
    for (int j = -1; j <= q - 1; ++j) acc += dyadic_block_vert(u, j);
    EXPECT_LT(max_diff(acc, low_pass_vert_S(u, q)), 1e-14);
  }
}

TEST(Localization, WideLowPassFixesLowPass) {
  Grid g = Grid::cube(16);
  auto u = random_field(g, 12);
  for (int n = 0; n < 4; ++n) {
    auto s = low_pass_S(u, n);
    EXPECT_LT(max_diff(low_pass_x2x3(s, n), s), 1e-13);
  }
}

TEST(Localization, WideLowPassIgnoresX1) {
  Grid g = Grid::cube(16);
  auto u = sample(g, [](double x1, double, double) { return std::sin(3 * x1) + std::cos(7 * x1); });
  EXPECT_EQ(max_diff(low_pass_x2x3(u, 0), u), 0.0);
}

TEST(Localization, WideLowPassCommutesWithX1Multiplication) {
  Grid g = Grid::cube(16);
  auto b = sample(g, [](double x1, double, double) { return 2.0 + std::sin(x1); });
  auto u = alp::test::smooth_field(g, 14);
  for (int n = 0; n < 3; ++n) {
    auto lhs = low_pass_x2x3(product(b, u), n);
    auto rhs = product(b, low_pass_x2x3(u, n));
    EXPECT_LT(max_diff(lhs, rhs), 1e-12 * u.max_abs());
  }
}

TEST(Operators, DerivativeOfCosine) {
  Grid g = Grid::cube(16);
  auto d = derivative(cos_mode(g, 1, 0, 0), 0);
  auto ref = sample(g, [](double x1, double, double) { return -std::sin(x1); });
  EXPECT_LT(max_diff(d, ref), 1e-12);
  auto c = sample(g, [](double, double, double) { return 3.0; });
  EXPECT_EQ(derivative(c, 2).max_abs(), 0.0);
}

TEST(Operators, HorizontalLaplacianOfMode) {
  Grid g = Grid::cube(32);
  auto u = cos_mode(g, 1, 2, 9);
  EXPECT_LT(max_diff(horizontal_laplacian(u), -5.0 * u), 1e-13);
}

TEST(Operators, DivergenceOfCrossDependentField) {
  Grid g = Grid::cube(16);
  VectorField u(sample(g, [](double, double x2, double) { return std::sin(x2); }),
                sample(g, [](double, double, double x3) { return std::sin(x3); }),
                sample(g, [](double x1, double, double) { return std::sin(x1); }));
  EXPECT_LT(divergence(u).max_abs(), 1e-15);
}

TEST(Leray, DivergenceFreeFieldUnchanged) {
  Grid g = Grid::cube(16);
  auto u = alp::test::smooth_divfree(g, 20);
  EXPECT_LT(max_diff(leray_project(u), u), 1e-12 * u.max_abs());
}

TEST(Leray, GradientIsAnnihilated) {
  Grid g = Grid::cube(16);
  auto phi = sample(g, [](double x1, double, double x3) { return std::sin(x1) * std::sin(x3); });
  auto p = leray_project(gradient(phi));
  EXPECT_LT(p.max_abs(), 1e-15);
}

TEST(Leray, RandomFieldBecomesDivergenceFree) {
  Grid g = Grid::cube(16);
  auto u = alp::test::random_vector(g, 30);
  auto p = leray_project(u);
  EXPECT_TRUE(p.divfree());
  EXPECT_LT(divergence(p).l2_norm(), 1e-12 * p.l2_norm());
  EXPECT_LT(divergence_defect(p), 1e-12);
  EXPECT_LT(max_diff(leray_project(p), p), 1e-12 * p.max_abs());
  for (int c = 0; c < 3; ++c) EXPECT_EQ(p[c].at(0, 0, 0), u[c].at(0, 0, 0));
}

TEST(Reality, OperatorsPreserveConjugateSymmetry) {
  Grid g(16, 12, 20);
  auto u = random_field(g, 40);
  auto v = alp::test::random_vector(g, 41);
  EXPECT_LT(dyadic_block_iso(u, 2).conjugate_asymmetry(), 1e-13);
  EXPECT_LT(dyadic_block_vert(u, 1).conjugate_asymmetry(), 1e-13);
  EXPECT_LT(low_pass_S(u, 2).conjugate_asymmetry(), 1e-13);
  EXPECT_LT(low_pass_x2x3(u, 1).conjugate_asymmetry(), 1e-13);
  EXPECT_LT(derivative(u, 1).conjugate_asymmetry(), 1e-13);
  EXPECT_LT(horizontal_laplacian(u).conjugate_asymmetry(), 1e-13);
  EXPECT_LT(product(u, u).conjugate_asymmetry(), 1e-13);
  auto p = leray_project(v);
  for (int c = 0; c < 3; ++c) EXPECT_LT(p[c].conjugate_asymmetry(), 1e-13);
}

TEST(Product, PaddedMatchesExplicitConvolution) {
  Grid g(8, 8, 10);
  auto a = random_field(g, 50), b = random_field(g, 51);
  auto p = product(a, b, Dealias::pad);
  auto ref = naive_product(a, b);
  EXPECT_LT(max_diff(p, ref), 1e-13);
}

TEST(Product, UnpaddedIsPointwise) {
  Grid g = Grid::cube(8);
  auto a = random_field(g, 52), b = random_field(g, 53);
  auto pa = inverse_transform(a), pb = inverse_transform(b), pp = inverse_transform(product(a, b, Dealias::none));
  for (std::size_t i = 0; i < pa.size(); ++i) EXPECT_NEAR(pp[i], pa[i] * pb[i], 1e-12);
}

TEST(Product, QuasiOrthogonalityBeyondMeasuredLag) {
  Grid g(16, 16, 64);
  auto u = random_field(g, 60), v = random_field(g, 61);
  const int lag = FilterBank::standard().quasi_orthogonal_lag();
  const int jm = jmax(g, Bank::vert);
  const double scale = u.max_abs() * v.max_abs();
  for (int qp = 0; qp <= 2; ++qp) {
    auto prod = product(low_pass(u, qp - 1, Bank::vert), dyadic_block_vert(v, qp));
    for (int q = qp + lag; q <= jm; ++q) {
      EXPECT_LT(dyadic_block_vert(prod, q).max_abs(), 1e-12 * scale) << q << " " << qp;
    }
  }
}

TEST(Advection, FormsAgreeForDivergenceFreeTransport) {
  Grid g = Grid::cube(16);
  auto u = alp::test::smooth_divfree(g, 70);
  auto v = alp::test::smooth_divfree(g, 71);
  auto a = advect(u, v);
  auto c = advect_conservative(u, v);
  EXPECT_LT(max_diff(a, c), 1e-12 * a.max_abs());
  EXPECT_LT(max_diff(self_advect_conservative(u), advect_conservative(u, u)), 1e-13 * a.max_abs());
}

TEST(Snapshot, RoundTripIsBitExact) {
  Grid g(8, 10, 12);
  auto u = random_field(g, 80);
  std::stringstream ss;
  write_alp1(ss, u);
  const std::string bytes = ss.str();
  EXPECT_EQ(bytes.substr(0, 4), "ALP1");
  EXPECT_EQ(bytes.size(), 4 + 24 + 1 + 16 * g.size());
  EXPECT_EQ(static_cast<unsigned char>(bytes[4]), 8u);
  EXPECT_EQ(static_cast<unsigned char>(bytes[12]), 10u);
  auto r = read_alp1(ss);
  EXPECT_EQ(r.grid(), g);
  EXPECT_TRUE(r.is_real());
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(r[i], u[i]);
}

TEST(Snapshot, RejectsBadInput) {
  std::stringstream bad("ALPX");
  EXPECT_THROW(read_alp1(bad), std::runtime_error);
  std::stringstream ss;
  write_alp1(ss, random_field(Grid::cube(8), 1));
  std::string s = ss.str();
  std::stringstream trunc(s.substr(0, s.size() - 3));
  EXPECT_THROW(read_alp1(trunc), std::runtime_error);
}
