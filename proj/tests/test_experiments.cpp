#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "alp/experiments.hpp"
#include "support.hpp"

using namespace alp;

namespace {

SolverConfig small_config(double t_end = 0.5) {
  SolverConfig c;
  c.grid = Grid::cube(16);
  c.nu_h = 0.1;
  c.dt = 0.01;
  c.t_end = t_end;
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Report, WritesCsvVerdictAndSeries) {
  ExperimentReport r;
  r.name = "demo";
  r.table = {"demo", {"a", "b"}, {{1.0, 0.5}, {2.0, 0.25}}};
  r.series.push_back({"curve", {"t", "y"}, {{0.0, 1.0}}});
  r.check(true, "first");
  r.check(false, "second");
  EXPECT_FALSE(r.pass);
  auto dir = std::filesystem::temp_directory_path() / "alp_report_test";
  std::filesystem::remove_all(dir);
  auto files = write_report(r, dir);
  ASSERT_EQ(files.size(), 3u);
  EXPECT_EQ(slurp(dir / "demo.csv"), "a,b\n1,0.5\n2,0.25\n");
  EXPECT_EQ(slurp(dir / "verdict.txt"), "demo: FAIL\nPASS first\nFAIL second\n");
  EXPECT_EQ(slurp(dir / "curve.dat"), "# t y\n0 1\n");
  std::filesystem::remove_all(dir);
}

TEST(SmallData, ZeroAmplitudeIsMonotone) {
  auto cfg = small_config();
  const double m[] = {0.0};
  auto r = exp_small_data_decay(cfg, taylor_green(cfg.grid), m);
  ASSERT_EQ(r.monotone.size(), 1u);
  EXPECT_TRUE(r.monotone[0]);
  EXPECT_EQ(r.max_increase[0], 0.0);
  ASSERT_TRUE(r.threshold);
  EXPECT_EQ(*r.threshold, 0.0);
}

TEST(SmallData, ShearUnderConstantRotationDecaysAtEveryAmplitude) {
  auto cfg = small_config();
  cfg.rotation = RotationSpec::constant_e3();
  const double m[] = {10.0, 0.1, 1.0};
  auto r = exp_small_data_decay(cfg, shear_flow(cfg.grid), m);
  EXPECT_EQ(r.multiples, (std::vector<double>{0.1, 1.0, 10.0}));
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_TRUE(r.monotone[i]);
    EXPECT_LE(r.max_increase[i], 10 * cfg.dt * cfg.dt);
  }
  EXPECT_EQ(*r.threshold, 10.0);
  EXPECT_TRUE(r.report.pass);
}

TEST(SmallData, TaylorGreenAtTenthOfViscosity) {
  auto cfg = small_config(1.0);
  cfg.rotation = RotationSpec::beta_plane(0.5);
  cfg.epsilon = 0.1;
  const double m[] = {0.1};
  auto r = exp_small_data_decay(cfg, taylor_green(cfg.grid), m);
  EXPECT_TRUE(r.monotone[0]);
  EXPECT_EQ(r.report.series.size(), 1u);
  EXPECT_EQ(r.report.series[0].rows.size(), 101u);
}

TEST(SmallData, CflCollapseIsNotMonotone) {
  auto cfg = small_config(0.1);
  cfg.dt = 0.05;
  const double m[] = {1.0, 200.0};
  auto r = exp_small_data_decay(cfg, taylor_green(cfg.grid), m);
  EXPECT_TRUE(r.monotone[0]);
  EXPECT_FALSE(r.monotone[1]);
  EXPECT_EQ(*r.threshold, 1.0);
}

TEST(Splitting, RefusesX2DependentRotation) {
  auto cfg = small_config();
  cfg.rotation = RotationSpec::beta_plane(0.5);
  EXPECT_THROW(exp_splitting_scheme(cfg, taylor_green(cfg.grid), {}), std::invalid_argument);
  cfg.rotation = RotationSpec::x1x2();
  EXPECT_THROW(exp_splitting_scheme(cfg, taylor_green(cfg.grid), {}), std::invalid_argument);
}

TEST(Splitting, BandLimitedDataHasNoTail) {
  auto cfg = small_config(0.2);
  cfg.rotation = RotationSpec::x1_only();
  SplittingParams p;
  p.N = 1;
  p.control_time = 0.2;
  auto r = exp_splitting_scheme(cfg, with_H0s_norm(taylor_green(cfg.grid), cfg.s, 0.01), p);
  EXPECT_EQ(r.tail, 0.0);
  for (const auto& m : r.members) {
    EXPECT_EQ(m.w0, 0.0);
    EXPECT_TRUE(m.bounded);
    EXPECT_LT(m.w_max, 1e-4);
    EXPECT_EQ(m.horizon, cfg.t_end);
    EXPECT_LT(m.max_defect, 1e-10);
  }
}

TEST(Splitting, LocalizationInvariantAndControl) {
  auto cfg = small_config(0.5);
  cfg.rotation = RotationSpec::x1_only();
  FieldEnsembleSpec es;
  es.count = 1;
  auto u0 = with_H0s_norm(gen_sample(es, cfg.grid, 0), cfg.s, 1.0);
  SplittingParams p;
  p.N = 0;
  p.epsilons = {0.1, 0.01};
  p.control_time = 0.5;
  auto r = exp_splitting_scheme(cfg, u0, p);
  ASSERT_EQ(r.members.size(), 2u);
  for (const auto& m : r.members) {
    EXPECT_LT(m.max_defect, 1e-10);
    EXPECT_GT(m.control_defect, 1e-4);
  }
  EXPECT_EQ(r.report.table.rows.size(), 2u);
  EXPECT_EQ(r.report.series.size(), 2u);
}

TEST(Splitting, AutomaticCutoffMeetsTheTailBound) {
  Grid g = Grid::cube(16);
  FieldEnsembleSpec es;
  es.count = 1;
  auto u0 = gen_sample(es, g, 0);
  const int n = smallest_split_index(u0, 0.6, 1e-3);
  ASSERT_GE(n, 0);
  EXPECT_LE(norm_Hss(u0 - low_pass_S(u0, n), {0, 0.6}), 1e-3);
  if (n > 0) {
    EXPECT_GT(norm_Hss(u0 - low_pass_S(u0, n - 1), {0, 0.6}), 1e-3);
  }
}

TEST(NsPropagation, RefusesRotation) {
  auto cfg = small_config();
  cfg.rotation = RotationSpec::constant_e3();
  EXPECT_THROW(exp_ns_propagation(cfg, taylor_green(cfg.grid)), std::invalid_argument);
}

TEST(NsPropagation, TrivialCases) {
  auto cfg = small_config();
  auto zero = exp_ns_propagation(cfg, initial_field("zero", cfg.grid));
  EXPECT_TRUE(zero.holds);
  auto shear = exp_ns_propagation(cfg, shear_flow(cfg.grid));
  EXPECT_TRUE(shear.holds);
  EXPECT_TRUE(shear.report.pass);
  EXPECT_GT(shear.min_slack, 0.0);
}

TEST(NsPropagation, FrozenConstantCoversTheReferenceRun) {
  auto cfg = gronwall_reference_config();
  auto d = run(cfg, gronwall_reference_data(cfg)).diagnostics;
  const double c = calibrate_gronwall(d, cfg.nu_h, cfg.dt);
  EXPECT_GT(c, 0.0);
  EXPECT_LE(c, kGronwallC);
  EXPECT_GT(c, 0.5 * kGronwallC);
}

TEST(NsPropagation, EnvelopeFailsWithoutGrowthAllowance) {
  auto cfg = gronwall_reference_config();
  cfg.grid = Grid::cube(16);
  cfg.t_end = 1.0;
  auto r = exp_ns_propagation(cfg, gronwall_reference_data(cfg), 0.0);
  EXPECT_FALSE(r.holds);
  EXPECT_LT(r.min_slack, 0.0);
}

TEST(Rossby, LargeEpsilonMatchesBaseline) {
  auto cfg = small_config(0.3);
  cfg.rotation = RotationSpec::beta_plane(0.5);
  const double eps[] = {1e6};
  auto r = exp_rossby_sweep(cfg, with_H0s_norm(taylor_green(cfg.grid), cfg.s, 0.01), eps);
  EXPECT_LT(r.members[0].baseline_gap, 1e-8);
  EXPECT_TRUE(r.members[0].monotone);
}

TEST(Rossby, UniformFieldUnderConstantRotationKeepsNorms) {
  auto cfg = small_config(0.3);
  cfg.rotation = RotationSpec::constant_e3();
  VectorField u(cfg.grid);
  u[0].at(0, 0, 0) = 0.3;
  u[1].at(0, 0, 0) = -0.2;
  const double eps[] = {1.0, 0.1};
  auto r = exp_rossby_sweep(cfg, u, eps);
  for (const auto& m : r.members) {
    EXPECT_NEAR(m.sup_Hs, std::hypot(0.3, 0.2), 1e-15);
    EXPECT_TRUE(m.monotone);
  }
  EXPECT_NEAR(r.slope, 0.0, 1e-13);
}

TEST(Rossby, SweepLedgerAndFit) {
  auto cfg = small_config(0.5);
  cfg.rotation = RotationSpec::beta_plane(0.5);
  const double eps[] = {1.0, 0.1, 0.01};
  auto r = exp_rossby_sweep(cfg, with_H0s_norm(taylor_green(cfg.grid), cfg.s, 0.01), eps);
  ASSERT_EQ(r.members.size(), 3u);
  for (const auto& m : r.members) EXPECT_TRUE(m.monotone);
  EXPECT_TRUE(r.report.pass);
  // the fit passes through the mean of the points
  double mx = 0, my = 0;
  for (const auto& row : r.report.table.rows) {
    mx += row[1] / 3;
    my += row[3] / 3;
  }
  EXPECT_NEAR(r.slope * mx + r.intercept, my, 1e-12);
}
