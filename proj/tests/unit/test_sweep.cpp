#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "rrwoc/error.hpp"
#include "rrwoc/sweep.hpp"

using namespace rrwoc;

namespace {

SweepConfig small_config() {
  SweepConfig c;
  c.d = 2;
  c.n = 8;
  c.m_values = {8};
  c.k_values = {1, 2};
  c.sigmas = {0.0, 0.01};
  c.trials = 3;
  c.seed = 2024;
  return c;
}

std::string csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  write_sweep_csv(out, rows);
  return out.str();
}

}  // namespace

TEST(RecoverySweep, TinyGridShape) {
  const auto rows = recovery_sweep(small_config());
  ASSERT_EQ(rows.size(), 4u);
  const std::string text = csv(rows);
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "solver,d,n,m,k,sigma,snr,outlier_ratio,missing_ratio,trials,recoveries,recovery_rate,"
            "mean_beta_error");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
  EXPECT_EQ(rows[0].k, 1u);
  EXPECT_EQ(rows[0].sigma, 0.0);
  EXPECT_TRUE(std::isinf(rows[0].snr));
  EXPECT_EQ(rows[1].sigma, 0.01);
  EXPECT_EQ(rows[2].k, 2u);
  EXPECT_DOUBLE_EQ(rows[2].outlier_ratio, 0.25);
  EXPECT_DOUBLE_EQ(rows[2].missing_ratio, 2.0 / 8.0);
  // E[s^2] for s uniform on [0.5, 1.5] is 13/12.
  EXPECT_NEAR(rows[1].snr, (13.0 / 12.0) / 1e-4, 1e-6);
  for (const auto& r : rows) EXPECT_EQ(r.trials, 3u);
}

TEST(RecoverySweep, ReproducibleAtAnyThreadCount) {
  SweepConfig c = small_config();
  c.solvers = {SolverKind::RandomizedND, SolverKind::TrimmedICP};
  const std::string one = csv(recovery_sweep(c));
  EXPECT_EQ(csv(recovery_sweep(c)), one);
  c.threads = 3;
  EXPECT_EQ(csv(recovery_sweep(c)), one);
  c.seed = 2025;
  EXPECT_NE(csv(recovery_sweep(c)), one);
}

TEST(RecoverySweep, NoiselessInlierMajorityRecoversEverything) {
  SweepConfig c;
  c.d = 2;
  c.n = 6;
  c.m_values = {6, 8};
  c.k_values = {1, 2};
  c.sigmas = {0.0};
  c.trials = 20;
  c.solvers = {SolverKind::ExhaustiveND};
  for (const auto& r : recovery_sweep(c)) {
    EXPECT_EQ(r.recovery_rate(), 1.0) << "m=" << r.m << " k=" << r.k;
    EXPECT_LT(r.mean_beta_error, 1e-9);
  }
}

TEST(RecoverySweep, TrimmedIcpFailsWithOutliers) {
  SweepConfig c;
  c.k_values = {3, 5};
  c.trials = 20;
  c.solvers = {SolverKind::TrimmedICP};
  for (const auto& r : recovery_sweep(c)) EXPECT_LE(r.recovery_rate(), 0.2);
}

TEST(RecoverySweep, RecoveryDoesNotImproveWithNoise) {
  SweepConfig c;
  c.d = 2;
  c.n = 10;
  c.m_values = {10};
  c.k_values = {2};
  c.sigmas = {1e-3, 1e-2, 1e-1, 1.0};
  c.trials = 30;
  c.seed = 8;
  const auto rows = recovery_sweep(c);
  ASSERT_EQ(rows.size(), 4u);
  int inversions = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].recoveries > rows[i - 1].recoveries) ++inversions;
  }
  EXPECT_LE(inversions, 1);
  EXPECT_GT(rows.front().recovery_rate(), rows.back().recovery_rate());
}

TEST(RecoverySweep, SolverFailureCountsAsMiss) {
  SweepConfig c = small_config();
  c.sigmas = {0.0};
  c.k_values = {1};
  c.solvers = {SolverKind::Exhaustive1D};  // wrong dimension: every trial fails
  const auto rows = recovery_sweep(c);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].recoveries, 0u);
  EXPECT_TRUE(std::isnan(rows[0].mean_beta_error));
  EXPECT_NE(csv(rows).find(",nan\n"), std::string::npos);
}

TEST(RecoverySweep, InvalidGrids) {
  SweepConfig c = small_config();
  c.trials = 0;
  EXPECT_THROW(recovery_sweep(c), Error);
  c = small_config();
  c.k_values = {8};
  EXPECT_THROW(recovery_sweep(c), Error);
  c = small_config();
  c.m_values = {5};
  EXPECT_THROW(recovery_sweep(c), Error);
  c = small_config();
  c.k_values = {6};  // two inliers cannot span a 2-D hull
  EXPECT_THROW(recovery_sweep(c), Error);
}

TEST(SweepPresets, ViewsAndNames) {
  const SweepConfig missing = sweep_preset(SweepView::MissingVsSnr);
  EXPECT_EQ(missing.k_values, std::vector<std::size_t>{0});
  EXPECT_EQ(missing.m_values.front(), 20u);
  EXPECT_EQ(missing.m_values.back(), 40u);
  EXPECT_EQ(missing.sigmas, default_sigma_grid());
  const SweepConfig outliers = sweep_preset(SweepView::OutliersVsSnr);
  EXPECT_EQ(outliers.k_values.size(), 19u);
  const SweepConfig curves = sweep_preset(SweepView::OutlierCurves);
  EXPECT_EQ(curves.solvers.size(), 3u);
  EXPECT_EQ(parse_sweep_view("outlier-curves"), SweepView::OutlierCurves);
  EXPECT_EQ(parse_sweep_view("missing-snr"), SweepView::MissingVsSnr);
  EXPECT_FALSE(parse_sweep_view("nope").has_value());
  EXPECT_EQ(margin_for_sigma(0.0, 1e-9), 1e-9);
  EXPECT_EQ(margin_for_sigma(0.25, 1e-9), 0.25);
}
