#include "invreg/risk.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "invreg/pilot.hpp"

namespace invreg {
namespace {

PlanarMap shifted_identity(double a) {
  return {[a](Point2 x) { return Point2{x.x1 + a, x.x2}; }, MapFn{[a](Point2 y) { return Point2{y.x1 - a, y.x2}; }}};
}

TEST(ForwardRisk, ExactEstimateIsZero) {
  const auto f = swirl_truth();
  const auto r = forward_l2_risk(f.eval, f.eval, CovariateLaw::uniform(), 1000, 0);
  EXPECT_EQ(r.value, 0.0);
  EXPECT_EQ(r.samples, 1000U);
}

TEST(ForwardRisk, ConstantShift) {
  const auto r = forward_l2_risk(shifted_identity(0.1).eval, identity_map().eval, CovariateLaw::uniform(), 100000, 1);
  EXPECT_NEAR(r.value, 0.01, std::max(3.0 * r.std_error, 1e-12));
}

TEST(ForwardRisk, HalfScaledIdentity) {
  const auto half = affine_map(0.5, 0, 0, 0.5);
  const auto r = forward_l2_risk(half.eval, identity_map().eval, CovariateLaw::uniform(), 100000, 2);
  // E||0.5 X||^2 = 0.25 * 2 * (1/3)
  EXPECT_NEAR(r.value, 1.0 / 6.0, 3.0 * r.std_error);
}

TEST(InverseRisk, ExactEstimateIsZero) {
  const auto f = identity_map();
  RiskOptions opt;
  opt.samples = 20000;
  const RiskReport r = inverse_risk(f.eval, *f.inverse, f, opt);
  EXPECT_EQ(r.forward_l2, 0.0);
  EXPECT_EQ(r.inverse_l2_sq, 0.0);
  EXPECT_EQ(r.psi_term, 0.0);
  EXPECT_EQ(r.total_inverse_risk, 0.0);
  EXPECT_EQ(r.sup_error, 0.0);
  EXPECT_EQ(r.nonminv_area, 0.0);
}

TEST(InverseRisk, ShiftedInverse) {
  // f_hat = id, f_hat^{-1}(y) = y - (0.1, 0): the inverse error is the constant (0.1, 0).
  const auto f = identity_map();
  RiskOptions opt;
  opt.samples = 20000;
  const RiskReport r = inverse_risk(f.eval, [](Point2 y) { return Point2{y.x1 - 0.1, y.x2}; }, f, opt);
  EXPECT_NEAR(r.inverse_l2_sq, 0.01, 1e-12);
  EXPECT_NEAR(r.inverse_l2, 0.1, 1e-12);
  EXPECT_NEAR(r.psi_term, 1e-4, 1e-12);
  EXPECT_DOUBLE_EQ(r.total_inverse_risk, r.forward_l2 + r.psi_term);
}

TEST(InverseRisk, SawtoothFloor) {
  RiskOptions opt;
  opt.samples = 20000;
  for (const int D : {10, 100, 1000}) {
    const PlanarMap saw = sawtooth_estimator(D);
    const RiskReport r = inverse_risk(saw.eval, sawtooth_inverse(D), identity_map(), opt);
    EXPECT_GE(r.inverse_l2_sq, 2.0);
    EXPECT_GE(r.psi_term, 4.0);
    EXPECT_GE(r.total_inverse_risk, 4.0);
    EXPECT_NEAR(r.nonminv_area, 4.0, 1e-12);
    EXPECT_LE(r.sup_error, 2.0 / D + 1e-12);
  }
}

TEST(InverseRisk, TotalDominatesForwardAndIsDeterministic) {
  const Dataset d = sample_dataset(swirl_truth(), 2000, 1e-2, 3);
  const auto est = InvertibleEstimator::fit(d, {10, 1.0, 2});
  RiskOptions opt;
  opt.samples = 5000;
  opt.seed = 9;
  const RiskReport a = inverse_risk(est, swirl_truth(), opt);
  const RiskReport b = inverse_risk(est, swirl_truth(), opt);
  EXPECT_GE(a.total_inverse_risk, a.forward_l2);
  EXPECT_EQ(a.csv_row(), b.csv_row());
  EXPECT_EQ(a.to_kv(), b.to_kv());
  opt.inverse_sampling = InverseSampling::TruthImage;
  EXPECT_GE(inverse_risk(est, swirl_truth(), opt).total_inverse_risk, 0.0);
}

TEST(InverseRisk, TruthWithoutInverseThrows) {
  const PlanarMap f{[](Point2 x) { return x; }};
  EXPECT_THROW(inverse_risk(f.eval, f.eval, f), std::invalid_argument);
}

TEST(InverseRisk, IdentityPipelineIsExactlyZero) {
  const auto est = InvertibleEstimator::from_pilot(identity_map(), 4);
  RiskOptions opt;
  opt.samples = 20000;
  const RiskReport r = inverse_risk(est, identity_map(), opt);
  EXPECT_EQ(r.total_inverse_risk, 0.0);
  EXPECT_EQ(r.nonminv_area, 0.0);
  EXPECT_EQ(r.sup_error, 0.0);
}

TEST(SupNorm, Examples) {
  const auto id = identity_map();
  EXPECT_EQ(sup_norm_error(id.eval, id.eval, 11), 0.0);
  EXPECT_NEAR(sup_norm_error(shifted_identity(0.1).eval, id.eval, 11), 0.1, 1e-15);
  EXPECT_LE(sup_norm_error(sawtooth_estimator(100).eval, id.eval, 1001), 0.02);
  EXPECT_THROW(sup_norm_error(id.eval, id.eval, 1), std::invalid_argument);
}

TEST(LevelsetDiag, IdentityAndLinear) {
  const std::vector<std::pair<double, double>> pairs{{-0.5, 0.2}, {0.1, 0.6}, {-0.9, 0.9}};
  const auto id = levelset_lipschitz_diag(identity_map(), 1, pairs, 201);
  EXPECT_NEAR(id.max_ratio, 1.0, 1e-9);
  EXPECT_FALSE(id.inconsistent);
  // Level lines of f1 = 0.5 x1 + 0.25 x2 for |y| <= 0.25 run from the bottom edge to the top
  // edge. The farthest point is an endpoint, which slides along the edge by dy / 0.5.
  const PlanarMap lin = affine_map(0.5, 0.25, 0, 1);
  const std::vector<std::pair<double, double>> inner{{-0.2, 0.1}, {0.0, 0.25}};
  const auto l = levelset_lipschitz_diag(lin, 1, inner, 401);
  EXPECT_NEAR(l.max_ratio, 2.0, 1e-9);
  const std::vector<std::pair<double, double>> close{{0.1, 0.12}};
  EXPECT_THROW(levelset_lipschitz_diag(identity_map(), 1, close, 51), std::invalid_argument);
}

TEST(LevelsetDiag, SwirlRatioStableUnderRefinement) {
  const std::vector<std::pair<double, double>> pairs{{-0.6, -0.3}, {-0.2, 0.2}, {0.3, 0.7}};
  const auto coarse = levelset_lipschitz_diag(swirl_truth(), 2, pairs, 201);
  const auto fine = levelset_lipschitz_diag(swirl_truth(), 2, pairs, 401);
  EXPECT_TRUE(std::isfinite(coarse.max_ratio));
  EXPECT_NEAR(fine.max_ratio, coarse.max_ratio, 0.2 * coarse.max_ratio);
}

}  // namespace
}  // namespace invreg
