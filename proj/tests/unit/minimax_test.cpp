#include "invreg/minimax.hpp"

#include <gtest/gtest.h>

#include <bitset>
#include <cmath>

namespace invreg {
namespace {

int brute_distance(const PackingCode& c, std::size_t a, std::size_t b) {
  int d = 0;
  for (int i = 0; i < c.N; ++i) {
    d += c.bit(a, i) != c.bit(b, i);
  }
  return d;
}

TEST(VgCode, SmallLengths) {
  for (const auto& [N, words, dist] : {std::tuple{8, 2U, 1}, std::tuple{16, 4U, 2}}) {
    const PackingCode c = vg_code(N, 1);
    EXPECT_TRUE(c.verified);
    EXPECT_FALSE(c.shortfall);
    EXPECT_GE(c.words.size(), words);
    EXPECT_EQ(c.required_distance, dist);
    for (std::size_t a = 0; a < c.words.size(); ++a) {
      for (std::size_t b = a + 1; b < c.words.size(); ++b) {
        EXPECT_GE(brute_distance(c, a, b), dist);
      }
    }
  }
  EXPECT_THROW(vg_code(7, 0), std::invalid_argument);
}

TEST(VgCode, ContainsZeroWordAndIsDeterministic) {
  for (const int N : {8, 25, 64, 100}) {
    const PackingCode c = vg_code(N, 3);
    for (std::size_t i = 0; i < static_cast<std::size_t>(N); ++i) {
      EXPECT_FALSE(c.bit(0, static_cast<int>(i)));
    }
    EXPECT_EQ(c.words, vg_code(N, 3).words);
    EXPECT_GE(c.min_hamming, c.required_distance);
  }
}

TEST(VgCode, CapIsFlaggedAsShortfall) {
  const PackingCode c = vg_code(100, 0, 64);
  EXPECT_EQ(c.words.size(), 64U);
  EXPECT_TRUE(c.shortfall);
  EXPECT_TRUE(c.verified);
}

TEST(VgCode, VerifyCatchesCloseWords) {
  PackingCode c = vg_code(16, 2);
  ASSERT_GE(c.words.size(), 2U);
  c.words[1] = c.words[0];
  EXPECT_FALSE(verify_code(c));
}

TEST(VgCode, HexDump) {
  PackingCode c;
  c.N = 8;
  c.words = {{0x00}, {0xa5}};
  EXPECT_EQ(code_hex(c), "00\na5\n");
}

TEST(Hamming, CountsBits) {
  EXPECT_EQ(hamming({0b1011}, {0b0001}), 2);
  EXPECT_EQ(hamming({~0ULL, 1}, {0, 0}), 65);
}

TEST(Separation, SingleBump) {
  const double phi_norm = 2.0 / 3.0;
  EXPECT_DOUBLE_EQ(bump_mass(3, 7), phi_norm / (9.0 * 49.0));
  std::vector<std::uint8_t> t(9, 0);
  const BumpParams zero(3, 7, t);
  t[4] = 1;
  const BumpParams one(3, 7, t);
  EXPECT_EQ(separation_l2(zero, zero), 0.0);
  EXPECT_NEAR(separation_l2(zero, one), phi_norm / (9.0 * 49.0), 1e-6);
  EXPECT_THROW(separation_l2(zero, BumpParams::zeros(3, 8)), std::invalid_argument);
}

TEST(Separation, AdditiveOverDisjointBumps) {
  const int m = 4;
  const int M = 9;
  const double mass = bump_mass(m, M);
  double lo = 1e9;
  double hi = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const BumpParams p = BumpParams::random(m, M, 2 * s);
    const BumpParams q = BumpParams::random(m, M, 2 * s + 1);
    int h = 0;
    for (std::size_t k = 0; k < p.theta().size(); ++k) {
      h += p.theta()[k] != q.theta()[k];
    }
    if (h == 0) {
      continue;
    }
    const double ratio = separation_l2(p, q) / h;
    EXPECT_NEAR(ratio, mass, 1e-6);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  EXPECT_LT((hi - lo) / lo, 0.01);
}

TEST(Kl, ZeroOffsetAndSymmetry) {
  const auto id = [](Point2 x) { return x; };
  const auto off = [](Point2 x) { return Point2{x.x1 + 0.05, x.x2}; };
  const auto law = CovariateLaw::uniform();
  EXPECT_EQ(kl_gaussian_model(id, id, 100, 0.1, law, 1000, 0).value, 0.0);
  const auto k = kl_gaussian_model(off, id, 100, 0.1, law, 1000, 0);
  EXPECT_NEAR(k.value, 100 * 0.05 * 0.05 / (2 * 0.1), 1e-12);
  EXPECT_THROW(kl_gaussian_model(id, id, 100, 0.0, law, 10, 0), std::invalid_argument);

  const PlanarMap f = family_map(BumpParams::random(3, 7, 1), BumpParams::random(3, 7, 2));
  const PlanarMap g = family_map(BumpParams::random(3, 7, 3), BumpParams::random(3, 7, 4));
  const auto fg = kl_gaussian_model(f.eval, g.eval, 500, 0.01, law, 50000, 5);
  const auto gf = kl_gaussian_model(g.eval, f.eval, 500, 0.01, law, 50000, 5);
  EXPECT_NEAR(fg.value, gf.value, 1e-9 * fg.value);
}

TEST(Kl, OneBumpClosedForm) {
  // One differing bump: KL = n / (2 sigma2) * (1/4) * mass, uniform density 1/4 on I^2.
  for (const int m : {2, 4, 8}) {
    const int M = 2 * m + 1;
    std::vector<std::uint8_t> t(static_cast<std::size_t>(m * m), 0);
    t[0] = 1;
    const PlanarMap f = family_map(BumpParams(m, M, t), BumpParams::zeros(m, M));
    const double kl = kl_gaussian_uniform(f.eval, identity_map().eval, 1000, 0.01, 200 * m);
    EXPECT_NEAR(kl, 1000 / (2 * 0.01) * 0.25 * bump_mass(m, M), 1e-4 * kl);
  }
}

TEST(LowerBound, ReportFields) {
  const BoundReport r = lower_bound_report(4096, 1e-3, 0);
  EXPECT_EQ(r.m, 8);
  EXPECT_EQ(r.amplitude, 17);
  EXPECT_GT(r.alpha_sep, 0.0);
  EXPECT_GE(r.min_hamming, 8);
  EXPECT_NEAR(r.rate_reference, 1.0 / 64.0, 1e-15);
  EXPECT_EQ(r.beta_in_range, r.beta_kl > 0 && r.beta_kl < 0.125);
  EXPECT_FALSE(r.degenerate);
  EXPECT_THROW(lower_bound_report(4, 1e-3, 0), std::invalid_argument);
  EXPECT_THROW(lower_bound_report(4096, 0.0, 0), std::invalid_argument);
}

TEST(LowerBound, AlphaTracksRate) {
  std::vector<double> lm;
  std::vector<double> la;
  double lo = 1e9;
  double hi = 0.0;
  for (int e = 8; e <= 16; ++e) {
    const BoundReport r = lower_bound_report(std::size_t{1} << e, 1e-3, 0);
    const double ratio = r.alpha_sep / r.rate_reference;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    lm.push_back(std::log(r.m));
    la.push_back(std::log(r.alpha_sep));
  }
  EXPECT_LT(hi / lo, 10.0);
  const double slope = (la.back() - la.front()) / (lm.back() - lm.front());
  EXPECT_NEAR(slope, -2.0, 0.2);
}

}  // namespace
}  // namespace invreg
