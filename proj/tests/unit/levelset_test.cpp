#include "invreg/levelset.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "invreg/heatmap.hpp"

namespace invreg {
namespace {

TEST(LevelSet, IdentityVerticalLine) {
  const LevelSet ls = level_set(identity_map(), 1, 0.5, 201);
  ASSERT_EQ(ls.polylines.size(), 1U);
  double lo = 1.0;
  double hi = -1.0;
  for (const Point2 p : ls.points()) {
    EXPECT_NEAR(p.x1, 0.5, 1e-12);
    lo = std::min(lo, p.x2);
    hi = std::max(hi, p.x2);
  }
  EXPECT_DOUBLE_EQ(lo, -1.0);
  EXPECT_DOUBLE_EQ(hi, 1.0);
}

TEST(LevelSet, IdentityBottomEdge) {
  const LevelSet ls = level_set(identity_map(), 2, -1.0, 101);
  ASSERT_FALSE(ls.empty());
  for (const Point2 p : ls.points()) {
    EXPECT_NEAR(p.x2, -1.0, 1e-12);
  }
}

TEST(LevelSet, OutsideRangeIsEmpty) {
  EXPECT_TRUE(level_set(identity_map(), 1, 1.5, 51).empty());
  EXPECT_THROW(level_set(identity_map(), 1, 0.0, 1), std::invalid_argument);
}

TEST(LevelSet, SwirlZeroSetMatchesSignChangeOracle) {
  const PlanarMap f = swirl_truth();
  const ScalarFn f1 = f.component(1);
  const LevelSet ls = level_set(f, 1, 0.0, 401);
  ASSERT_FALSE(ls.empty());
  // Oracle: midpoints of sign changes of f1 along the rows and columns of a denser grid.
  const int r = 1601;
  const double h = 2.0 / (r - 1);
  std::vector<Point2> oracle;
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j + 1 < r; ++j) {
      const Point2 a{-1.0 + h * i, -1.0 + h * j};
      const Point2 b{a.x1, a.x2 + h};
      const Point2 c{-1.0 + h * j, -1.0 + h * i};
      const Point2 d{c.x1 + h, c.x2};
      if ((f1(a) > 0) != (f1(b) > 0)) {
        oracle.push_back(0.5 * (a + b));
      }
      if ((f1(c) > 0) != (f1(d) > 0)) {
        oracle.push_back(0.5 * (c + d));
      }
    }
  }
  ASSERT_FALSE(oracle.empty());
  EXPECT_LE(hausdorff(ls.points(), oracle), 0.02);
}

TEST(LevelSet, PolylinePointsAreNearTheLevel) {
  const PlanarMap f = swirl_truth();
  const ScalarFn f2 = f.component(2);
  for (const double y : {-0.6, -0.1, 0.3, 0.8}) {
    const LevelSet ls = level_set(f, 2, y, 201);
    ASSERT_FALSE(ls.empty());
    for (const Point2 p : ls.points()) {
      EXPECT_LE(std::abs(f2(p) - y), ls.slack + 1e-12);
    }
  }
}

TEST(Heatmap, GridOrientation) {
  const ScalarGrid g = sample_grid([](Point2 x) { return x.x1 - x.x2; }, 3);
  EXPECT_DOUBLE_EQ(g.at(0, 0), -2.0);  // (-1, 1)
  EXPECT_DOUBLE_EQ(g.at(2, 2), 2.0);   // (1, -1)
  EXPECT_DOUBLE_EQ(max_abs_diff(g, g), 0.0);
}

}  // namespace
}  // namespace invreg
