#include "invreg/pilot.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "invreg/rng.hpp"

namespace invreg {
namespace {

TEST(Clip, Examples) {
  EXPECT_EQ(clip_to_square({2, 0.5}), (Point2{1, 0.5}));
  EXPECT_EQ(clip_to_square({-3, -3}), (Point2{-1, -1}));
}

TEST(Knn, KEqualsOneReturnsSampleResponse) {
  const Dataset d = sample_dataset(swirl_truth(), 2000, 1e-2, 1);
  const KnnRegressor knn(d, 1);
  for (std::size_t i = 0; i < d.n(); i += 37) {
    EXPECT_EQ(knn.predict(d.x[i]), clip_to_square(d.y[i]));
  }
}

TEST(Knn, KEqualsNIsClippedMean) {
  const Dataset d = sample_dataset(identity_map(), 300, 0.5, 2);
  Point2 mean{0, 0};
  for (const Point2 y : d.y) {
    mean += y;
  }
  mean = (1.0 / static_cast<double>(d.n())) * mean;
  const KnnRegressor knn(d, d.n());
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const Point2 p = knn.predict(rng.uniform_square());
    EXPECT_NEAR(p.x1, clip_to_square(mean).x1, 1e-12);
    EXPECT_NEAR(p.x2, clip_to_square(mean).x2, 1e-12);
  }
}

TEST(Knn, MatchesBruteForce) {
  const Dataset d = sample_dataset(identity_map(), 3000, 0.0, 4);
  const std::size_t k = 10;
  const KnnRegressor knn(d, k);
  Rng rng(5);
  for (int q = 0; q < 200; ++q) {
    const Point2 x{rng.uniform(-1.3, 1.3), rng.uniform(-1.3, 1.3)};
    std::vector<std::size_t> idx(d.n());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      idx[i] = i;
    }
    std::partial_sort(idx.begin(), idx.begin() + static_cast<long>(k), idx.end(), [&](std::size_t a, std::size_t b) {
      const Point2 da = d.x[a] - x;
      const Point2 db = d.x[b] - x;
      const double ra = da.x1 * da.x1 + da.x2 * da.x2;
      const double rb = db.x1 * db.x1 + db.x2 * db.x2;
      return ra < rb || (ra == rb && a < b);
    });
    idx.resize(k);
    EXPECT_EQ(knn.neighbors(x), idx);
  }
}

TEST(Knn, TiesGoToLowestIndex) {
  Dataset d;
  d.x = {{0.5, 0}, {-0.5, 0}, {0, 0.5}};
  d.y = {{1, 1}, {-1, -1}, {0, 0}};
  const KnnRegressor knn(d, 1);
  EXPECT_EQ(knn.neighbors({0, 0}), std::vector<std::size_t>{0});
}

TEST(Knn, OutputAlwaysInSquare) {
  const Dataset d = sample_dataset(swirl_truth(), 1000, 0.5, 6);
  const PlanarMap f = knn_fit(d, 3);
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const Point2 q{rng.uniform(-3, 3), rng.uniform(-3, 3)};
    EXPECT_TRUE(in_unit_square(f(q)));
  }
}

TEST(Knn, RejectsBadArguments) {
  EXPECT_THROW(KnnRegressor(Dataset{}, 1), std::invalid_argument);
  const Dataset d = sample_dataset(identity_map(), 5, 0.0, 0);
  EXPECT_THROW(KnnRegressor(d, 0), std::invalid_argument);
  EXPECT_THROW(KnnRegressor(d, 6), std::invalid_argument);
}

TEST(Knn, SupErrorShrinksWithNOnNoiselessIdentity) {
  double prev = 1e9;
  for (const std::size_t n : {1000U, 10000U, 100000U}) {
    const PlanarMap f = knn_fit(sample_dataset(identity_map(), n, 0.0, 8), 10);
    double sup = 0.0;
    for (int i = 0; i < 101; ++i) {
      for (int j = 0; j < 101; ++j) {
        const Point2 x{-0.98 + 1.96 * i / 100, -0.98 + 1.96 * j / 100};
        sup = std::max(sup, dist_inf(f(x), x));
      }
    }
    EXPECT_LT(sup, prev) << "n=" << n;
    prev = sup;
  }
}

TEST(Sawtooth, SupErrorBoundedByToothWidth) {
  for (const int D : {1, 10, 100, 1000}) {
    double sup = 0.0;
    for (int i = 0; i <= 100000; ++i) {
      const double x2 = -1.0 + 2.0 * i / 100000;
      sup = std::max(sup, std::abs(sawtooth_value(D, x2) - x2));
    }
    EXPECT_LE(sup, 2.0 / D + 1e-12) << "D=" << D;
  }
}

TEST(Sawtooth, ToothStartIsFixed) {
  const int D = 10;
  const PlanarMap f = sawtooth_estimator(D);
  for (int m = 0; m < D; ++m) {
    const double d = -1.0 + 2.0 * m / D;
    const Point2 y = f({0.3, d});
    EXPECT_DOUBLE_EQ(y.x1, 0.3);
    EXPECT_NEAR(y.x2, d, 1e-15);
  }
  EXPECT_THROW(sawtooth_estimator(0), std::invalid_argument);
}

TEST(Sawtooth, InteriorLevelsHaveThreePreimagesPerTooth) {
  const int D = 10;
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    const double y2 = rng.uniform(-0.999, 0.999);
    const auto pre = sawtooth_preimages(D, y2);
    EXPECT_GE(pre.size(), 3U);
    for (const double x2 : pre) {
      EXPECT_NEAR(sawtooth_value(D, x2), y2, 1e-12);
    }
    EXPECT_EQ(sawtooth_inverse(D)({0.1, y2}), kNonUniqueInverse);
  }
}

}  // namespace
}  // namespace invreg
