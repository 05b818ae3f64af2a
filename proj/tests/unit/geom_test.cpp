#include "invreg/geom.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <array>

#include "invreg/rng.hpp"

namespace invreg {
namespace {

TEST(Orient, SignOfCrossProduct) {
  EXPECT_EQ(orient({0, 0}, {1, 0}, {0, 1}), 1);
  EXPECT_EQ(orient({0, 0}, {1, 0}, {2, 0}), 0);
  EXPECT_EQ(orient({0, 0}, {0, 1}, {1, 0}), -1);
}

TEST(Orient, AntisymmetricUnderArgumentSwaps) {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const Point2 a = rng.uniform_square();
    const Point2 b = rng.uniform_square();
    const Point2 c = rng.uniform_square();
    const int o = orient(a, b, c);
    EXPECT_EQ(orient(b, a, c), -o);
    EXPECT_EQ(orient(a, c, b), -o);
    EXPECT_EQ(orient(c, b, a), -o);
  }
}

TEST(SegmentsIntersect, Cases) {
  EXPECT_TRUE(segments_intersect({0, 0}, {1, 1}, {0, 1}, {1, 0}));
  EXPECT_FALSE(segments_intersect({0, 0}, {1, 0}, {0, 1}, {1, 1}));
  EXPECT_TRUE(segments_intersect({0, 0}, {1, 0}, {1, 0}, {2, 0}));
  EXPECT_TRUE(segments_intersect({0, 0}, {2, 0}, {1, 0}, {3, 0}));  // collinear overlap
  EXPECT_FALSE(segments_intersect({0, 0}, {1, 0}, {2, 0}, {3, 0}));
  EXPECT_FALSE(segments_cross_properly({0, 0}, {1, 0}, {1, 0}, {2, 0}));
}

TEST(QuadTwist, PathOrderedSquareIsNotTwisted) {
  EXPECT_FALSE(quad_is_twisted({{{{1, 1}, {1, 0}, {0, 0}, {0, 1}}}}));
}

TEST(QuadTwist, BowTieIsTwisted) {
  const Quad q{{{{0, 0}, {1, 0}, {0, 1}, {1, 1}}}};
  // Oracle: brute force over the two pairs of opposite edges.
  bool crossing = false;
  for (int e = 0; e < 2; ++e) {
    const auto& v = q.v;
    crossing = crossing || segments_intersect(v[e], v[e + 1], v[e + 2], v[(e + 3) % 4]);
  }
  EXPECT_TRUE(crossing);
  EXPECT_TRUE(quad_is_twisted(q));
}

TEST(QuadTwist, RepeatedVertexIsDegenerateNotTwisted) {
  const Quad q{{{{0, 0}, {1, 0}, {1, 0}, {0, 1}}}};
  EXPECT_TRUE(quad_is_degenerate(q));
  EXPECT_FALSE(quad_is_twisted(q));
}

TEST(QuadTwist, InvariantUnderRotationAndReversal) {
  Rng rng(2);
  for (int i = 0; i < 500; ++i) {
    Quad q;
    for (auto& v : q.v) {
      v = rng.uniform_square();
    }
    const bool tw = quad_is_twisted(q);
    for (int r = 1; r < 4; ++r) {
      Quad rq;
      for (std::size_t k = 0; k < 4; ++k) {
        rq.v[k] = q.v[(k + static_cast<std::size_t>(r)) % 4];
      }
      EXPECT_EQ(quad_is_twisted(rq), tw);
    }
    Quad rev{{{q.v[3], q.v[2], q.v[1], q.v[0]}}};
    EXPECT_EQ(quad_is_twisted(rev), tw);
  }
}

TEST(Barycentric, ReferenceTriangle) {
  const Triangle t{{1, 0}, {0, 1}, {0, 0}};
  auto bc = barycentric_in_triangle({0.25, 0.25}, t);
  ASSERT_TRUE(bc);
  EXPECT_DOUBLE_EQ(bc->first, 0.25);
  EXPECT_DOUBLE_EQ(bc->second, 0.25);
  bc = barycentric_in_triangle({0, 0}, t);
  ASSERT_TRUE(bc);
  EXPECT_EQ(*bc, std::make_pair(0.0, 0.0));
  bc = barycentric_in_triangle({1, 0}, t);
  ASSERT_TRUE(bc);
  EXPECT_EQ(*bc, std::make_pair(1.0, 0.0));
  EXPECT_FALSE(barycentric_in_triangle({1, 1}, t));
}

TEST(Barycentric, DegenerateTriangleThrows) {
  EXPECT_THROW(barycentric_in_triangle({0, 0}, {{0, 0}, {1, 1}, {2, 2}}), DegenerateTriangleError);
}

TEST(Barycentric, ReconstructionRoundTrip) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const Triangle t{rng.uniform_square(), rng.uniform_square(), rng.uniform_square()};
    if (std::abs(orient_value(t.a, t.b, t.c)) < 1e-3) {
      continue;
    }
    const double u = rng.uniform();
    const double w = rng.uniform() * (1.0 - u);
    const Point2 p = t.c + u * (t.a - t.c) + w * (t.b - t.c);
    const auto bc = barycentric_in_triangle(p, t);
    ASSERT_TRUE(bc);
    const Point2 back = t.c + bc->first * (t.a - t.c) + bc->second * (t.b - t.c);
    EXPECT_NEAR(back.x1, p.x1, 1e-12);
    EXPECT_NEAR(back.x2, p.x2, 1e-12);
  }
}

TEST(PointInQuad, ClosedRegion) {
  const Quad sq{{{{1, 1}, {1, 0}, {0, 0}, {0, 1}}}};
  EXPECT_TRUE(point_in_quad({0.5, 0.5}, sq));
  EXPECT_FALSE(point_in_quad({5, 5}, sq));
  EXPECT_TRUE(point_in_quad({1, 0.3}, sq));
  EXPECT_THROW(point_in_quad({0.5, 0.5}, {{{{0, 0}, {1, 0}, {0, 1}, {1, 1}}}}), TwistedQuadError);
}

TEST(WindingNumber, SquareAndBowTie) {
  const Quad sq{{{{1, 1}, {1, -1}, {-1, -1}, {-1, 1}}}};  // clockwise
  EXPECT_EQ(winding_number({0, 0}, sq), -1);
  EXPECT_EQ(winding_number({3, 0}, sq), 0);
  const Quad bow{{{{0, 0}, {2, 0}, {0, 2}, {2, 2}}}};
  EXPECT_NE(winding_number({1, 0.4}, bow), 0);
  EXPECT_NE(winding_number({1, 1.6}, bow), 0);
  EXPECT_EQ(winding_number({0.2, 1.0}, bow), 0);
}

TEST(PolygonArea, Shoelace) {
  const std::array<Point2, 4> unit{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
  EXPECT_DOUBLE_EQ(polygon_area(unit), 1.0);
  const std::array<Point2, 4> big{{{1, 1}, {1, -1}, {-1, -1}, {-1, 1}}};
  EXPECT_DOUBLE_EQ(polygon_area(big), 4.0);
  const std::array<Point2, 3> line{{{0, 0}, {1, 1}, {2, 2}}};
  EXPECT_DOUBLE_EQ(polygon_area(line), 0.0);
  const std::array<Point2, 2> two{{{0, 0}, {1, 1}}};
  EXPECT_THROW(polygon_area(two), std::invalid_argument);
}

TEST(PolygonArea, DiagonalSplitOfConvexQuadAddsUp) {
  Rng rng(4);
  int checked = 0;
  while (checked < 200) {
    Quad q;
    for (auto& v : q.v) {
      v = rng.uniform_square();
    }
    if (quad_is_twisted(q) || quad_is_degenerate(q)) {
      continue;
    }
    // The v1-v3 split covers the quad only when that diagonal lies inside it.
    const bool convex = orient(q.v[0], q.v[1], q.v[2]) == orient(q.v[1], q.v[2], q.v[3]) &&
                        orient(q.v[1], q.v[2], q.v[3]) == orient(q.v[2], q.v[3], q.v[0]) &&
                        orient(q.v[2], q.v[3], q.v[0]) == orient(q.v[3], q.v[0], q.v[1]);
    if (!convex) {
      continue;
    }
    ++checked;
    const std::array<Point2, 3> t1{q.v[0], q.v[1], q.v[2]};
    const std::array<Point2, 3> t2{q.v[0], q.v[2], q.v[3]};
    EXPECT_NEAR(polygon_area(t1) + polygon_area(t2), polygon_area(q.v), 1e-12);
  }
}

TEST(Hausdorff, Examples) {
  const std::vector<Point2> a{{0, 0}};
  const std::vector<Point2> b{{3, 4}};
  EXPECT_DOUBLE_EQ(hausdorff(a, b), 5.0);
  EXPECT_DOUBLE_EQ(hausdorff(b, b), 0.0);
  const std::vector<Point2> c{{0, 0}, {1, 0}};
  EXPECT_DOUBLE_EQ(hausdorff(c, a), 1.0);
  EXPECT_THROW(hausdorff(std::vector<Point2>{}, a), std::invalid_argument);
}

TEST(Hausdorff, SymmetricAndTriangleInequality) {
  Rng rng(5);
  const auto cloud = [&rng](int n) {
    std::vector<Point2> v(static_cast<std::size_t>(n));
    for (auto& p : v) {
      p = rng.uniform_square();
    }
    return v;
  };
  for (int i = 0; i < 100; ++i) {
    const auto a = cloud(1 + i % 7);
    const auto b = cloud(1 + i % 5);
    const auto c = cloud(1 + i % 3);
    EXPECT_DOUBLE_EQ(hausdorff(a, b), hausdorff(b, a));
    EXPECT_LE(hausdorff(a, c), hausdorff(a, b) + hausdorff(b, c) + 1e-12);
  }
}

}  // namespace
}  // namespace invreg
