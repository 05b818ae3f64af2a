#pragma once

// Planar primitives used throughout the estimator: orientation tests,
// segment intersection, barycentric coordinates, containment, areas and
// Hausdorff distances. All coordinates are O(1) (the working domain is
// [-1,1]^2), so a single absolute tolerance is used for degeneracy.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace invreg {

inline constexpr double kGeomTol = 1e-12;

struct Point2 {
  double x1 = 0.0;
  double x2 = 0.0;

  constexpr Point2& operator+=(Point2 o) {
    x1 += o.x1;
    x2 += o.x2;
    return *this;
  }
  constexpr Point2& operator-=(Point2 o) {
    x1 -= o.x1;
    x2 -= o.x2;
    return *this;
  }
  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
  friend constexpr Point2 operator-(Point2 a) { return {-a.x1, -a.x2}; }
  friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x1, s * a.x2}; }
  friend constexpr Point2 operator*(Point2 a, double s) { return {s * a.x1, s * a.x2}; }
  friend constexpr bool operator==(Point2 a, Point2 b) = default;
};

inline double norm2(Point2 p) { return std::hypot(p.x1, p.x2); }
inline double norm_inf(Point2 p) { return std::max(std::abs(p.x1), std::abs(p.x2)); }
inline double dist2(Point2 a, Point2 b) { return norm2(a - b); }
inline double dist_inf(Point2 a, Point2 b) { return norm_inf(a - b); }
inline constexpr double cross(Point2 a, Point2 b) { return a.x1 * b.x2 - a.x2 * b.x1; }
inline bool is_finite(Point2 p) { return std::isfinite(p.x1) && std::isfinite(p.x2); }

/// True iff p lies in the closed square [-1,1]^2.
inline bool in_unit_square(Point2 p, double tol = 0.0) {
  return std::abs(p.x1) <= 1.0 + tol && std::abs(p.x2) <= 1.0 + tol;
}

struct Triangle {
  Point2 a;
  Point2 b;
  Point2 c;
};

/// Quadrilateral given by its boundary path v[0] -> v[1] -> v[2] -> v[3] -> v[0].
struct Quad {
  std::array<Point2, 4> v;
};

using PointSet = std::vector<Point2>;

class DegenerateTriangleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class TwistedQuadError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Signed doubled area of (a, b, c): (b - a) x (c - a).
inline double orient_value(Point2 a, Point2 b, Point2 c) { return cross(b - a, c - a); }

/// Sign of (b - a) x (c - a); values within kGeomTol count as collinear.
int orient(Point2 a, Point2 b, Point2 c);

/// Closed-segment intersection test.
bool segments_intersect(Point2 p1, Point2 p2, Point2 q1, Point2 q2);

/// Segments cross at a single interior point of both (no touching, no overlap).
bool segments_cross_properly(Point2 p1, Point2 p2, Point2 q1, Point2 q2);

/// A quad with two coincident vertices. Such quads are never reported as twisted.
bool quad_is_degenerate(const Quad& q);

/// Boundary path self-crosses: v1v2 properly crosses v3v4, or v2v3 properly crosses v4v1.
bool quad_is_twisted(const Quad& q);

/// Barycentric coordinates (a', a'') of p with respect to the triangle whose apex
/// is t.c, i.e. p = t.c + a' (t.a - t.c) + a'' (t.b - t.c). No containment check.
/// Throws DegenerateTriangleError when the triangle has (near) zero area.
std::pair<double, double> barycentric_coords(Point2 p, const Triangle& t);

/// As barycentric_coords, but returns nullopt unless p is in the closed triangle.
std::optional<std::pair<double, double>> barycentric_in_triangle(Point2 p, const Triangle& t);

/// Closed-triangle containment that also handles degenerate (segment/point) triangles.
bool point_in_triangle(Point2 p, const Triangle& t);

/// Closed-region containment using the v1-v3 diagonal split. Throws TwistedQuadError.
bool point_in_quad(Point2 p, const Quad& q);

/// Winding number of the closed path q.v around p (0 when p is on the path).
int winding_number(Point2 p, const Quad& q);

/// Unsigned shoelace area. Throws std::invalid_argument for fewer than 3 vertices.
double polygon_area(std::span<const Point2> vertices);

/// Symmetric Hausdorff distance between two finite point sets (Euclidean).
double hausdorff(std::span<const Point2> a, std::span<const Point2> b);

}  // namespace invreg
