#include "invreg/geom.hpp"

#include <limits>

namespace invreg {

namespace {

bool on_segment(Point2 p, Point2 a, Point2 b) {
  if (orient(a, b, p) != 0) {
    return false;
  }
  return p.x1 >= std::min(a.x1, b.x1) - kGeomTol && p.x1 <= std::max(a.x1, b.x1) + kGeomTol &&
         p.x2 >= std::min(a.x2, b.x2) - kGeomTol && p.x2 <= std::max(a.x2, b.x2) + kGeomTol;
}

bool near(Point2 a, Point2 b) { return dist_inf(a, b) <= kGeomTol; }

}  // namespace

int orient(Point2 a, Point2 b, Point2 c) {
  const double v = orient_value(a, b, c);
  if (v > kGeomTol) {
    return 1;
  }
  if (v < -kGeomTol) {
    return -1;
  }
  return 0;
}

bool segments_intersect(Point2 p1, Point2 p2, Point2 q1, Point2 q2) {
  const int o1 = orient(p1, p2, q1);
  const int o2 = orient(p1, p2, q2);
  const int o3 = orient(q1, q2, p1);
  const int o4 = orient(q1, q2, p2);
  if (o1 * o2 < 0 && o3 * o4 < 0) {
    return true;
  }
  return (o1 == 0 && on_segment(q1, p1, p2)) || (o2 == 0 && on_segment(q2, p1, p2)) ||
         (o3 == 0 && on_segment(p1, q1, q2)) || (o4 == 0 && on_segment(p2, q1, q2));
}

bool segments_cross_properly(Point2 p1, Point2 p2, Point2 q1, Point2 q2) {
  return orient(p1, p2, q1) * orient(p1, p2, q2) < 0 && orient(q1, q2, p1) * orient(q1, q2, p2) < 0;
}

bool quad_is_degenerate(const Quad& q) {
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      if (near(q.v[i], q.v[j])) {
        return true;
      }
    }
  }
  return false;
}

bool quad_is_twisted(const Quad& q) {
  if (quad_is_degenerate(q)) {
    return false;
  }
  const auto& v = q.v;
  return segments_cross_properly(v[0], v[1], v[2], v[3]) ||
         segments_cross_properly(v[1], v[2], v[3], v[0]);
}

std::pair<double, double> barycentric_coords(Point2 p, const Triangle& t) {
  const Point2 e1 = t.a - t.c;
  const Point2 e2 = t.b - t.c;
  const double det = cross(e1, e2);
  if (std::abs(det) <= kGeomTol) {
    throw DegenerateTriangleError("barycentric_coords: triangle has zero area");
  }
  const Point2 d = p - t.c;
  return {cross(d, e2) / det, cross(e1, d) / det};
}

std::optional<std::pair<double, double>> barycentric_in_triangle(Point2 p, const Triangle& t) {
  const auto [a1, a2] = barycentric_coords(p, t);
  if (a1 >= -kGeomTol && a2 >= -kGeomTol && a1 + a2 <= 1.0 + kGeomTol) {
    return std::pair{a1, a2};
  }
  return std::nullopt;
}

bool point_in_triangle(Point2 p, const Triangle& t) {
  if (std::abs(orient_value(t.a, t.b, t.c)) <= kGeomTol) {
    return on_segment(p, t.a, t.b) || on_segment(p, t.b, t.c) || on_segment(p, t.c, t.a);
  }
  const int o1 = orient(t.a, t.b, p);
  const int o2 = orient(t.b, t.c, p);
  const int o3 = orient(t.c, t.a, p);
  const bool has_neg = o1 < 0 || o2 < 0 || o3 < 0;
  const bool has_pos = o1 > 0 || o2 > 0 || o3 > 0;
  return !(has_neg && has_pos);
}

bool point_in_quad(Point2 p, const Quad& q) {
  if (quad_is_twisted(q)) {
    throw TwistedQuadError("point_in_quad: quadrilateral boundary self-crosses");
  }
  const auto& v = q.v;
  return point_in_triangle(p, {v[0], v[1], v[2]}) || point_in_triangle(p, {v[0], v[2], v[3]});
}

int winding_number(Point2 p, const Quad& q) {
  int wn = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    const Point2 a = q.v[i];
    const Point2 b = q.v[(i + 1) % 4];
    if (on_segment(p, a, b)) {
      return 0;
    }
    if (a.x2 <= p.x2) {
      if (b.x2 > p.x2 && orient_value(a, b, p) > 0) {
        ++wn;
      }
    } else if (b.x2 <= p.x2 && orient_value(a, b, p) < 0) {
      --wn;
    }
  }
  return wn;
}

double polygon_area(std::span<const Point2> vertices) {
  if (vertices.size() < 3) {
    throw std::invalid_argument("polygon_area: need at least 3 vertices");
  }
  double twice = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    twice += cross(vertices[i], vertices[(i + 1) % vertices.size()]);
  }
  return std::abs(twice) / 2.0;
}

namespace {

double directed_hausdorff(std::span<const Point2> from, std::span<const Point2> to) {
  double worst = 0.0;
  for (const Point2 p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point2 q : to) {
      const Point2 d = p - q;
      best = std::min(best, d.x1 * d.x1 + d.x2 * d.x2);
      if (best <= worst) {
        break;  // cannot raise the running maximum
      }
    }
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

}  // namespace

double hausdorff(std::span<const Point2> a, std::span<const Point2> b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("hausdorff: point sets must be non-empty");
  }
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

}  // namespace invreg
