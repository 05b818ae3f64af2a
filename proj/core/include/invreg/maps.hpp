#pragma once

// Planar maps on I^2 = [-1,1]^2: the square/disk transform omega, polar
// helpers, the swirl test map, the bump family xi_theta used for lower
// bounds, a grid-based invertibility certifier and Lipschitz probes.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "invreg/geom.hpp"

namespace invreg {

using MapFn = std::function<Point2(Point2)>;
using ScalarFn = std::function<double(Point2)>;

/// Returned by every generalized inverse when a preimage is missing or not unique.
inline constexpr Point2 kNonUniqueInverse{2.0, 2.0};

struct PlanarMap {
  MapFn eval;
  std::optional<MapFn> inverse;
  std::optional<double> lipschitz_bound;

  Point2 operator()(Point2 x) const { return eval(x); }

  ScalarFn component(int j) const;
};

PlanarMap identity_map();

/// x -> A x + b restricted to I^2. The inverse is attached when det(A) != 0.
PlanarMap affine_map(double a11, double a12, double a21, double a22, Point2 b = {});

double wrap(double z);

/// (||x||_inf / ||x||_2) x; omega(0) = 0.
Point2 omega(Point2 x);

/// (||y||_2 / ||y||_inf) y; omega_inv(0) = 0.
Point2 omega_inv(Point2 y);

/// Angle theta in [0, 2pi) with (sin theta, cos theta) = z / ||z||. Throws std::domain_error for z = 0.
double theta_angle(Point2 z);

/// (r sin theta, r cos theta).
Point2 polar_v(double r, double theta);

/// x -> omega_inv(v(||omega(x)||^|sin a|, a)) with a the angle of omega(x). Fixes every ray
/// through the origin, so it also fixes the corners of I^2. The attached inverse is exact off
/// the x2-axis; on that axis the map collapses each half-ray and the inverse picks an endpoint.
PlanarMap swirl_truth();

/// 1 - ||x||_inf inside I^2, 0 outside.
double pyramid_phi(Point2 x);

class BumpParams {
 public:
  /// theta is row-major m x m, theta[i1 * m + i2] for grid point (t_i1, t_i2). Throws
  /// std::invalid_argument unless M > 2m and every entry is 0 or 1.
  BumpParams(int m, int M, std::vector<std::uint8_t> theta);

  static BumpParams zeros(int m, int M);
  static BumpParams random(int m, int M, std::uint64_t seed);

  int m() const { return m_; }
  int M() const { return M_; }
  const std::vector<std::uint8_t>& theta() const { return theta_; }
  std::uint8_t at(int i1, int i2) const { return theta_[static_cast<std::size_t>(i1 * m_ + i2)]; }

  /// Cell center t_i = -1 + (2i + 1)/m, i = 0..m-1.
  double grid_point(int i) const { return -1.0 + (2.0 * i + 1.0) / m_; }

 private:
  int m_;
  int M_;
  std::vector<std::uint8_t> theta_;
};

/// sum over active cells of Phi(m (x - t)) / M. Cells have disjoint supports.
double chi_theta(Point2 x, const BumpParams& p);

/// x_k + chi_theta(x), k in {1, 2}.
ScalarFn xi_theta(int k, const BumpParams& p);

/// (xi with k=1 from p1, xi with k=2 from p2). The inverse is solved by fixed-point iteration
/// (the bump perturbation is an m/M < 1/2 contraction).
PlanarMap family_map(const BumpParams& p1, const BumpParams& p2);

struct InvertibilityReport {
  int grid_resolution = 0;
  int tested_outputs = 0;
  int unique_count = 0;
  int missing_count = 0;
  int multiple_count = 0;
  double slack = 0.0;
};

/// Default certifier outputs: the first s points of a ceil(sqrt(s))^2 cell-centered grid
/// covering (-0.95, 0.95)^2.
std::vector<Point2> certifier_outputs(int s);

/// Samples f on an r x r grid of I^2. For each output y, the nodes with ||f(x) - y||_inf <= slack
/// (slack = largest sup-difference between corners of one grid cell) are grouped into
/// 8-connected clusters; 0 clusters counts as missing, 1 as unique, more as multiple.
InvertibilityReport check_invertible_on_grid(const PlanarMap& f, int r, int s);
InvertibilityReport check_invertible_on_grid(const PlanarMap& f, int r, std::span<const Point2> outputs);

struct LipschitzEstimate {
  double forward = 0.0;  // max ||f(x) - f(x')|| / ||x - x'||
  double inverse = 0.0;  // max ||x - x'|| / ||f(x) - f(x')||, infinite if f merges two points
};

/// Random pairs in I^2: x uniform, x' = x + offset with ||offset||_inf <= max_offset, clamped to I^2.
std::vector<std::pair<Point2, Point2>> sample_pairs(std::size_t count, double max_offset, std::uint64_t seed);

/// Throws std::invalid_argument when fewer than 2 usable pairs are given.
LipschitzEstimate lipschitz_estimate(const PlanarMap& f, std::span<const std::pair<Point2, Point2>> pairs);

}  // namespace invreg
