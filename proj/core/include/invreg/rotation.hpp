#pragma once

// Coherent rotation rho = omega_inv o R o omega. R keeps the radius and warps
// the angle with a piecewise-linear tau chosen so that the images of the four
// corners of I^2 are carried back onto the corners.

#include <array>
#include <string>

#include "invreg/maps.hpp"

namespace invreg {

/// Corners x~1..x~4 = (1,1), (1,-1), (-1,-1), (-1,1).
inline constexpr std::array<Point2, 4> kCorners{{{1.0, 1.0}, {1.0, -1.0}, {-1.0, -1.0}, {-1.0, 1.0}}};

struct RotationParams {
  double theta_dagger = 0.0;
  std::array<double, 4> theta{};
  bool valid = false;

  static RotationParams identity();
  /// Within kGeomTol of the identity parameters (theta_dagger compared on the circle).
  bool is_identity() const;
};

/// Angles from the images of kCorners under f. Throws std::domain_error if some omega-image is 0.
RotationParams corner_angles(const std::array<Point2, 4>& corner_images);

/// Five-branch piecewise-linear warp of [0, 2pi] with tau(theta_j) = (2j - 1) pi / 4.
/// Both throw std::domain_error for invalid params.
double tau(double theta, const RotationParams& p);
double tau_inv(double theta, const RotationParams& p);

Point2 rotation_R(Point2 z, const RotationParams& p);
Point2 rotation_R_inv(Point2 z, const RotationParams& p);

Point2 rho(Point2 x, const RotationParams& p);
Point2 rho_inv(Point2 x, const RotationParams& p);

class CoherentRotation {
 public:
  enum class Kind { Identity, General, Degenerate };

  /// Identity-equivalent params collapse to the exact identity; invalid ones to the degenerate
  /// rotation, whose inverse is constantly 0.
  explicit CoherentRotation(const RotationParams& p);

  static CoherentRotation identity() { return CoherentRotation(RotationParams::identity()); }
  static CoherentRotation from_corner_images(const std::array<Point2, 4>& images);
  static CoherentRotation exact(const PlanarMap& f);

  Kind kind() const { return kind_; }
  bool degenerate() const { return kind_ == Kind::Degenerate; }
  const RotationParams& params() const { return params_; }

  Point2 forward(Point2 x) const;
  Point2 inverse(Point2 x) const;
  PlanarMap as_map() const;

  /// key=value lines.
  std::string dump() const;

 private:
  RotationParams params_;
  Kind kind_;
};

/// Rotation from zeta_j = omega(pilot(x~j)). Never throws: a zero corner image or a broken
/// ordering yields the degenerate rotation.
CoherentRotation estimate_rotation(const PlanarMap& pilot);

}  // namespace invreg
