#include "invreg/rotation.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace invreg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

void require_valid(const RotationParams& p) {
  if (!p.valid) {
    throw std::domain_error("rotation parameters violate 0 < theta1 < ... < theta4 < 2pi");
  }
}

}  // namespace

RotationParams RotationParams::identity() {
  return {0.0, {kPi / 4.0, 3.0 * kPi / 4.0, 5.0 * kPi / 4.0, 7.0 * kPi / 4.0}, true};
}

bool RotationParams::is_identity() const {
  if (!valid) {
    return false;
  }
  const auto id = identity();
  const double dd = std::min(theta_dagger, kTwoPi - theta_dagger);
  if (dd > kGeomTol) {
    return false;
  }
  for (std::size_t j = 0; j < 4; ++j) {
    if (std::abs(theta[j] - id.theta[j]) > kGeomTol) {
      return false;
    }
  }
  return true;
}

RotationParams corner_angles(const std::array<Point2, 4>& corner_images) {
  std::array<double, 4> a{};
  for (std::size_t j = 0; j < 4; ++j) {
    const Point2 z = omega(corner_images[j]);
    if (z.x1 == 0.0 && z.x2 == 0.0) {
      throw std::domain_error("corner_angles: a corner image is the origin");
    }
    a[j] = theta_angle(z);
  }
  RotationParams p;
  p.theta_dagger = wrap(wrap(kTwoPi - a[0]) + 0.5 * wrap(a[0] - a[3]));
  for (std::size_t j = 0; j < 4; ++j) {
    p.theta[j] = wrap(a[j] + p.theta_dagger);
  }
  p.valid = 0.0 < p.theta[0] && p.theta[0] < p.theta[1] && p.theta[1] < p.theta[2] && p.theta[2] < p.theta[3] &&
            p.theta[3] < kTwoPi;
  return p;
}

double tau(double t, const RotationParams& p) {
  require_valid(p);
  const auto [t1, t2, t3, t4] = p.theta;
  if (t < t1) {
    return kPi * (t / (4.0 * t1));
  }
  if (t < t2) {
    return kPi * (t / (2.0 * t2 - 2.0 * t1) + (t2 - 3.0 * t1) / (4.0 * t2 - 4.0 * t1));
  }
  if (t < t3) {
    return kPi * (t / (2.0 * t3 - 2.0 * t2) + (3.0 * t3 - 5.0 * t2) / (4.0 * t3 - 4.0 * t2));
  }
  if (t < t4) {
    return kPi * (t / (2.0 * t4 - 2.0 * t3) + (5.0 * t4 - 7.0 * t3) / (4.0 * t4 - 4.0 * t3));
  }
  return kPi * (t / (8.0 * kPi - 4.0 * t4) + (7.0 * kPi - 4.0 * t4) / (4.0 * kPi - 2.0 * t4));
}

double tau_inv(double s, const RotationParams& p) {
  require_valid(p);
  const std::array<double, 6> xs{0.0, p.theta[0], p.theta[1], p.theta[2], p.theta[3], kTwoPi};
  const std::array<double, 6> ys{0.0, kPi / 4.0, 3.0 * kPi / 4.0, 5.0 * kPi / 4.0, 7.0 * kPi / 4.0, kTwoPi};
  std::size_t b = 0;
  while (b < 4 && s >= ys[b + 1]) {
    ++b;
  }
  return xs[b] + (s - ys[b]) * (xs[b + 1] - xs[b]) / (ys[b + 1] - ys[b]);
}

Point2 rotation_R(Point2 z, const RotationParams& p) {
  require_valid(p);
  const double r = norm2(z);
  if (r == 0.0) {
    return {0.0, 0.0};
  }
  return polar_v(r, tau(wrap(theta_angle(z) + p.theta_dagger), p));
}

Point2 rotation_R_inv(Point2 z, const RotationParams& p) {
  require_valid(p);
  const double r = norm2(z);
  if (r == 0.0) {
    return {0.0, 0.0};
  }
  return polar_v(r, wrap(tau_inv(theta_angle(z), p) - p.theta_dagger));
}

Point2 rho(Point2 x, const RotationParams& p) { return omega_inv(rotation_R(omega(x), p)); }

Point2 rho_inv(Point2 x, const RotationParams& p) { return omega_inv(rotation_R_inv(omega(x), p)); }

CoherentRotation::CoherentRotation(const RotationParams& p) : params_(p) {
  if (!p.valid) {
    kind_ = Kind::Degenerate;
  } else if (p.is_identity()) {
    kind_ = Kind::Identity;
  } else {
    kind_ = Kind::General;
  }
}

CoherentRotation CoherentRotation::from_corner_images(const std::array<Point2, 4>& images) {
  return CoherentRotation(corner_angles(images));
}

CoherentRotation CoherentRotation::exact(const PlanarMap& f) {
  std::array<Point2, 4> img{};
  for (std::size_t j = 0; j < 4; ++j) {
    img[j] = f(kCorners[j]);
  }
  return from_corner_images(img);
}

Point2 CoherentRotation::forward(Point2 x) const {
  switch (kind_) {
    case Kind::Identity:
      return x;
    case Kind::General:
      return rho(x, params_);
    case Kind::Degenerate:
      break;
  }
  throw std::domain_error("CoherentRotation::forward: rotation is degenerate");
}

Point2 CoherentRotation::inverse(Point2 x) const {
  switch (kind_) {
    case Kind::Identity:
      return x;
    case Kind::General:
      return rho_inv(x, params_);
    case Kind::Degenerate:
      break;
  }
  return {0.0, 0.0};
}

PlanarMap CoherentRotation::as_map() const {
  const CoherentRotation self = *this;
  PlanarMap f;
  f.eval = [self](Point2 x) { return self.forward(x); };
  if (!degenerate()) {
    f.inverse = [self](Point2 y) { return self.inverse(y); };
  }
  return f;
}

std::string CoherentRotation::dump() const {
  const char* kind = kind_ == Kind::Identity ? "identity" : kind_ == Kind::General ? "general" : "degenerate";
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "kind=%s\nvalid=%d\ntheta_dagger=%.17g\ntheta1=%.17g\ntheta2=%.17g\ntheta3=%.17g\ntheta4=%.17g\n", kind,
                params_.valid ? 1 : 0, params_.theta_dagger, params_.theta[0], params_.theta[1], params_.theta[2],
                params_.theta[3]);
  return buf;
}

CoherentRotation estimate_rotation(const PlanarMap& pilot) {
  std::array<Point2, 4> img{};
  for (std::size_t j = 0; j < 4; ++j) {
    img[j] = pilot(kCorners[j]);
    if (omega(img[j]) == Point2{0.0, 0.0}) {
      return CoherentRotation(RotationParams{});
    }
  }
  return CoherentRotation::from_corner_images(img);
}

}  // namespace invreg
