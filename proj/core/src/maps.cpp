#include "invreg/maps.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "invreg/rng.hpp"

namespace invreg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

ScalarFn PlanarMap::component(int j) const {
  if (j != 1 && j != 2) {
    throw std::invalid_argument("PlanarMap::component: j must be 1 or 2");
  }
  MapFn f = eval;
  if (j == 1) {
    return [f](Point2 x) { return f(x).x1; };
  }
  return [f](Point2 x) { return f(x).x2; };
}

PlanarMap identity_map() {
  return {[](Point2 x) { return x; }, MapFn{[](Point2 y) { return y; }}, 1.0};
}

PlanarMap affine_map(double a11, double a12, double a21, double a22, Point2 b) {
  PlanarMap f;
  f.eval = [=](Point2 x) { return Point2{a11 * x.x1 + a12 * x.x2 + b.x1, a21 * x.x1 + a22 * x.x2 + b.x2}; };
  const double det = a11 * a22 - a12 * a21;
  if (det != 0.0) {
    f.inverse = [=](Point2 y) {
      const Point2 d = y - b;
      return Point2{(a22 * d.x1 - a12 * d.x2) / det, (-a21 * d.x1 + a11 * d.x2) / det};
    };
  }
  // Operator 2-norm from the singular values of A.
  const double s = a11 * a11 + a12 * a12 + a21 * a21 + a22 * a22;
  f.lipschitz_bound = std::sqrt((s + std::sqrt(std::max(0.0, s * s - 4.0 * det * det))) / 2.0);
  return f;
}

double wrap(double z) {
  double w = std::fmod(z, kTwoPi);
  if (w < 0.0) {
    w += kTwoPi;
  }
  // fmod of a tiny negative value can round up to exactly 2pi.
  return w >= kTwoPi ? 0.0 : w;
}

Point2 omega(Point2 x) {
  const double n2 = norm2(x);
  if (n2 == 0.0) {
    return {0.0, 0.0};
  }
  return (norm_inf(x) / n2) * x;
}

Point2 omega_inv(Point2 y) {
  const double ni = norm_inf(y);
  if (ni == 0.0) {
    return {0.0, 0.0};
  }
  return (norm2(y) / ni) * y;
}

double theta_angle(Point2 z) {
  if (z.x1 == 0.0 && z.x2 == 0.0) {
    throw std::domain_error("theta_angle: angle of the zero vector is undefined");
  }
  return wrap(std::atan2(z.x1, z.x2));
}

Point2 polar_v(double r, double theta) { return {r * std::sin(theta), r * std::cos(theta)}; }

PlanarMap swirl_truth() {
  PlanarMap f;
  f.eval = [](Point2 x) {
    const Point2 z = omega(x);
    const double r = norm2(z);
    if (r == 0.0) {
      return Point2{0.0, 0.0};
    }
    const double a = theta_angle(z);
    return omega_inv(polar_v(std::pow(r, std::abs(std::sin(a))), a));
  };
  f.inverse = [](Point2 y) {
    const Point2 z = omega(y);
    const double rp = norm2(z);
    if (rp == 0.0) {
      return Point2{0.0, 0.0};
    }
    const double a = theta_angle(z);
    const double s = std::abs(std::sin(a));
    double r = 0.0;
    if (s > 0.0) {
      r = std::pow(rp, 1.0 / s);
    } else {
      r = rp >= 1.0 ? 1.0 : 0.0;
    }
    return omega_inv(polar_v(std::min(r, 1.0), a));
  };
  return f;
}

double pyramid_phi(Point2 x) {
  const double n = norm_inf(x);
  return n < 1.0 ? 1.0 - n : 0.0;
}

BumpParams::BumpParams(int m, int M, std::vector<std::uint8_t> theta) : m_(m), M_(M), theta_(std::move(theta)) {
  if (m < 1) {
    throw std::invalid_argument("BumpParams: m must be positive");
  }
  if (M <= 2 * m) {
    throw std::invalid_argument("BumpParams: amplitude divisor M must exceed 2m");
  }
  if (theta_.size() != static_cast<std::size_t>(m) * static_cast<std::size_t>(m)) {
    throw std::invalid_argument("BumpParams: theta must have m*m entries");
  }
  for (const auto b : theta_) {
    if (b > 1) {
      throw std::invalid_argument("BumpParams: theta entries must be 0 or 1");
    }
  }
}

BumpParams BumpParams::zeros(int m, int M) {
  return {m, M, std::vector<std::uint8_t>(static_cast<std::size_t>(std::max(m, 0) * std::max(m, 0)), 0)};
}

BumpParams BumpParams::random(int m, int M, std::uint64_t seed) {
  Rng rng(seed, 0x6275);
  std::vector<std::uint8_t> theta(static_cast<std::size_t>(std::max(m, 0) * std::max(m, 0)));
  for (auto& b : theta) {
    b = static_cast<std::uint8_t>(rng.bits() & 1U);
  }
  return {m, M, std::move(theta)};
}

double chi_theta(Point2 x, const BumpParams& p) {
  if (!in_unit_square(x)) {
    return 0.0;
  }
  const int m = p.m();
  const auto cell = [m](double v) { return std::clamp(static_cast<int>(std::floor((v + 1.0) * m / 2.0)), 0, m - 1); };
  const int i1 = cell(x.x1);
  const int i2 = cell(x.x2);
  if (p.at(i1, i2) == 0) {
    return 0.0;
  }
  const Point2 u{m * (x.x1 - p.grid_point(i1)), m * (x.x2 - p.grid_point(i2))};
  return pyramid_phi(u) / p.M();
}

ScalarFn xi_theta(int k, const BumpParams& p) {
  if (k != 1 && k != 2) {
    throw std::invalid_argument("xi_theta: k must be 1 or 2");
  }
  if (k == 1) {
    return [p](Point2 x) { return x.x1 + chi_theta(x, p); };
  }
  return [p](Point2 x) { return x.x2 + chi_theta(x, p); };
}

PlanarMap family_map(const BumpParams& p1, const BumpParams& p2) {
  if (p1.m() != p2.m() || p1.M() != p2.M()) {
    throw std::invalid_argument("family_map: parameters must share m and M");
  }
  PlanarMap f;
  f.eval = [p1, p2](Point2 x) { return Point2{x.x1 + chi_theta(x, p1), x.x2 + chi_theta(x, p2)}; };
  f.inverse = [p1, p2](Point2 y) {
    Point2 x = y;
    for (int it = 0; it < 200; ++it) {
      const Point2 next{std::clamp(y.x1 - chi_theta(x, p1), -1.0, 1.0), std::clamp(y.x2 - chi_theta(x, p2), -1.0, 1.0)};
      const double step = dist_inf(next, x);
      x = next;
      if (step <= 1e-16) {
        break;
      }
    }
    return x;
  };
  // Jacobian = I + G, where each row of G has a single nonzero entry of size m/M.
  const double q = static_cast<double>(p1.m()) / p1.M();
  f.lipschitz_bound = 1.0 + std::sqrt(2.0) * q;
  return f;
}

std::vector<Point2> certifier_outputs(int s) {
  if (s < 1) {
    throw std::invalid_argument("certifier_outputs: s must be positive");
  }
  const int side = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(s))));
  std::vector<Point2> out;
  out.reserve(static_cast<std::size_t>(s));
  const double h = 1.9 / side;
  for (int i = 0; i < side && static_cast<int>(out.size()) < s; ++i) {
    for (int j = 0; j < side && static_cast<int>(out.size()) < s; ++j) {
      out.push_back({-0.95 + (i + 0.5) * h, -0.95 + (j + 0.5) * h});
    }
  }
  return out;
}

InvertibilityReport check_invertible_on_grid(const PlanarMap& f, int r, int s) {
  const auto outputs = certifier_outputs(s);
  return check_invertible_on_grid(f, r, outputs);
}

InvertibilityReport check_invertible_on_grid(const PlanarMap& f, int r, std::span<const Point2> outputs) {
  if (r < 2) {
    throw std::invalid_argument("check_invertible_on_grid: resolution must be at least 2");
  }
  const auto n = static_cast<std::size_t>(r);
  std::vector<Point2> img(n * n);
  const double h = 2.0 / (r - 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      img[i * n + j] = f({-1.0 + h * static_cast<double>(i), -1.0 + h * static_cast<double>(j)});
    }
  }
  double slack = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const std::array<Point2, 4> c{img[i * n + j], img[(i + 1) * n + j], img[i * n + j + 1], img[(i + 1) * n + j + 1]};
      for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = a + 1; b < 4; ++b) {
          slack = std::max(slack, dist_inf(c[a], c[b]));
        }
      }
    }
  }

  InvertibilityReport rep;
  rep.grid_resolution = r;
  rep.slack = slack;
  std::vector<int> label(n * n, 0);
  std::vector<std::size_t> marked;
  std::vector<std::size_t> stack;
  int stamp = 0;
  for (const Point2 y : outputs) {
    ++stamp;  // label value of "marked for this output, not yet visited"
    marked.clear();
    for (std::size_t k = 0; k < img.size(); ++k) {
      if (dist_inf(img[k], y) <= slack) {
        label[k] = stamp;
        marked.push_back(k);
      }
    }
    int clusters = 0;
    for (const std::size_t seed : marked) {
      if (label[seed] != stamp) {
        continue;
      }
      ++clusters;
      label[seed] = -stamp;
      stack.assign(1, seed);
      while (!stack.empty()) {
        const std::size_t k = stack.back();
        stack.pop_back();
        const auto i = static_cast<long>(k / n);
        const auto j = static_cast<long>(k % n);
        for (long di = -1; di <= 1; ++di) {
          for (long dj = -1; dj <= 1; ++dj) {
            const long a = i + di;
            const long b = j + dj;
            if (a < 0 || b < 0 || a >= r || b >= r) {
              continue;
            }
            const std::size_t kk = static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b);
            if (label[kk] == stamp) {
              label[kk] = -stamp;
              stack.push_back(kk);
            }
          }
        }
      }
    }
    ++rep.tested_outputs;
    if (clusters == 0) {
      ++rep.missing_count;
    } else if (clusters == 1) {
      ++rep.unique_count;
    } else {
      ++rep.multiple_count;
    }
  }
  return rep;
}

std::vector<std::pair<Point2, Point2>> sample_pairs(std::size_t count, double max_offset, std::uint64_t seed) {
  Rng rng(seed, 0x7061);
  std::vector<std::pair<Point2, Point2>> pairs;
  pairs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Point2 x = rng.uniform_square();
    const Point2 d{rng.uniform(-max_offset, max_offset), rng.uniform(-max_offset, max_offset)};
    const Point2 y{std::clamp(x.x1 + d.x1, -1.0, 1.0), std::clamp(x.x2 + d.x2, -1.0, 1.0)};
    pairs.emplace_back(x, y);
  }
  return pairs;
}

LipschitzEstimate lipschitz_estimate(const PlanarMap& f, std::span<const std::pair<Point2, Point2>> pairs) {
  LipschitzEstimate est;
  std::size_t used = 0;
  for (const auto& [a, b] : pairs) {
    const double dx = dist2(a, b);
    if (dx == 0.0) {
      continue;
    }
    ++used;
    const double dy = dist2(f(a), f(b));
    est.forward = std::max(est.forward, dy / dx);
    est.inverse = std::max(est.inverse, dy == 0.0 ? std::numeric_limits<double>::infinity() : dx / dy);
  }
  if (used < 2) {
    throw std::invalid_argument("lipschitz_estimate: need at least 2 distinct pairs");
  }
  return est;
}

}  // namespace invreg
