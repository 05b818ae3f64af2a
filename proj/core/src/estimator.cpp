#include "invreg/estimator.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "invreg/pilot.hpp"
#include "invreg/rng.hpp"

namespace invreg {

namespace {

constexpr double kSamePreimage = 1e-9;

void require_domain(Point2 x, const char* who) {
  if (!is_finite(x) || !in_unit_square(x)) {
    throw std::domain_error(std::string(who) + ": point outside [-1,1]^2");
  }
}

Point2 clamp_square(Point2 p) { return clip_to_square(p); }

}  // namespace

int grid_resolution(std::size_t n, double alpha_plus_beta) {
  if (n < 2) {
    throw std::invalid_argument("grid_resolution: n must be at least 2");
  }
  const double nd = static_cast<double>(n);
  const double bound = std::sqrt(nd) * std::pow(std::log(nd), -alpha_plus_beta);
  int t = 1;
  while (2.0 * t <= bound) {
    t *= 2;
  }
  return t;
}

Point2 boundary_project(Point2 x, Point2 ytilde) {
  Point2 y = ytilde;
  if (x.x1 == 1.0 || x.x1 == -1.0) {
    y.x1 = x.x1;
  }
  if (x.x2 == 1.0 || x.x2 == -1.0) {
    y.x2 = x.x2;
  }
  return y;
}

MapFn g_hat(const PlanarMap& pilot, const CoherentRotation& rotation) {
  if (rotation.degenerate()) {
    throw std::domain_error("g_hat: rotation is degenerate");
  }
  return [pilot, rotation](Point2 x) { return boundary_project(x, rotation.forward(clip_to_square(pilot(x)))); };
}

SquareGrid::SquareGrid(int t) : t_(t) {
  if (t < 1) {
    throw std::invalid_argument("SquareGrid: t must be at least 1");
  }
}

std::size_t SquareGrid::square_id(int tau1, int tau2) const {
  return static_cast<std::size_t>((tau1 + t_) * 2 * t_ + (tau2 + t_));
}

std::size_t SquareGrid::vertex_id(int a, int b) const {
  return static_cast<std::size_t>((a + t_) * (2 * t_ + 1) + (b + t_));
}

std::pair<int, int> SquareGrid::square_index(std::size_t id) const {
  const auto side = static_cast<std::size_t>(2 * t_);
  return {static_cast<int>(id / side) - t_, static_cast<int>(id % side) - t_};
}

std::pair<int, int> SquareGrid::vertex_index(std::size_t id) const {
  const auto side = static_cast<std::size_t>(2 * t_ + 1);
  return {static_cast<int>(id / side) - t_, static_cast<int>(id % side) - t_};
}

Point2 SquareGrid::vertex(std::size_t id) const {
  const auto [a, b] = vertex_index(id);
  return {coord(a), coord(b)};
}

std::array<std::size_t, 4> SquareGrid::square_vertices(int tau1, int tau2) const {
  return {vertex_id(tau1 + 1, tau2 + 1), vertex_id(tau1 + 1, tau2), vertex_id(tau1, tau2), vertex_id(tau1, tau2 + 1)};
}

std::pair<int, int> SquareGrid::locate(Point2 x) const {
  const auto axis = [this](double v) { return std::clamp(static_cast<int>(std::floor(v * t_)), -t_, t_ - 1); };
  return {axis(x.x1), axis(x.x2)};
}

QuadMesh::QuadMesh(SquareGrid grid, std::vector<Point2> vertex_images, std::vector<MeshCell> cells)
    : grid_(grid), vertex_images_(std::move(vertex_images)), cells_(std::move(cells)) {
  if (vertex_images_.size() != grid_.vertex_count() || cells_.size() != grid_.square_count()) {
    throw std::invalid_argument("QuadMesh: sizes do not match the grid");
  }
  build_index();
}

std::size_t QuadMesh::twisted_count() const {
  return static_cast<std::size_t>(std::count_if(cells_.begin(), cells_.end(), [](const MeshCell& c) { return c.twisted; }));
}

std::size_t QuadMesh::folded_count() const {
  return static_cast<std::size_t>(std::count_if(cells_.begin(), cells_.end(), [](const MeshCell& c) { return c.folded; }));
}

void QuadMesh::build_index() {
  Point2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point2 hi = -lo;
  const auto grow = [&](Point2 p) {
    lo = {std::min(lo.x1, p.x1), std::min(lo.x2, p.x2)};
    hi = {std::max(hi.x1, p.x1), std::max(hi.x2, p.x2)};
  };
  for (const Point2 p : vertex_images_) {
    grow(p);
  }
  for (const MeshCell& c : cells_) {
    grow(c.center_image);
  }
  side_ = static_cast<std::size_t>(2 * grid_.cells_per_axis());
  lo_ = lo - Point2{1e-9, 1e-9};
  width_ = std::max({hi.x1 - lo.x1, hi.x2 - lo.x2, 1e-9}) * (1.0 + 1e-9) / static_cast<double>(side_) + 1e-12;
  piece_buckets_.assign(side_ * side_, {});
  twist_buckets_.assign(side_ * side_, {});

  const auto insert = [&](std::vector<std::vector<std::size_t>>& buckets, std::size_t id, std::span<const Point2> pts) {
    Point2 a = pts.front();
    Point2 b = pts.front();
    for (const Point2 p : pts) {
      a = {std::min(a.x1, p.x1), std::min(a.x2, p.x2)};
      b = {std::max(b.x1, p.x1), std::max(b.x2, p.x2)};
    }
    const auto cell = [&](double v, double l) {
      return static_cast<std::size_t>(std::clamp((v - l) / width_, 0.0, static_cast<double>(side_ - 1)));
    };
    const double pad = 1e-9;
    for (std::size_t i = cell(a.x1 - pad, lo_.x1); i <= cell(b.x1 + pad, lo_.x1); ++i) {
      for (std::size_t j = cell(a.x2 - pad, lo_.x2); j <= cell(b.x2 + pad, lo_.x2); ++j) {
        buckets[i * side_ + j].push_back(id);
      }
    }
  };

  pieces_.clear();
  for (std::size_t ci = 0; ci < cells_.size(); ++ci) {
    const MeshCell& c = cells_[ci];
    if (c.twisted) {
      insert(twist_buckets_, ci, c.image.v);
      continue;
    }
    for (int e = 0; e < 4; ++e) {
      const Triangle tri{c.image.v[static_cast<std::size_t>(e)], c.image.v[static_cast<std::size_t>((e + 1) % 4)],
                         c.center_image};
      if (orient(tri.a, tri.b, tri.c) == 0) {
        continue;  // zero-area piece maps nothing onto a 2-d region
      }
      const std::array<Point2, 3> pts{tri.a, tri.b, tri.c};
      insert(piece_buckets_, pieces_.size(), pts);
      pieces_.push_back({ci, e, tri});
    }
  }
}

std::size_t QuadMesh::bucket_of(Point2 z) const {
  const double fi = (z.x1 - lo_.x1) / width_;
  const double fj = (z.x2 - lo_.x2) / width_;
  const auto limit = static_cast<double>(side_);
  if (!(fi >= 0.0 && fj >= 0.0 && fi < limit && fj < limit)) {
    return side_ * side_;
  }
  return static_cast<std::size_t>(fi) * side_ + static_cast<std::size_t>(fj);
}

Point2 QuadMesh::interpolate(Point2 x) const {
  require_domain(x, "g_dagger");
  const auto [tau1, tau2] = grid_.locate(x);
  const MeshCell& c = cells_[grid_.square_id(tau1, tau2)];
  std::array<Point2, 4> v{};
  for (std::size_t e = 0; e < 4; ++e) {
    v[e] = grid_.vertex(c.vertices[e]);
  }
  if (c.twisted) {
    std::size_t best = 0;
    for (std::size_t e = 1; e < 4; ++e) {
      if (dist2(x, v[e]) < dist2(x, v[best])) {
        best = e;
      }
    }
    return vertex_images_[c.vertices[best]];
  }
  // Nearest edge picks the fan triangle; ties go to the lexicographically smaller edge midpoint.
  // Edges: 0 right, 1 bottom, 2 left, 3 top.
  const std::array<double, 4> gap{v[0].x1 - x.x1, x.x2 - v[1].x2, x.x1 - v[2].x1, v[0].x2 - x.x2};
  std::size_t e = 0;
  const auto mid = [&](std::size_t k) { return 0.5 * (v[k] + v[(k + 1) % 4]); };
  for (std::size_t k = 1; k < 4; ++k) {
    const Point2 mk = mid(k);
    const Point2 me = mid(e);
    if (gap[k] < gap[e] || (gap[k] == gap[e] && (mk.x1 < me.x1 || (mk.x1 == me.x1 && mk.x2 < me.x2)))) {
      e = k;
    }
  }
  const std::size_t e1 = (e + 1) % 4;
  const auto [a1, a2] = barycentric_coords(x, {v[e], v[e1], c.center});
  // Interpolate the displacement g - id; algebraically the same affine piece, and exact for g = id.
  const Point2 ds = c.center_image - c.center;
  const Point2 da = vertex_images_[c.vertices[e]] - v[e];
  const Point2 db = vertex_images_[c.vertices[e1]] - v[e1];
  return x + ds + a1 * (da - ds) + a2 * (db - ds);
}

std::optional<Point2> QuadMesh::preimage(Point2 z) const {
  const std::size_t b = bucket_of(z);
  if (b >= side_ * side_) {
    return std::nullopt;
  }
  for (const std::size_t ci : twist_buckets_[b]) {
    if (winding_number(z, cells_[ci].image) != 0) {
      return std::nullopt;
    }
  }
  std::optional<Point2> found;
  for (const std::size_t pi : piece_buckets_[b]) {
    const Piece& piece = pieces_[pi];
    const auto bc = barycentric_in_triangle(z, piece.image);
    if (!bc) {
      continue;
    }
    const MeshCell& c = cells_[piece.cell];
    const auto e = static_cast<std::size_t>(piece.edge);
    const std::size_t e1 = (e + 1) % 4;
    const Point2 ds = c.center_image - c.center;
    const Point2 da = vertex_images_[c.vertices[e]] - grid_.vertex(c.vertices[e]);
    const Point2 db = vertex_images_[c.vertices[e1]] - grid_.vertex(c.vertices[e1]);
    const Point2 x = clamp_square(z - (ds + bc->first * (da - ds) + bc->second * (db - ds)));
    if (!found) {
      found = x;
    } else if (dist2(*found, x) > kSamePreimage) {
      return std::nullopt;
    }
  }
  return found;
}

void QuadMesh::write_csv(const std::filesystem::path& path, const std::string& header) const {
  std::ofstream os(path);
  if (!os) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  std::istringstream lines(header);
  for (std::string line; std::getline(lines, line);) {
    os << "# " << line << '\n';
  }
  os << "tau1,tau2,vertex,x1,x2,g1,g2,twisted,folded\n";
  char buf[256];
  for (const MeshCell& c : cells_) {
    for (std::size_t e = 0; e < 4; ++e) {
      const Point2 x = grid_.vertex(c.vertices[e]);
      const Point2 g = vertex_images_[c.vertices[e]];
      std::snprintf(buf, sizeof buf, "%d,%d,%zu,%.17g,%.17g,%.17g,%.17g,%d,%d\n", c.tau1, c.tau2, e, x.x1, x.x2, g.x1,
                    g.x2, c.twisted ? 1 : 0, c.folded ? 1 : 0);
      os << buf;
    }
  }
}

QuadMesh build_mesh(const MapFn& g, int t) {
  SquareGrid grid(t);
  std::vector<Point2> images(grid.vertex_count());
  for (std::size_t id = 0; id < images.size(); ++id) {
    images[id] = g(grid.vertex(id));
  }
  std::vector<MeshCell> cells(grid.square_count());
  for (std::size_t id = 0; id < cells.size(); ++id) {
    MeshCell& c = cells[id];
    std::tie(c.tau1, c.tau2) = grid.square_index(id);
    c.vertices = grid.square_vertices(c.tau1, c.tau2);
    Point2 sum{};
    for (std::size_t e = 0; e < 4; ++e) {
      c.image.v[e] = images[c.vertices[e]];
      sum += grid.vertex(c.vertices[e]);
    }
    c.center = 0.25 * sum;
    c.center_image = g(c.center);
    c.twisted = quad_is_twisted(c.image);
    if (!c.twisted) {
      int pos = 0;
      int neg = 0;
      for (std::size_t e = 0; e < 4; ++e) {
        const int o = orient(c.image.v[e], c.image.v[(e + 1) % 4], c.center_image);
        pos += o > 0;
        neg += o < 0;
      }
      c.folded = !(pos == 4 || neg == 4);
    }
  }
  return {grid, std::move(images), std::move(cells)};
}

InvertibleEstimator::InvertibleEstimator(PlanarMap pilot, CoherentRotation rotation, std::optional<QuadMesh> mesh, int t)
    : pilot_(std::move(pilot)), rotation_(rotation), mesh_(std::move(mesh)), t_(t) {}

InvertibleEstimator InvertibleEstimator::fit(const Dataset& d, const FitOptions& opt) {
  const int t = opt.t_override ? *opt.t_override : grid_resolution(d.n(), opt.alpha_plus_beta);
  return from_pilot(knn_fit(d, opt.k), t);
}

InvertibleEstimator InvertibleEstimator::from_pilot(PlanarMap pilot, int t) {
  const CoherentRotation rot = estimate_rotation(pilot);
  return from_parts(std::move(pilot), rot, t);
}

InvertibleEstimator InvertibleEstimator::from_parts(PlanarMap pilot, CoherentRotation rotation, int t) {
  if (rotation.degenerate()) {
    return {std::move(pilot), rotation, std::nullopt, t};
  }
  QuadMesh mesh = build_mesh(g_hat(pilot, rotation), t);
  return {std::move(pilot), rotation, std::move(mesh), t};
}

InvertibleEstimator InvertibleEstimator::from_mesh(CoherentRotation rotation, QuadMesh mesh) {
  const int t = mesh.grid().t();
  if (rotation.degenerate()) {
    return {PlanarMap{}, rotation, std::nullopt, t};
  }
  return {PlanarMap{}, rotation, std::move(mesh), t};
}

const QuadMesh& InvertibleEstimator::mesh() const {
  if (!mesh_) {
    throw std::logic_error("InvertibleEstimator: constant-zero estimator has no mesh");
  }
  return *mesh_;
}

Point2 InvertibleEstimator::g_hat_at(Point2 x) const {
  require_domain(x, "g_hat");
  if (!pilot_.eval) {
    throw std::logic_error("InvertibleEstimator: no pilot attached");
  }
  if (constant_zero()) {
    return {0.0, 0.0};
  }
  return boundary_project(x, rotation_.forward(clip_to_square(pilot_(x))));
}

Point2 InvertibleEstimator::g_dagger_at(Point2 x) const {
  require_domain(x, "g_dagger");
  if (constant_zero()) {
    return {0.0, 0.0};
  }
  return mesh_->interpolate(x);
}

Point2 InvertibleEstimator::evaluate(Point2 x) const {
  require_domain(x, "evaluate");
  if (constant_zero()) {
    return {0.0, 0.0};
  }
  return clamp_square(rotation_.inverse(mesh_->interpolate(x)));
}

Point2 InvertibleEstimator::invert(Point2 y) const {
  require_domain(y, "invert");
  if (constant_zero()) {
    return kNonUniqueInverse;
  }
  const auto x = mesh_->preimage(rotation_.forward(y));
  return x ? *x : kNonUniqueInverse;
}

MonteCarloEstimate InvertibleEstimator::non_invertible_measure(std::size_t samples, std::uint64_t seed) const {
  if (samples == 0) {
    throw std::invalid_argument("non_invertible_measure: need at least one sample");
  }
  Rng rng(seed, 0x6e6d);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    if (invert(rng.uniform_square()) == kNonUniqueInverse) {
      ++hits;
    }
  }
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  return {4.0 * p, 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(samples)), samples, seed};
}

PlanarMap InvertibleEstimator::as_map() const {
  auto self = std::make_shared<const InvertibleEstimator>(*this);
  PlanarMap f;
  f.eval = [self](Point2 x) { return self->evaluate(x); };
  f.inverse = [self](Point2 y) { return self->invert(y); };
  return f;
}

}  // namespace invreg
