#pragma once

// The invertible estimator f_hat = rho_hat^{-1} o g_dagger. A pilot estimate is
// rotated coherently, its values at the vertices of a 2t x 2t square grid are
// pinned to the matching edges of I^2, and each square is mapped onto its
// image quadrilateral by four affine pieces fanned around the square center.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "invreg/geom.hpp"
#include "invreg/maps.hpp"
#include "invreg/rotation.hpp"
#include "invreg/synth.hpp"

namespace invreg {

/// Largest power of two <= sqrt(n) (ln n)^-(alpha+beta), and at least 1. Throws for n < 2.
int grid_resolution(std::size_t n, double alpha_plus_beta);

/// Pins ytilde to the edge(s) of I^2 that x lies on: y1 = x1 when |x1| = 1, same for y2.
Point2 boundary_project(Point2 x, Point2 ytilde);

/// x -> boundary_project(x, rotation(clip(pilot(x)))). Throws std::domain_error when the
/// rotation is degenerate.
MapFn g_hat(const PlanarMap& pilot, const CoherentRotation& rotation);

/// Squares [a/t, (a+1)/t] x [b/t, (b+1)/t] for a, b in {-t..t-1}.
class SquareGrid {
 public:
  explicit SquareGrid(int t);

  int t() const { return t_; }
  int cells_per_axis() const { return 2 * t_; }
  std::size_t square_count() const { return static_cast<std::size_t>(4 * t_ * t_); }
  std::size_t vertex_count() const { return static_cast<std::size_t>((2 * t_ + 1) * (2 * t_ + 1)); }

  double coord(int a) const { return static_cast<double>(a) / t_; }
  std::size_t square_id(int tau1, int tau2) const;
  std::size_t vertex_id(int a, int b) const;
  std::pair<int, int> square_index(std::size_t id) const;
  std::pair<int, int> vertex_index(std::size_t id) const;
  Point2 vertex(std::size_t id) const;

  /// Vertex ids of a square, starting at its corner nearest (1,1) and going clockwise:
  /// upper-right, lower-right, lower-left, upper-left.
  std::array<std::size_t, 4> square_vertices(int tau1, int tau2) const;

  /// A square containing x (points on shared edges go to the square above/right of the edge,
  /// except on the top and right edges of I^2).
  std::pair<int, int> locate(Point2 x) const;

 private:
  int t_;
};

struct MeshCell {
  int tau1 = 0;
  int tau2 = 0;
  std::array<std::size_t, 4> vertices{};  // clockwise from upper-right
  Quad image;                             // vertex images in the same order
  Point2 center;
  Point2 center_image;
  bool twisted = false;
  /// Not twisted, but the four image triangles disagree in orientation or one has zero area.
  bool folded = false;
};

class QuadMesh {
 public:
  QuadMesh(SquareGrid grid, std::vector<Point2> vertex_images, std::vector<MeshCell> cells);

  const SquareGrid& grid() const { return grid_; }
  const std::vector<Point2>& vertex_images() const { return vertex_images_; }
  const std::vector<MeshCell>& cells() const { return cells_; }
  const MeshCell& cell(int tau1, int tau2) const { return cells_[grid_.square_id(tau1, tau2)]; }

  std::size_t twisted_count() const;
  std::size_t folded_count() const;

  /// Triangle interpolation: affine on each (vertex, next vertex, center) fan triangle; the
  /// nearest vertex image on twisted squares. Throws std::domain_error outside I^2.
  Point2 interpolate(Point2 x) const;

  /// The unique preimage of z under interpolate; nullopt when z has none or several, or lies
  /// inside a twisted quad. Preimages closer than 1e-9 count as one.
  std::optional<Point2> preimage(Point2 z) const;

  /// One row per (square, vertex): tau1,tau2,vertex,x1,x2,g1,g2,twisted,folded.
  void write_csv(const std::filesystem::path& path, const std::string& header = {}) const;

 private:
  struct Piece {
    std::size_t cell;
    int edge;
    Triangle image;  // (g(v_e), g(v_{e+1}), g(s))
  };
  void build_index();
  std::size_t bucket_of(Point2 z) const;

  SquareGrid grid_;
  std::vector<Point2> vertex_images_;
  std::vector<MeshCell> cells_;
  std::vector<Piece> pieces_;
  // Uniform bucket grid over the image bounding box; each bucket lists piece ids and twisted cells.
  Point2 lo_;
  double width_ = 1.0;
  std::size_t side_ = 1;
  std::vector<std::vector<std::size_t>> piece_buckets_;
  std::vector<std::vector<std::size_t>> twist_buckets_;
};

/// Samples g at every grid vertex and square center.
QuadMesh build_mesh(const MapFn& g, int t);

inline Point2 g_dagger(const QuadMesh& mesh, Point2 x) { return mesh.interpolate(x); }

struct MonteCarloEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

struct FitOptions {
  std::size_t k = 10;
  double alpha_plus_beta = 1.0;
  std::optional<int> t_override;
};

class InvertibleEstimator {
 public:
  /// k-NN pilot, estimated rotation, mesh at the requested or automatic resolution.
  static InvertibleEstimator fit(const Dataset& d, const FitOptions& opt = {});
  /// Rotation estimated from the pilot's corner values.
  static InvertibleEstimator from_pilot(PlanarMap pilot, int t);
  /// Caller-supplied rotation, e.g. the exact one of the truth.
  static InvertibleEstimator from_parts(PlanarMap pilot, CoherentRotation rotation, int t);
  /// Caller-supplied mesh (synthetic vertex images); the pilot is left empty.
  static InvertibleEstimator from_mesh(CoherentRotation rotation, QuadMesh mesh);

  /// True when the estimated rotation was degenerate: evaluate is 0 and invert is c everywhere.
  bool constant_zero() const { return !mesh_.has_value(); }
  const CoherentRotation& rotation() const { return rotation_; }
  const QuadMesh& mesh() const;
  const PlanarMap& pilot() const { return pilot_; }
  int t() const { return t_; }

  /// Pre-interpolation g_hat(x); needs a pilot.
  Point2 g_hat_at(Point2 x) const;
  Point2 g_dagger_at(Point2 x) const;

  /// rho_hat^{-1}(g_dagger(x)). Throws std::domain_error outside I^2.
  Point2 evaluate(Point2 x) const;
  /// The unique x with evaluate(x) = y, or kNonUniqueInverse. Throws std::domain_error outside I^2.
  Point2 invert(Point2 y) const;

  /// 4 * fraction of uniform y in I^2 with invert(y) = c, with its binomial standard error.
  MonteCarloEstimate non_invertible_measure(std::size_t samples = 100000, std::uint64_t seed = 0) const;

  PlanarMap as_map() const;

 private:
  InvertibleEstimator(PlanarMap pilot, CoherentRotation rotation, std::optional<QuadMesh> mesh, int t);

  PlanarMap pilot_;
  CoherentRotation rotation_;
  std::optional<QuadMesh> mesh_;
  int t_;
};

}  // namespace invreg
