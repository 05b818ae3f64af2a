#pragma once

// Stage-one (pilot) estimators: clipped k-nearest-neighbour regression and the
// sawtooth map, a uniformly accurate but nowhere-injective estimate of the
// identity.

#include <memory>
#include <vector>

#include "invreg/maps.hpp"
#include "invreg/synth.hpp"

namespace invreg {

/// Componentwise clamp to [-1, 1].
inline Point2 clip_to_square(Point2 y) { return {std::clamp(y.x1, -1.0, 1.0), std::clamp(y.x2, -1.0, 1.0)}; }

/// Exact k-nearest-neighbour search over the covariates of a dataset, backed by a uniform
/// bucket grid. Neighbours are ordered by (squared distance, sample index), so equal
/// distances resolve to the lowest index.
class KnnRegressor {
 public:
  /// Throws std::invalid_argument for an empty dataset or k outside [1, n].
  KnnRegressor(const Dataset& d, std::size_t k);

  std::size_t k() const { return k_; }
  std::size_t n() const { return x_.size(); }

  /// Indices of the k nearest samples, nearest first.
  std::vector<std::size_t> neighbors(Point2 q) const;

  /// clip(mean of the neighbours' responses).
  Point2 predict(Point2 q) const;

 private:
  std::size_t cell_of(double v, double lo) const;

  std::vector<Point2> x_;
  std::vector<Point2> y_;
  std::size_t k_;
  Point2 lo_;
  double width_ = 1.0;
  std::size_t side_ = 1;
  std::vector<std::size_t> start_;  // CSR offsets, side_*side_ + 1 entries
  std::vector<std::size_t> items_;
};

PlanarMap knn_fit(const Dataset& d, std::size_t k);

/// Second component of the sawtooth with D teeth on [-1, 1]: on tooth [d, d + Delta) with
/// Delta = 2/D it runs d -> d + Delta -> d -> d + Delta in three slope-3 pieces.
double sawtooth_value(int D, double x2);

/// All x2 in [-1, 1] with sawtooth_value(D, x2) = y2 (sorted, duplicates at joints removed).
std::vector<double> sawtooth_preimages(int D, double y2);

/// (x1, sawtooth_value(D, x2)). Throws std::invalid_argument for D < 1.
PlanarMap sawtooth_estimator(int D);

/// Generalized inverse of the sawtooth: the unique preimage when there is one, else
/// kNonUniqueInverse.
MapFn sawtooth_inverse(int D);

}  // namespace invreg
