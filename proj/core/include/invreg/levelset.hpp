#pragma once

// Level sets {x : f_j(x) = y} of one component of a planar map, traced by
// marching squares on a regular grid over I^2.

#include <vector>

#include "invreg/geom.hpp"
#include "invreg/maps.hpp"

namespace invreg {

struct LevelSet {
  int component = 1;
  double level = 0.0;
  /// Each polyline is an ordered chain of edge crossings; closed loops repeat their first point.
  std::vector<std::vector<Point2>> polylines;
  /// Largest |f_j| variation across one grid cell; every point is within it of the level.
  double slack = 0.0;

  bool empty() const { return polylines.empty(); }
  std::vector<Point2> points() const;
};

/// r x r grid nodes (-1 + 2i/(r-1), -1 + 2j/(r-1)); cell edges are cut by linear interpolation.
/// Nodes exactly at the level count as above it for positive levels and below it otherwise, so
/// the boundary levels +-1 still produce the corresponding edge of I^2. Saddle cells are
/// resolved with the mean of the four corner values.
LevelSet level_set(const ScalarFn& fj, int component, double level, int r);
LevelSet level_set(const PlanarMap& f, int component, double level, int r);

}  // namespace invreg
