#pragma once

// Scalar fields sampled on a square grid over I^2, exported as a CSV matrix or
// an 8-bit binary PGM (P5). Row 0 is the top edge x2 = +1 and column 0 the left
// edge x1 = -1, so both files read like an image of the field.

#include <filesystem>
#include <string>
#include <vector>

#include "invreg/maps.hpp"

namespace invreg {

struct ScalarGrid {
  int res = 0;
  std::vector<double> values;  // row-major, res x res

  double at(int row, int col) const { return values[static_cast<std::size_t>(row) * res + col]; }
  static Point2 node(int res, int row, int col);
};

ScalarGrid sample_grid(const ScalarFn& f, int res);

/// Largest absolute cell difference. Throws std::invalid_argument on mismatched resolutions.
double max_abs_diff(const ScalarGrid& a, const ScalarGrid& b);

/// Every line of `header` is written as a leading "# " comment.
void write_grid_csv(const ScalarGrid& g, const std::filesystem::path& path, const std::string& header = {});

/// Gray level round(255 (v + 1) / 2) with v clamped to [-1, 1].
void write_grid_pgm(const ScalarGrid& g, const std::filesystem::path& path, const std::string& header = {});

}  // namespace invreg
