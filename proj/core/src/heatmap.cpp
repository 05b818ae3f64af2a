#include "invreg/heatmap.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace invreg {

namespace {

void write_header(std::ostream& os, const std::string& header) {
  if (header.empty()) {
    return;
  }
  std::istringstream lines(header);
  std::string line;
  while (std::getline(lines, line)) {
    os << "# " << line << '\n';
  }
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream os(path, mode);
  if (!os) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  return os;
}

}  // namespace

Point2 ScalarGrid::node(int res, int row, int col) {
  const double h = 2.0 / (res - 1);
  return {-1.0 + h * col, 1.0 - h * row};
}

ScalarGrid sample_grid(const ScalarFn& f, int res) {
  if (res < 2) {
    throw std::invalid_argument("sample_grid: resolution must be at least 2");
  }
  ScalarGrid g;
  g.res = res;
  g.values.resize(static_cast<std::size_t>(res) * res);
  for (int row = 0; row < res; ++row) {
    for (int col = 0; col < res; ++col) {
      g.values[static_cast<std::size_t>(row) * res + col] = f(ScalarGrid::node(res, row, col));
    }
  }
  return g;
}

double max_abs_diff(const ScalarGrid& a, const ScalarGrid& b) {
  if (a.res != b.res) {
    throw std::invalid_argument("max_abs_diff: grids differ in resolution");
  }
  double d = 0.0;
  for (std::size_t k = 0; k < a.values.size(); ++k) {
    d = std::max(d, std::abs(a.values[k] - b.values[k]));
  }
  return d;
}

void write_grid_csv(const ScalarGrid& g, const std::filesystem::path& path, const std::string& header) {
  auto os = open_out(path);
  write_header(os, header);
  char buf[32];
  for (int row = 0; row < g.res; ++row) {
    for (int col = 0; col < g.res; ++col) {
      std::snprintf(buf, sizeof buf, "%.17g", g.at(row, col));
      os << (col ? "," : "") << buf;
    }
    os << '\n';
  }
}

void write_grid_pgm(const ScalarGrid& g, const std::filesystem::path& path, const std::string& header) {
  auto os = open_out(path, std::ios::out | std::ios::binary);
  os << "P5\n";
  write_header(os, header);
  os << g.res << ' ' << g.res << "\n255\n";
  std::vector<unsigned char> px(g.values.size());
  for (std::size_t k = 0; k < px.size(); ++k) {
    const double v = std::clamp(g.values[k], -1.0, 1.0);
    px[k] = static_cast<unsigned char>(std::lround(255.0 * (v + 1.0) / 2.0));
  }
  os.write(reinterpret_cast<const char*>(px.data()), static_cast<std::streamsize>(px.size()));
}

}  // namespace invreg
