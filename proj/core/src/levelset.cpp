#include "invreg/levelset.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

namespace invreg {

std::vector<Point2> LevelSet::points() const {
  std::vector<Point2> out;
  for (const auto& line : polylines) {
    out.insert(out.end(), line.begin(), line.end());
  }
  return out;
}

LevelSet level_set(const PlanarMap& f, int component, double level, int r) {
  return level_set(f.component(component), component, level, r);
}

LevelSet level_set(const ScalarFn& fj, int component, double level, int r) {
  if (r < 2) {
    throw std::invalid_argument("level_set: resolution must be at least 2");
  }
  const auto n = static_cast<std::size_t>(r);
  const double h = 2.0 / (r - 1);
  const auto node = [h](std::size_t i, std::size_t j) {
    return Point2{-1.0 + h * static_cast<double>(i), -1.0 + h * static_cast<double>(j)};
  };
  std::vector<double> v(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      v[i * n + j] = fj(node(i, j)) - level;
    }
  }
  const auto above = [&](std::size_t k) { return v[k] > 0.0 || (v[k] == 0.0 && level > 0.0); };

  LevelSet ls;
  ls.component = component;
  ls.level = level;

  // Edge keys: 2k for the x1-edge from node k=(i,j) to (i+1,j), 2k+1 for the x2-edge to (i,j+1).
  std::unordered_map<std::uint64_t, Point2> cut;
  const auto crossing = [&](std::size_t ka, std::size_t kb, Point2 a, Point2 b) {
    const double t = v[ka] / (v[ka] - v[kb]);
    return a + t * (b - a);
  };
  const auto edge_point = [&](std::uint64_t key) -> Point2 {
    auto it = cut.find(key);
    if (it != cut.end()) {
      return it->second;
    }
    const std::size_t k = key / 2;
    const std::size_t i = k / n;
    const std::size_t j = k % n;
    const bool along_x1 = key % 2 == 0;
    const std::size_t k2 = along_x1 ? k + n : k + 1;
    const Point2 p = crossing(k, k2, node(i, j), along_x1 ? node(i + 1, j) : node(i, j + 1));
    cut.emplace(key, p);
    return p;
  };

  std::vector<std::array<std::uint64_t, 2>> segs;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const std::size_t k00 = i * n + j;
      const std::size_t k10 = k00 + n;
      const std::size_t k11 = k10 + 1;
      const std::size_t k01 = k00 + 1;
      ls.slack = std::max({ls.slack, std::abs(v[k00] - v[k10]), std::abs(v[k00] - v[k01]), std::abs(v[k00] - v[k11]),
                           std::abs(v[k10] - v[k01]), std::abs(v[k10] - v[k11]), std::abs(v[k01] - v[k11])});
      const bool a00 = above(k00);
      const bool a10 = above(k10);
      const bool a11 = above(k11);
      const bool a01 = above(k01);
      // bottom, right, top, left
      const std::array<std::uint64_t, 4> e{2 * k00, 2 * k10 + 1, 2 * k01, 2 * k00 + 1};
      const std::array<bool, 4> hit{a00 != a10, a10 != a11, a01 != a11, a00 != a01};
      const int count = hit[0] + hit[1] + hit[2] + hit[3];
      if (count == 2) {
        std::array<std::uint64_t, 2> s{};
        int w = 0;
        for (int q = 0; q < 4; ++q) {
          if (hit[static_cast<std::size_t>(q)]) {
            s[static_cast<std::size_t>(w++)] = e[static_cast<std::size_t>(q)];
          }
        }
        segs.push_back(s);
      } else if (count == 4) {
        const double center = (v[k00] + v[k10] + v[k11] + v[k01]) / 4.0;
        const bool ac = center > 0.0 || (center == 0.0 && level > 0.0);
        if (ac == a00) {
          segs.push_back({e[0], e[1]});
          segs.push_back({e[2], e[3]});
        } else {
          segs.push_back({e[0], e[3]});
          segs.push_back({e[1], e[2]});
        }
      }
    }
  }

  std::unordered_map<std::uint64_t, std::vector<std::size_t>> incident;
  for (std::size_t s = 0; s < segs.size(); ++s) {
    incident[segs[s][0]].push_back(s);
    incident[segs[s][1]].push_back(s);
  }
  std::vector<bool> used(segs.size(), false);
  const auto trace = [&](std::uint64_t start, std::size_t first) {
    std::vector<Point2> line{edge_point(start)};
    std::uint64_t at = start;
    std::size_t s = first;
    while (true) {
      used[s] = true;
      const std::uint64_t next = segs[s][0] == at ? segs[s][1] : segs[s][0];
      line.push_back(edge_point(next));
      at = next;
      std::size_t follow = segs.size();
      for (const std::size_t c : incident[at]) {
        if (!used[c]) {
          follow = c;
          break;
        }
      }
      if (follow == segs.size()) {
        break;
      }
      s = follow;
    }
    ls.polylines.push_back(std::move(line));
  };
  // Open chains start at their ends (edges touched by one segment); what remains are loops.
  for (std::size_t s = 0; s < segs.size(); ++s) {
    for (const std::uint64_t end : segs[s]) {
      if (!used[s] && incident[end].size() == 1) {
        trace(end, s);
      }
    }
  }
  for (std::size_t s = 0; s < segs.size(); ++s) {
    if (!used[s]) {
      trace(segs[s][0], s);
    }
  }
  return ls;
}

}  // namespace invreg
