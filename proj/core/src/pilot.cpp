#include "invreg/pilot.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace invreg {

KnnRegressor::KnnRegressor(const Dataset& d, std::size_t k) : x_(d.x), y_(d.y), k_(k) {
  if (x_.empty()) {
    throw std::invalid_argument("knn: empty dataset");
  }
  if (k < 1 || k > x_.size()) {
    throw std::invalid_argument("knn: k must lie in [1, n]");
  }
  Point2 hi = x_.front();
  lo_ = x_.front();
  for (const Point2 p : x_) {
    lo_ = {std::min(lo_.x1, p.x1), std::min(lo_.x2, p.x2)};
    hi = {std::max(hi.x1, p.x1), std::max(hi.x2, p.x2)};
  }
  // About two samples per bucket.
  side_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(x_.size()) / 2.0)));
  width_ = std::max({hi.x1 - lo_.x1, hi.x2 - lo_.x2, 1e-12}) / static_cast<double>(side_);

  std::vector<std::size_t> bucket(x_.size());
  start_.assign(side_ * side_ + 1, 0);
  for (std::size_t i = 0; i < x_.size(); ++i) {
    bucket[i] = cell_of(x_[i].x1, lo_.x1) * side_ + cell_of(x_[i].x2, lo_.x2);
    ++start_[bucket[i] + 1];
  }
  for (std::size_t b = 0; b < side_ * side_; ++b) {
    start_[b + 1] += start_[b];
  }
  items_.resize(x_.size());
  std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
  for (std::size_t i = 0; i < x_.size(); ++i) {
    items_[fill[bucket[i]]++] = i;
  }
}

std::size_t KnnRegressor::cell_of(double v, double lo) const {
  const double c = std::floor((v - lo) / width_);
  if (c <= 0.0) {
    return 0;
  }
  return std::min(side_ - 1, static_cast<std::size_t>(c));
}

std::vector<std::size_t> KnnRegressor::neighbors(Point2 q) const {
  using Entry = std::pair<double, std::size_t>;  // (squared distance, index)
  std::priority_queue<Entry> best;               // max-heap of the current k best
  const auto ci = static_cast<long>(cell_of(q.x1, lo_.x1));
  const auto cj = static_cast<long>(cell_of(q.x2, lo_.x2));
  const auto side = static_cast<long>(side_);
  const auto visit = [&](long i, long j) {
    if (i < 0 || j < 0 || i >= side || j >= side) {
      return;
    }
    const auto b = static_cast<std::size_t>(i * side + j);
    for (std::size_t s = start_[b]; s < start_[b + 1]; ++s) {
      const std::size_t idx = items_[s];
      const Point2 d = x_[idx] - q;
      const Entry e{d.x1 * d.x1 + d.x2 * d.x2, idx};
      if (best.size() < k_) {
        best.push(e);
      } else if (e < best.top()) {
        best.pop();
        best.push(e);
      }
    }
  };
  constexpr double kInf = std::numeric_limits<double>::infinity();
  for (long r = 0;; ++r) {
    if (r == 0) {
      visit(ci, cj);
    } else {
      for (long t = -r; t <= r; ++t) {
        visit(ci - r, cj + t);
        visit(ci + r, cj + t);
      }
      for (long t = -r + 1; t <= r - 1; ++t) {
        visit(ci + t, cj - r);
        visit(ci + t, cj + r);
      }
    }
    // Distance from q to any bucket outside the visited block.
    double bound = kInf;
    if (ci - r > 0) {
      bound = std::min(bound, q.x1 - (lo_.x1 + static_cast<double>(ci - r) * width_));
    }
    if (ci + r < side - 1) {
      bound = std::min(bound, lo_.x1 + static_cast<double>(ci + r + 1) * width_ - q.x1);
    }
    if (cj - r > 0) {
      bound = std::min(bound, q.x2 - (lo_.x2 + static_cast<double>(cj - r) * width_));
    }
    if (cj + r < side - 1) {
      bound = std::min(bound, lo_.x2 + static_cast<double>(cj + r + 1) * width_ - q.x2);
    }
    if (bound == kInf) {
      break;
    }
    if (best.size() == k_ && bound > 0.0 && best.top().first < bound * bound) {
      break;
    }
  }
  std::vector<std::size_t> out(best.size());
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = best.top().second;
    best.pop();
  }
  return out;
}

Point2 KnnRegressor::predict(Point2 q) const {
  Point2 acc{};
  for (const std::size_t i : neighbors(q)) {
    acc += y_[i];
  }
  return clip_to_square((1.0 / static_cast<double>(k_)) * acc);
}

PlanarMap knn_fit(const Dataset& d, std::size_t k) {
  auto model = std::make_shared<const KnnRegressor>(d, k);
  PlanarMap f;
  f.eval = [model](Point2 x) { return model->predict(x); };
  return f;
}

namespace {

void check_teeth(int D) {
  if (D < 1) {
    throw std::invalid_argument("sawtooth: D must be at least 1");
  }
}

}  // namespace

double sawtooth_value(int D, double x2) {
  check_teeth(D);
  if (x2 >= 1.0) {
    return 1.0;
  }
  const double delta = 2.0 / D;
  const int tooth = std::clamp(static_cast<int>(std::floor((x2 + 1.0) / delta)), 0, D - 1);
  const double d = -1.0 + tooth * delta;
  const double u = x2 - d;
  if (u < delta / 3.0) {
    return d + 3.0 * u;
  }
  if (u < 2.0 * delta / 3.0) {
    return d + delta - 3.0 * (u - delta / 3.0);
  }
  return d + 3.0 * (u - 2.0 * delta / 3.0);
}

std::vector<double> sawtooth_preimages(int D, double y2) {
  check_teeth(D);
  std::vector<double> out;
  const double delta = 2.0 / D;
  for (int tooth = 0; tooth < D; ++tooth) {
    const double d = -1.0 + tooth * delta;
    const double s = y2 - d;  // offset of the level within this tooth's range
    if (s < -1e-12 || s > delta + 1e-12) {
      continue;
    }
    const double c = std::clamp(s, 0.0, delta);
    for (const double u : {c / 3.0, delta / 3.0 + (delta - c) / 3.0, 2.0 * delta / 3.0 + c / 3.0}) {
      out.push_back(d + u);
    }
  }
  std::sort(out.begin(), out.end());
  std::vector<double> uniq;
  for (const double v : out) {
    if (uniq.empty() || v - uniq.back() > 1e-12) {
      uniq.push_back(v);
    }
  }
  return uniq;
}

PlanarMap sawtooth_estimator(int D) {
  check_teeth(D);
  PlanarMap f;
  f.eval = [D](Point2 x) { return Point2{x.x1, sawtooth_value(D, x.x2)}; };
  f.lipschitz_bound = 3.0;
  return f;
}

MapFn sawtooth_inverse(int D) {
  check_teeth(D);
  return [D](Point2 y) {
    const auto pre = sawtooth_preimages(D, y.x2);
    if (pre.size() != 1) {
      return kNonUniqueInverse;
    }
    return Point2{y.x1, pre.front()};
  };
}

}  // namespace invreg
