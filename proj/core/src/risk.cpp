#include "invreg/risk.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "invreg/levelset.hpp"
#include "invreg/rng.hpp"

namespace invreg {

namespace {

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t count = 0;

  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++count;
  }
  double mean() const { return count ? sum / static_cast<double>(count) : 0.0; }
  double std_error() const {
    if (count < 2) {
      return 0.0;
    }
    const double n = static_cast<double>(count);
    const double var = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
    return std::sqrt(var / n);
  }
};

double sq(Point2 p) { return p.x1 * p.x1 + p.x2 * p.x2; }

}  // namespace

MonteCarloEstimate forward_l2_risk(const MapFn& fhat, const MapFn& truth, const CovariateLaw& law, std::size_t samples,
                                   std::uint64_t seed) {
  if (samples < 1) {
    throw std::invalid_argument("forward_l2_risk: need at least one sample");
  }
  Moments m;
  for (const Point2 x : sample_covariates(law, samples, seed, 0x6677)) {
    m.add(sq(fhat(x) - truth(x)));
  }
  return {m.mean(), m.std_error(), samples, seed};
}

RiskReport inverse_risk(const MapFn& fhat, const MapFn& fhat_inv, const PlanarMap& truth, const RiskOptions& opt) {
  if (!truth.inverse) {
    throw std::invalid_argument("inverse_risk: the true map has no inverse");
  }
  RiskReport r;
  r.seed = opt.seed;
  r.mc_samples = opt.samples;
  const auto fwd = forward_l2_risk(fhat, truth.eval, opt.law, opt.samples, opt.seed);
  r.forward_l2 = fwd.value;
  r.forward_se = fwd.std_error;
  r.mc_std_error = fwd.std_error;

  Moments inv;
  std::size_t missing = 0;
  const MapFn& truth_inv = *truth.inverse;
  for (Point2 y : sample_covariates(opt.law, opt.samples, opt.seed, 0x6969)) {
    if (opt.inverse_sampling == InverseSampling::TruthImage) {
      y = truth(y);
    }
    const Point2 xi = fhat_inv(y);
    if (xi == kNonUniqueInverse) {
      ++missing;
    }
    inv.add(sq(xi - truth_inv(y)));
  }
  r.inverse_l2_sq = inv.mean();
  r.inverse_se = inv.std_error();
  r.inverse_l2 = std::sqrt(r.inverse_l2_sq);
  r.psi_term = r.inverse_l2_sq * r.inverse_l2_sq;
  r.total_inverse_risk = r.forward_l2 + r.psi_term;
  r.nonminv_area = 4.0 * static_cast<double>(missing) / static_cast<double>(opt.samples);
  r.sup_error = sup_norm_error(fhat, truth.eval, opt.sup_resolution);
  return r;
}

RiskReport inverse_risk(const InvertibleEstimator& est, const PlanarMap& truth, const RiskOptions& opt) {
  return inverse_risk([&est](Point2 x) { return est.evaluate(x); }, [&est](Point2 y) { return est.invert(y); }, truth,
                      opt);
}

double sup_norm_error(const MapFn& fhat, const MapFn& truth, int r) {
  if (r < 2) {
    throw std::invalid_argument("sup_norm_error: resolution must be at least 2");
  }
  const double h = 2.0 / (r - 1);
  double worst = 0.0;
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      const Point2 x{-1.0 + h * i, -1.0 + h * j};
      worst = std::max(worst, dist_inf(fhat(x), truth(x)));
    }
  }
  return worst;
}

LevelsetDiagnostic levelset_lipschitz_diag(const PlanarMap& f, int component,
                                           std::span<const std::pair<double, double>> level_pairs, int res) {
  LevelsetDiagnostic diag;
  const ScalarFn fj = f.component(component);
  for (const auto& [a, b] : level_pairs) {
    if (std::abs(a - b) < 0.05) {
      throw std::invalid_argument("levelset_lipschitz_diag: levels closer than 0.05");
    }
    const auto la = level_set(fj, component, a, res).points();
    const auto lb = level_set(fj, component, b, res).points();
    if (la.empty() || lb.empty()) {
      diag.inconsistent = true;
      continue;
    }
    diag.max_ratio = std::max(diag.max_ratio, hausdorff(la, lb) / std::abs(a - b));
  }
  return diag;
}

std::string RiskReport::to_kv() const {
  char buf[1024];
  std::snprintf(buf, sizeof buf,
                "forward_l2=%.17g\nforward_se=%.17g\ninverse_l2=%.17g\ninverse_l2_sq=%.17g\ninverse_se=%.17g\n"
                "psi_term=%.17g\ntotal_inverse_risk=%.17g\nsup_error=%.17g\nnonminv_area=%.17g\nmc_samples=%zu\n"
                "mc_std_error=%.17g\nseed=%llu\n",
                forward_l2, forward_se, inverse_l2, inverse_l2_sq, inverse_se, psi_term, total_inverse_risk, sup_error,
                nonminv_area, mc_samples, mc_std_error, static_cast<unsigned long long>(seed));
  return buf;
}

std::string RiskReport::csv_header() {
  return "forward_l2,forward_se,inverse_l2,inverse_l2_sq,inverse_se,psi_term,total_inverse_risk,sup_error,"
         "nonminv_area,mc_samples,mc_std_error,seed";
}

std::string RiskReport::csv_row() const {
  char buf[1024];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%zu,%.17g,%llu", forward_l2,
                forward_se, inverse_l2, inverse_l2_sq, inverse_se, psi_term, total_inverse_risk, sup_error,
                nonminv_area, mc_samples, mc_std_error, static_cast<unsigned long long>(seed));
  return buf;
}

}  // namespace invreg
