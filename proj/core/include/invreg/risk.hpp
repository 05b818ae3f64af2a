#pragma once

// Risk functionals: forward L2 risk, the inverse risk
//   R_INV = E||f_hat - f*||^2 + psi(|| f_hat^{-1} - f*^{-1} ||_{L2}),  psi(z) = z^4,
// the sup-norm error on a grid, and a Hausdorff-Lipschitz diagnostic for level sets.

#include <cstdint>
#include <span>
#include <string>
#include <utility>

#include "invreg/estimator.hpp"
#include "invreg/maps.hpp"
#include "invreg/synth.hpp"

namespace invreg {

/// Where the inverse term draws its integration variable y from.
enum class InverseSampling { Covariate, TruthImage };

struct RiskOptions {
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  CovariateLaw law = CovariateLaw::uniform();
  InverseSampling inverse_sampling = InverseSampling::Covariate;
  int sup_resolution = 101;
};

struct RiskReport {
  double forward_l2 = 0.0;     // E||f_hat(X) - f*(X)||^2
  double forward_se = 0.0;
  double inverse_l2_sq = 0.0;  // E||f_hat^{-1}(Y) - f*^{-1}(Y)||^2
  double inverse_l2 = 0.0;     // its square root, the L2 norm
  double inverse_se = 0.0;     // standard error of inverse_l2_sq
  double psi_term = 0.0;       // inverse_l2^4
  double total_inverse_risk = 0.0;
  double sup_error = 0.0;
  double nonminv_area = 0.0;   // 4 * fraction of inverse draws answered with kNonUniqueInverse
  std::size_t mc_samples = 0;
  double mc_std_error = 0.0;   // standard error of the forward term
  std::uint64_t seed = 0;

  std::string to_kv() const;
  static std::string csv_header();
  std::string csv_row() const;
};

MonteCarloEstimate forward_l2_risk(const MapFn& fhat, const MapFn& truth, const CovariateLaw& law, std::size_t samples,
                                   std::uint64_t seed);

/// fhat_inv is a generalized inverse returning kNonUniqueInverse where f_hat is not uniquely
/// invertible. Throws std::invalid_argument when the truth has no inverse.
RiskReport inverse_risk(const MapFn& fhat, const MapFn& fhat_inv, const PlanarMap& truth, const RiskOptions& opt = {});
RiskReport inverse_risk(const InvertibleEstimator& est, const PlanarMap& truth, const RiskOptions& opt = {});

/// max over an r x r grid of max_j |fhat_j - f*_j|.
double sup_norm_error(const MapFn& fhat, const MapFn& truth, int r);

struct LevelsetDiagnostic {
  double max_ratio = 0.0;
  /// Some interior level produced an empty level set although the map was certified invertible.
  bool inconsistent = false;
};

/// max over pairs of hausdorff(L(y), L(y')) / |y - y'|. Throws std::invalid_argument when a
/// pair is closer than 0.05.
LevelsetDiagnostic levelset_lipschitz_diag(const PlanarMap& f, int component,
                                           std::span<const std::pair<double, double>> level_pairs, int res);

}  // namespace invreg
