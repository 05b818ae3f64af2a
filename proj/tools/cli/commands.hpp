#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "config.hpp"

namespace invreg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitPartial = 3;

/// Writes <output_dir>/dataset.csv.
int cmd_gen(const ExperimentConfig& cfg, std::ostream& log);

/// Reads cfg.data (default <output_dir>/dataset.csv) and, for every t, writes CSV and PGM
/// heatmaps of both components of the truth, pilot, g_hat, g_dagger and f_hat, plus the mesh,
/// rotation parameters and a risk report.
int cmd_fit(const ExperimentConfig& cfg, std::ostream& log);

/// One fit per (n, replicate); rows go to <output_dir>/sweep.csv as they finish and the
/// log-log fit to <output_dir>/sweep_summary.txt.
int cmd_sweep(const ExperimentConfig& cfg, std::ostream& log);

/// <output_dir>/lowerbound.csv and the packing as hex lines in lowerbound_code.hex.
int cmd_lowerbound(const ExperimentConfig& cfg, std::ostream& log);

/// <output_dir>/sawtooth.csv with the sup error and inverse risk for every D in d_list.
int cmd_sawtooth(const ExperimentConfig& cfg, std::ostream& log);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  bool degenerate = false;
};

/// Ordinary least squares of log(risk) on log(n). Degenerate when fewer than two points or
/// some risk is not a positive finite number above 1e-12.
SlopeFit ols_loglog(const std::vector<double>& n, const std::vector<double>& risk);

std::uint64_t replicate_seed(std::uint64_t seed, std::size_t n, int replicate);

}  // namespace invreg::cli
