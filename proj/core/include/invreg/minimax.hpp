#pragma once

// Lower-bound laboratory: Varshamov-Gilbert packings of bump matrices, L2
// separation of bump maps, Gaussian-regression KL divergences and the
// resulting probability bound for testing among the packed hypotheses.

#include <cstdint>
#include <string>
#include <vector>

#include "invreg/estimator.hpp"
#include "invreg/maps.hpp"
#include "invreg/synth.hpp"

namespace invreg {

using CodeWord = std::vector<std::uint64_t>;  // bit i of the word lives in word[i / 64]

struct PackingCode {
  int N = 0;
  std::vector<CodeWord> words;
  int required_distance = 0;  // ceil(N / 8)
  std::size_t quota = 0;      // 2^ceil(N / 8), saturated at the size cap
  int min_hamming = 0;        // smallest observed pairwise distance (0 for < 2 words)
  bool verified = false;
  bool shortfall = false;     // fewer words than 2^ceil(N / 8)
  std::size_t attempts = 0;

  bool bit(std::size_t w, int i) const {
    return (words[w][static_cast<std::size_t>(i) / 64] >> (static_cast<unsigned>(i) % 64)) & 1U;
  }
};

int hamming(const CodeWord& a, const CodeWord& b);

/// Randomized greedy packing: starts from the all-zeros word and accepts random words at
/// distance >= ceil(N/8) from every accepted word, until 2^ceil(N/8) words, max_words words or
/// attempt_cap draws. Throws std::invalid_argument for N < 8.
PackingCode vg_code(int N, std::uint64_t seed, std::size_t max_words = 512, std::size_t attempt_cap = 1000000);

/// Recounts every pairwise distance bit by bit, independently of hamming().
bool verify_code(const PackingCode& code);

/// One hex line per word, most significant nibble first.
std::string code_hex(const PackingCode& code);

/// m x m bump matrix from the first m^2 bits of a word.
BumpParams params_from_word(const CodeWord& w, int m, int M);

/// Analytic L2(I^2) mass of one active bump: ||Phi||^2 / (m^2 M^2) with ||Phi||^2 = 2/3.
double bump_mass(int m, int M);

/// Midpoint-rule integral of (chi_p - chi_q)^2 over I^2 with per_axis >= 100 m nodes per axis
/// (0 selects 100 m). Throws std::invalid_argument for mismatched (m, M).
double separation_l2(const BumpParams& p, const BumpParams& q, int per_axis = 0);

/// n / (2 sigma2) E_X ||f(X) - g(X)||^2 by Monte Carlo. Throws for sigma2 <= 0.
MonteCarloEstimate kl_gaussian_model(const MapFn& f, const MapFn& g, std::size_t n, double sigma2,
                                     const CovariateLaw& law, std::size_t samples, std::uint64_t seed);

/// Same quantity under the uniform law, by midpoint quadrature with res nodes per axis.
double kl_gaussian_uniform(const MapFn& f, const MapFn& g, std::size_t n, double sigma2, int res);

struct BoundReport {
  std::size_t n = 0;
  double sigma2 = 0.0;
  std::uint64_t seed = 0;
  int m = 0;
  int amplitude = 0;          // M in the bump construction, 2m + 1
  std::size_t code_size = 0;  // hypotheses including the all-zeros one
  int min_hamming = 0;
  double alpha_sep = 0.0;     // min pairwise ||f_j - f_k||^2 / 2
  double beta_kl = 0.0;       // mean KL to f_0 divided by log(code_size - 1)
  double bound_value = 0.0;   // probability lower bound
  double rate_reference = 0.0;  // n^{-1/2}
  bool beta_in_range = false;   // 0 < beta < 1/8
  bool shortfall = false;
  bool degenerate = false;

  static std::string csv_header();
  std::string csv_row() const;
};

/// m = round(n^{1/4}), hypotheses f_j = (xi_theta_j, x2) over a packing of m x m matrices.
BoundReport lower_bound_report(std::size_t n, double sigma2, std::uint64_t seed);

}  // namespace invreg
