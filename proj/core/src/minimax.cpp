#include "invreg/minimax.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "invreg/rng.hpp"

namespace invreg {

int hamming(const CodeWord& a, const CodeWord& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("hamming: word lengths differ");
  }
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d += std::popcount(a[i] ^ b[i]);
  }
  return d;
}

PackingCode vg_code(int N, std::uint64_t seed, std::size_t max_words, std::size_t attempt_cap) {
  if (N < 8) {
    throw std::invalid_argument("vg_code: N must be at least 8");
  }
  PackingCode code;
  code.N = N;
  code.required_distance = (N + 7) / 8;
  const std::size_t want = code.required_distance >= 63 ? SIZE_MAX : (std::size_t{1} << code.required_distance);
  code.quota = std::min(want, std::max<std::size_t>(max_words, 1));
  const std::size_t chunks = (static_cast<std::size_t>(N) + 63) / 64;
  const std::uint64_t tail_mask = N % 64 == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << (N % 64)) - 1;
  code.words.emplace_back(chunks, 0);

  Rng rng(seed, 0x7667);
  CodeWord cand(chunks);
  while (code.words.size() < code.quota && code.attempts < attempt_cap) {
    ++code.attempts;
    for (auto& c : cand) {
      c = rng.bits();
    }
    cand.back() &= tail_mask;
    bool ok = true;
    for (const CodeWord& w : code.words) {
      if (hamming(cand, w) < code.required_distance) {
        ok = false;
        break;
      }
    }
    if (ok) {
      code.words.push_back(cand);
    }
  }
  code.shortfall = code.words.size() < want;
  code.min_hamming = 0;
  if (code.words.size() >= 2) {
    code.min_hamming = N;
    for (std::size_t i = 0; i < code.words.size(); ++i) {
      for (std::size_t j = i + 1; j < code.words.size(); ++j) {
        code.min_hamming = std::min(code.min_hamming, hamming(code.words[i], code.words[j]));
      }
    }
  }
  code.verified = verify_code(code);
  return code;
}

bool verify_code(const PackingCode& code) {
  for (std::size_t i = 0; i < code.words.size(); ++i) {
    for (std::size_t j = i + 1; j < code.words.size(); ++j) {
      int d = 0;
      for (int b = 0; b < code.N; ++b) {
        d += code.bit(i, b) != code.bit(j, b);
      }
      if (d < code.required_distance) {
        return false;
      }
    }
  }
  return true;
}

std::string code_hex(const PackingCode& code) {
  std::string out;
  const int nibbles = (code.N + 3) / 4;
  for (std::size_t w = 0; w < code.words.size(); ++w) {
    for (int k = nibbles - 1; k >= 0; --k) {
      int v = 0;
      for (int b = 3; b >= 0; --b) {
        const int i = 4 * k + b;
        v = (v << 1) | (i < code.N && code.bit(w, i) ? 1 : 0);
      }
      out.push_back("0123456789abcdef"[v]);
    }
    out.push_back('\n');
  }
  return out;
}

BumpParams params_from_word(const CodeWord& w, int m, int M) {
  std::vector<std::uint8_t> theta(static_cast<std::size_t>(m * m));
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (i / 64 >= w.size()) {
      throw std::invalid_argument("params_from_word: word shorter than m^2 bits");
    }
    theta[i] = static_cast<std::uint8_t>((w[i / 64] >> (i % 64)) & 1U);
  }
  return {m, M, std::move(theta)};
}

double bump_mass(int m, int M) {
  const double mm = static_cast<double>(m) * M;
  return (2.0 / 3.0) / (mm * mm);
}

double separation_l2(const BumpParams& p, const BumpParams& q, int per_axis) {
  if (p.m() != q.m() || p.M() != q.M()) {
    throw std::invalid_argument("separation_l2: parameters must share m and M");
  }
  const int res = per_axis > 0 ? std::max(per_axis, 100 * p.m()) : 100 * p.m();
  const double h = 2.0 / res;
  double acc = 0.0;
  for (int i = 0; i < res; ++i) {
    for (int j = 0; j < res; ++j) {
      const Point2 x{-1.0 + (i + 0.5) * h, -1.0 + (j + 0.5) * h};
      const double d = chi_theta(x, p) - chi_theta(x, q);
      acc += d * d;
    }
  }
  return acc * h * h;
}

MonteCarloEstimate kl_gaussian_model(const MapFn& f, const MapFn& g, std::size_t n, double sigma2,
                                     const CovariateLaw& law, std::size_t samples, std::uint64_t seed) {
  if (!(sigma2 > 0.0)) {
    throw std::invalid_argument("kl_gaussian_model: sigma2 must be positive");
  }
  if (samples < 1) {
    throw std::invalid_argument("kl_gaussian_model: need at least one sample");
  }
  const double scale = static_cast<double>(n) / (2.0 * sigma2);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const Point2 x : sample_covariates(law, samples, seed, 0x6b6c)) {
    const Point2 d = f(x) - g(x);
    const double v = scale * (d.x1 * d.x1 + d.x2 * d.x2);
    sum += v;
    sum_sq += v * v;
  }
  const double ns = static_cast<double>(samples);
  const double mean = sum / ns;
  const double var = samples > 1 ? std::max(0.0, (sum_sq - sum * sum / ns) / (ns - 1.0)) : 0.0;
  return {mean, std::sqrt(var / ns), samples, seed};
}

double kl_gaussian_uniform(const MapFn& f, const MapFn& g, std::size_t n, double sigma2, int res) {
  if (!(sigma2 > 0.0)) {
    throw std::invalid_argument("kl_gaussian_uniform: sigma2 must be positive");
  }
  if (res < 1) {
    throw std::invalid_argument("kl_gaussian_uniform: res must be positive");
  }
  const double h = 2.0 / res;
  double acc = 0.0;
  for (int i = 0; i < res; ++i) {
    for (int j = 0; j < res; ++j) {
      const Point2 x{-1.0 + (i + 0.5) * h, -1.0 + (j + 0.5) * h};
      const Point2 d = f(x) - g(x);
      acc += d.x1 * d.x1 + d.x2 * d.x2;
    }
  }
  // Uniform density on I^2 is 1/4.
  return static_cast<double>(n) / (2.0 * sigma2) * acc * h * h / 4.0;
}

BoundReport lower_bound_report(std::size_t n, double sigma2, std::uint64_t seed) {
  if (!(sigma2 > 0.0)) {
    throw std::invalid_argument("lower_bound_report: sigma2 must be positive");
  }
  BoundReport r;
  r.n = n;
  r.sigma2 = sigma2;
  r.seed = seed;
  r.m = static_cast<int>(std::lround(std::pow(static_cast<double>(n), 0.25)));
  r.amplitude = 2 * r.m + 1;
  r.rate_reference = 1.0 / std::sqrt(static_cast<double>(n));
  if (r.m < 2) {
    throw std::invalid_argument("lower_bound_report: n too small, m = round(n^(1/4)) must be at least 2");
  }
  // N = m^2 >= 8 needs m >= 3; m = 2 gives a 4-bit code, padded to the 8-bit minimum.
  const int N = std::max(8, r.m * r.m);
  const PackingCode code = vg_code(N, seed);
  r.code_size = code.words.size();
  r.min_hamming = code.min_hamming;
  r.shortfall = code.shortfall;
  const std::size_t hyps = r.code_size - 1;  // alternatives to f_0
  if (hyps < 2 || !code.verified) {
    r.degenerate = true;
    return r;
  }
  const double mass = bump_mass(r.m, r.amplitude);
  // Only the first m^2 bits select bumps; recount distances on those bits.
  int min_h = r.m * r.m;
  std::vector<int> weight(r.code_size, 0);
  for (std::size_t i = 0; i < r.code_size; ++i) {
    const BumpParams pi = params_from_word(code.words[i], r.m, r.amplitude);
    for (const auto b : pi.theta()) {
      weight[i] += b;
    }
    for (std::size_t j = i + 1; j < r.code_size; ++j) {
      const BumpParams pj = params_from_word(code.words[j], r.m, r.amplitude);
      int h = 0;
      for (std::size_t k = 0; k < pi.theta().size(); ++k) {
        h += pi.theta()[k] != pj.theta()[k];
      }
      min_h = std::min(min_h, h);
    }
  }
  r.min_hamming = min_h;
  r.alpha_sep = min_h * mass / 2.0;
  // KL(P_j, P_0) = n/(2 sigma2) * E_X chi_j(X)^2 with X uniform (density 1/4).
  double kl_sum = 0.0;
  for (std::size_t j = 1; j < r.code_size; ++j) {
    kl_sum += static_cast<double>(n) / (2.0 * sigma2) * 0.25 * weight[j] * mass;
  }
  const double hm = static_cast<double>(hyps);
  const double log_m = std::log(hm);
  r.beta_kl = kl_sum / (hm * log_m);
  r.beta_in_range = r.beta_kl > 0.0 && r.beta_kl < 0.125;
  const double root = std::sqrt(hm);
  r.bound_value = root / (1.0 + root) * (1.0 - 2.0 * r.beta_kl - std::sqrt(2.0 * r.beta_kl / log_m));
  r.degenerate = r.alpha_sep <= 0.0;
  return r;
}

std::string BoundReport::csv_header() {
  return "n,sigma2,seed,m,amplitude,code_size,min_hamming,alpha_sep,beta_kl,bound_value,rate_reference,"
         "alpha_over_rate,beta_in_range,shortfall,degenerate";
}

std::string BoundReport::csv_row() const {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%zu,%.17g,%llu,%d,%d,%zu,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d,%d", n, sigma2,
                static_cast<unsigned long long>(seed), m, amplitude, code_size, min_hamming, alpha_sep, beta_kl,
                bound_value, rate_reference, rate_reference > 0.0 ? alpha_sep / rate_reference : 0.0,
                beta_in_range ? 1 : 0, shortfall ? 1 : 0, degenerate ? 1 : 0);
  return buf;
}

}  // namespace invreg
