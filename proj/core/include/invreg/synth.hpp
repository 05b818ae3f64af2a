#pragma once

// Regression datasets Y_i = f*(X_i) + eps_i with eps_i ~ N(0, sigma2 I_2), and
// their CSV persistence.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "invreg/geom.hpp"
#include "invreg/maps.hpp"

namespace invreg {

struct Dataset {
  std::vector<Point2> x;
  std::vector<Point2> y;
  double sigma2 = 0.0;
  std::uint64_t seed = 0;

  std::size_t n() const { return x.size(); }
  friend bool operator==(const Dataset&, const Dataset&) = default;
};

struct CovariateLaw {
  enum class Kind { Uniform, Rejection };

  Kind kind = Kind::Uniform;
  std::function<double(Point2)> density;  // unnormalized, Rejection only
  double density_bound = 1.0;             // sup of density over I^2

  static CovariateLaw uniform() { return {}; }
  static CovariateLaw rejection(std::function<double(Point2)> density, double bound) {
    return {Kind::Rejection, std::move(density), bound};
  }
};

/// Throws std::invalid_argument for a rejection law without density or with a non-positive bound.
void validate(const CovariateLaw& law);

/// Draws X ~ law using Rng(seed, stream). Deterministic in (seed, stream).
std::vector<Point2> sample_covariates(const CovariateLaw& law, std::size_t n, std::uint64_t seed,
                                      std::uint64_t stream = 0);

Dataset sample_dataset(const PlanarMap& truth, std::size_t n, double sigma2, std::uint64_t seed,
                       const CovariateLaw& law = CovariateLaw::uniform());

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Writes "# sigma2=<v> seed=<s>" plus any extra comment lines, the header "x1,x2,y1,y2" and
/// one row per sample with 17 significant digits.
void write_csv(const Dataset& d, const std::filesystem::path& path, const std::string& comment = {});

/// Inverse of write_csv. Comment lines are skipped except for the sigma2/seed fields.
/// Throws ParseError with a 1-based line number on malformed input.
Dataset read_csv(const std::filesystem::path& path);

}  // namespace invreg
