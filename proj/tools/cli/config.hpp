#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "invreg/maps.hpp"
#include "invreg/risk.hpp"

namespace invreg::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string truth = "swirl";  // identity | swirl | family:<seed>
  std::size_t n = 10000;
  double sigma2 = 1e-3;
  std::size_t k = 10;
  double alpha_plus_beta = 1.0;
  std::optional<int> t_override;
  std::vector<int> t_list;  // fit: one estimator per entry; empty means {t_override or automatic t}
  std::size_t mc_samples = 100000;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = "out";
  std::filesystem::path data;  // dataset for fit
  int resolution = 201;        // heatmap grid
  std::vector<std::size_t> n_list{512, 1024, 2048, 4096, 8192, 16384};
  int replicates = 5;
  std::vector<int> d_list{10, 100, 1000};
  InverseSampling inverse_sampling = InverseSampling::Covariate;

  /// Sets one field from its textual form. Throws ConfigError on unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
  /// Throws ConfigError when a field is out of range.
  void validate() const;
  /// Single line "key=value key=value ..." covering every field.
  std::string serialize() const;
};

/// Reads key=value lines ('#' starts a comment) into a key -> value map.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

/// Defaults, then the file entries, then the flag entries (flags win).
ExperimentConfig resolve_config(const std::map<std::string, std::string>& file_entries,
                                const std::map<std::string, std::string>& flag_entries);

/// identity, swirl, or family:<seed> (m = 3, M = 7, independent matrices per component).
PlanarMap make_truth(const std::string& name);

}  // namespace invreg::cli
