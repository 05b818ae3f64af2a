#include "config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace invreg::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError("bad value for " + key + ": '" + v + "'");
  }
  return out;
}

template <typename T>
std::vector<T> parse_list(const std::string& key, const std::string& v) {
  std::vector<T> out;
  std::stringstream ss(v);
  for (std::string item; std::getline(ss, item, ',');) {
    item = trim(item);
    if (!item.empty()) {
      out.push_back(parse_number<T>(key, item));
    }
  }
  return out;
}

template <typename T>
std::string join(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += (i ? "," : "") + std::to_string(v[i]);
  }
  return s;
}

}  // namespace

void ExperimentConfig::set(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "truth") {
    truth = v;
  } else if (key == "n") {
    n = parse_number<std::size_t>(key, v);
  } else if (key == "sigma2") {
    sigma2 = parse_number<double>(key, v);
  } else if (key == "k") {
    k = parse_number<std::size_t>(key, v);
  } else if (key == "alpha_plus_beta") {
    alpha_plus_beta = parse_number<double>(key, v);
  } else if (key == "t") {
    if (v.empty() || v == "auto") {
      t_override.reset();
    } else {
      t_override = parse_number<int>(key, v);
    }
  } else if (key == "t_list") {
    t_list = parse_list<int>(key, v);
  } else if (key == "mc_samples") {
    mc_samples = parse_number<std::size_t>(key, v);
  } else if (key == "seed") {
    seed = parse_number<std::uint64_t>(key, v);
  } else if (key == "output_dir") {
    output_dir = v;
  } else if (key == "data") {
    data = v;
  } else if (key == "resolution") {
    resolution = parse_number<int>(key, v);
  } else if (key == "n_list") {
    n_list = parse_list<std::size_t>(key, v);
  } else if (key == "replicates") {
    replicates = parse_number<int>(key, v);
  } else if (key == "d_list") {
    d_list = parse_list<int>(key, v);
  } else if (key == "inverse_sampling") {
    if (v == "covariate") {
      inverse_sampling = InverseSampling::Covariate;
    } else if (v == "truth_image") {
      inverse_sampling = InverseSampling::TruthImage;
    } else {
      throw ConfigError("inverse_sampling must be covariate or truth_image");
    }
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

void ExperimentConfig::validate() const {
  make_truth(truth);
  if (n < 2) {
    throw ConfigError("n must be at least 2");
  }
  if (!(sigma2 >= 0.0)) {
    throw ConfigError("sigma2 must be non-negative");
  }
  if (k < 1) {
    throw ConfigError("k must be positive");
  }
  if (!(alpha_plus_beta >= 0.0)) {
    throw ConfigError("alpha_plus_beta must be non-negative");
  }
  if (t_override && *t_override < 1) {
    throw ConfigError("t must be a positive integer");
  }
  for (const int t : t_list) {
    if (t < 1) {
      throw ConfigError("t_list entries must be positive integers");
    }
  }
  if (mc_samples < 1) {
    throw ConfigError("mc_samples must be positive");
  }
  if (resolution < 2) {
    throw ConfigError("resolution must be at least 2");
  }
  if (replicates < 1) {
    throw ConfigError("replicates must be positive");
  }
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 2 || (i > 0 && n_list[i] <= n_list[i - 1])) {
      throw ConfigError("n_list must be strictly ascending with entries >= 2");
    }
  }
  for (const int d : d_list) {
    if (d < 1) {
      throw ConfigError("d_list entries must be positive");
    }
  }
}

std::string ExperimentConfig::serialize() const {
  char sig[64];
  char ab[64];
  std::snprintf(sig, sizeof sig, "%.17g", sigma2);
  std::snprintf(ab, sizeof ab, "%.17g", alpha_plus_beta);
  std::string s = "truth=" + truth + " n=" + std::to_string(n) + " sigma2=" + sig + " k=" + std::to_string(k) +
                  " alpha_plus_beta=" + ab + " t=" + (t_override ? std::to_string(*t_override) : "auto") +
                  " t_list=" + join(t_list) + " mc_samples=" + std::to_string(mc_samples) +
                  " seed=" + std::to_string(seed) + " output_dir=" + output_dir.string() + " data=" + data.string() +
                  " resolution=" + std::to_string(resolution) + " n_list=" + join(n_list) +
                  " replicates=" + std::to_string(replicates) + " d_list=" + join(d_list) + " inverse_sampling=" +
                  (inverse_sampling == InverseSampling::Covariate ? "covariate" : "truth_image");
  return s;
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) {
    throw ConfigError("cannot read config file " + path.string());
  }
  std::map<std::string, std::string> out;
  std::size_t lineno = 0;
  for (std::string line; std::getline(is, line);) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
    }
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

ExperimentConfig resolve_config(const std::map<std::string, std::string>& file_entries,
                                const std::map<std::string, std::string>& flag_entries) {
  ExperimentConfig cfg;
  for (const auto& [k, v] : file_entries) {
    cfg.set(k, v);
  }
  for (const auto& [k, v] : flag_entries) {
    cfg.set(k, v);
  }
  cfg.validate();
  return cfg;
}

PlanarMap make_truth(const std::string& name) {
  if (name == "identity") {
    return identity_map();
  }
  if (name == "swirl") {
    return swirl_truth();
  }
  const std::string prefix = "family:";
  if (name.rfind(prefix, 0) == 0) {
    const auto seed = parse_number<std::uint64_t>("truth", name.substr(prefix.size()));
    return family_map(BumpParams::random(3, 7, seed), BumpParams::random(3, 7, seed + 1));
  }
  throw ConfigError("unknown truth '" + name + "' (identity, swirl, family:<seed>)");
}

}  // namespace invreg::cli
