#include "app.hpp"

#include <CLI11.hpp>
#include <functional>
#include <map>
#include <string>

#include "commands.hpp"
#include "config.hpp"

namespace invreg::cli {

namespace {

struct FlagSpec {
  const char* flag;
  const char* key;
  const char* help;
};

constexpr FlagSpec kFlags[] = {
    {"--truth", "truth", "identity | swirl | family:<seed>"},
    {"--n", "n", "sample size"},
    {"--sigma2", "sigma2", "noise variance per component"},
    {"--k", "k", "neighbours in the k-NN pilot"},
    {"--alpha-beta", "alpha_plus_beta", "exponent alpha+beta of the automatic grid rule"},
    {"--t", "t", "grid resolution t (positive integer or 'auto')"},
    {"--t-list", "t_list", "comma-separated resolutions for fit, e.g. 1,3,5"},
    {"--mc-samples", "mc_samples", "Monte Carlo draws for risks"},
    {"--seed", "seed", "base seed"},
    {"--out", "output_dir", "output directory"},
    {"--data", "data", "dataset CSV for fit"},
    {"--res", "resolution", "heatmap grid resolution"},
    {"--n-list", "n_list", "comma-separated ascending sample sizes for sweep"},
    {"--replicates", "replicates", "replicates per sample size"},
    {"--d-list", "d_list", "comma-separated tooth counts for sawtooth"},
    {"--inverse-sampling", "inverse_sampling", "covariate | truth_image"},
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invertible regression on [-1,1]^2: data generation, fitting, sweeps and lower bounds"};
  app.require_subcommand(1);

  std::map<std::string, std::string> flags;
  std::string config_path;
  using Command = int (*)(const ExperimentConfig&, std::ostream&);
  Command chosen = nullptr;

  const std::pair<const char*, Command> commands[] = {
      {"gen", cmd_gen}, {"fit", cmd_fit}, {"sweep", cmd_sweep}, {"lowerbound", cmd_lowerbound}, {"sawtooth", cmd_sawtooth}};
  const std::map<std::string, std::string> help{
      {"gen", "sample a dataset from the chosen truth"},
      {"fit", "fit the invertible estimator and export heatmaps"},
      {"sweep", "risk versus n with a log-log slope fit"},
      {"lowerbound", "packing-based lower-bound report"},
      {"sawtooth", "sup-norm versus inverse risk of the sawtooth pilot"}};
  for (const auto& [name, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--config", config_path, "key=value config file (flags override it)");
    for (const FlagSpec& f : kFlags) {
      const std::string key = f.key;
      sub->add_option_function<std::string>(f.flag, [&flags, key](const std::string& v) { flags[key] = v; }, f.help);
    }
    sub->callback([&chosen, fn = fn] { chosen = fn; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }

  try {
    const auto file = config_path.empty() ? std::map<std::string, std::string>{} : read_config_file(config_path);
    const ExperimentConfig cfg = resolve_config(file, flags);
    return chosen(cfg, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitPartial;
  }
}

}  // namespace invreg::cli
