#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "invreg/estimator.hpp"
#include "invreg/heatmap.hpp"
#include "invreg/minimax.hpp"
#include "invreg/pilot.hpp"
#include "invreg/rng.hpp"

namespace invreg::cli {

namespace {

namespace fs = std::filesystem;

constexpr const char* kGrayNote = "gray=round(255*(v+1)/2) with v clamped to [-1,1]; row 0 is x2=+1, column 0 is x1=-1";

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
  }
}

std::ofstream open_text(const fs::path& path) {
  std::ofstream os(path);
  if (!os) {
    throw ConfigError("cannot write " + path.string());
  }
  return os;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit_panel(const fs::path& dir, const std::string& stem, const MapFn& f, int res, const std::string& header) {
  for (int j = 1; j <= 2; ++j) {
    const ScalarGrid g = sample_grid([&f, j](Point2 x) { return j == 1 ? f(x).x1 : f(x).x2; }, res);
    const std::string name = stem + "_" + std::to_string(j);
    const std::string h = header + "\npanel=" + stem + " component=" + std::to_string(j);
    write_grid_csv(g, dir / (name + ".csv"), h);
    write_grid_pgm(g, dir / (name + ".pgm"), h + "\n" + kGrayNote);
  }
}

}  // namespace

std::uint64_t replicate_seed(std::uint64_t seed, std::size_t n, int replicate) {
  return Rng(seed, (static_cast<std::uint64_t>(n) << 16) | static_cast<std::uint64_t>(replicate)).bits();
}

SlopeFit ols_loglog(const std::vector<double>& n, const std::vector<double>& risk) {
  SlopeFit fit;
  if (n.size() != risk.size() || n.size() < 2) {
    fit.degenerate = true;
    return fit;
  }
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (!(risk[i] > 1e-12) || !std::isfinite(risk[i]) || !(n[i] > 0.0)) {
      fit.degenerate = true;
      return fit;
    }
    x.push_back(std::log(n[i]));
    y.push_back(std::log(risk[i]));
  }
  const auto k = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / k;
    my += y[i] / k;
  }
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) {
    fit.degenerate = true;
    return fit;
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (x.size() > 2) {
    double sse = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - fit.intercept - fit.slope * x[i];
      sse += r * r;
    }
    fit.slope_se = std::sqrt(sse / (k - 2.0) / sxx);
  }
  return fit;
}

int cmd_gen(const ExperimentConfig& cfg, std::ostream& log) {
  ensure_dir(cfg.output_dir);
  const PlanarMap truth = make_truth(cfg.truth);
  const Dataset d = sample_dataset(truth, cfg.n, cfg.sigma2, cfg.seed);
  const fs::path out = cfg.output_dir / "dataset.csv";
  write_csv(d, out, "config: " + cfg.serialize());
  log << "wrote " << out.string() << " (n=" << d.n() << ")\n";
  return kExitOk;
}

int cmd_fit(const ExperimentConfig& cfg, std::ostream& log) {
  const fs::path data = cfg.data.empty() ? cfg.output_dir / "dataset.csv" : cfg.data;
  if (!fs::exists(data)) {
    throw ConfigError("dataset not found: " + data.string());
  }
  Dataset d;
  try {
    d = read_csv(data);
  } catch (const ParseError& e) {
    throw ConfigError(data.string() + ": " + e.what());
  }
  if (cfg.k > d.n()) {
    throw ConfigError("k exceeds the dataset size");
  }
  ensure_dir(cfg.output_dir);
  const PlanarMap truth = make_truth(cfg.truth);
  std::vector<int> ts = cfg.t_list;
  if (ts.empty()) {
    ts.push_back(cfg.t_override ? *cfg.t_override : grid_resolution(d.n(), cfg.alpha_plus_beta));
  }
  const PlanarMap pilot = knn_fit(d, cfg.k);
  for (const int t : ts) {
    const InvertibleEstimator est = InvertibleEstimator::from_pilot(pilot, t);
    const std::string header = "config: " + cfg.serialize() + "\nt=" + std::to_string(t);
    const std::string prefix = "t" + std::to_string(t) + "_";
    emit_panel(cfg.output_dir, prefix + "truth", truth.eval, cfg.resolution, header);
    emit_panel(cfg.output_dir, prefix + "pilot", pilot.eval, cfg.resolution, header);
    emit_panel(cfg.output_dir, prefix + "ghat", [&est](Point2 x) { return est.g_hat_at(x); }, cfg.resolution, header);
    emit_panel(cfg.output_dir, prefix + "gdagger", [&est](Point2 x) { return est.g_dagger_at(x); }, cfg.resolution,
               header);
    emit_panel(cfg.output_dir, prefix + "fhat", [&est](Point2 x) { return est.evaluate(x); }, cfg.resolution, header);

    auto rot = open_text(cfg.output_dir / (prefix + "rotation.txt"));
    rot << "# " << header.substr(0, header.find('\n')) << '\n' << est.rotation().dump();
    if (!est.constant_zero()) {
      est.mesh().write_csv(cfg.output_dir / (prefix + "mesh.csv"), header);
    }
    RiskOptions ro;
    ro.samples = cfg.mc_samples;
    ro.seed = cfg.seed;
    ro.inverse_sampling = cfg.inverse_sampling;
    const RiskReport risk = inverse_risk(est, truth, ro);
    auto rk = open_text(cfg.output_dir / (prefix + "risk.txt"));
    rk << "# config: " << cfg.serialize() << "\nt=" << t << '\n' << risk.to_kv();
    log << "t=" << t << " twisted=" << (est.constant_zero() ? 0 : est.mesh().twisted_count())
        << " total_inverse_risk=" << fmt(risk.total_inverse_risk) << '\n';
  }
  return kExitOk;
}

int cmd_sweep(const ExperimentConfig& cfg, std::ostream& log) {
  ensure_dir(cfg.output_dir);
  const PlanarMap truth = make_truth(cfg.truth);
  const fs::path rows_path = cfg.output_dir / "sweep.csv";
  auto rows = open_text(rows_path);
  rows << "# config: " << cfg.serialize() << '\n'
       << "n,replicate,forward_l2,total_inverse_risk,sup_error,nonminv_area,t_used\n";
  std::vector<double> ns;
  std::vector<double> means;
  for (const std::size_t n : cfg.n_list) {
    double acc = 0.0;
    for (int rep = 0; rep < cfg.replicates; ++rep) {
      try {
        const std::uint64_t s = replicate_seed(cfg.seed, n, rep);
        const Dataset d = sample_dataset(truth, n, cfg.sigma2, s);
        FitOptions fo;
        fo.k = cfg.k;
        fo.alpha_plus_beta = cfg.alpha_plus_beta;
        fo.t_override = cfg.t_override;
        const InvertibleEstimator est = InvertibleEstimator::fit(d, fo);
        RiskOptions ro;
        ro.samples = cfg.mc_samples;
        ro.seed = s;
        ro.inverse_sampling = cfg.inverse_sampling;
        const RiskReport r = inverse_risk(est, truth, ro);
        rows << n << ',' << rep << ',' << fmt(r.forward_l2) << ',' << fmt(r.total_inverse_risk) << ','
             << fmt(r.sup_error) << ',' << fmt(r.nonminv_area) << ',' << est.t() << '\n'
             << std::flush;
        acc += r.total_inverse_risk;
      } catch (const std::exception& e) {
        log << "replicate n=" << n << " rep=" << rep << " failed: " << e.what() << '\n';
        return kExitPartial;
      }
    }
    ns.push_back(static_cast<double>(n));
    means.push_back(acc / cfg.replicates);
  }
  const SlopeFit fit = ols_loglog(ns, means);
  auto sum = open_text(cfg.output_dir / "sweep_summary.txt");
  sum << "# config: " << cfg.serialize() << '\n'
      << "slope=" << fmt(fit.slope) << "\nintercept=" << fmt(fit.intercept) << "\nslope_se=" << fmt(fit.slope_se)
      << "\nreference_slope=-0.5\ndegenerate=" << (fit.degenerate ? 1 : 0) << '\n';
  log << "slope=" << fmt(fit.slope) << " (reference -0.5) se=" << fmt(fit.slope_se)
      << (fit.degenerate ? " degenerate" : "") << '\n';
  return kExitOk;
}

int cmd_lowerbound(const ExperimentConfig& cfg, std::ostream& log) {
  if (!(cfg.sigma2 > 0.0)) {
    throw ConfigError("lowerbound needs sigma2 > 0");
  }
  if (std::lround(std::pow(static_cast<double>(cfg.n), 0.25)) < 2) {
    throw ConfigError("lowerbound needs round(n^(1/4)) >= 2");
  }
  ensure_dir(cfg.output_dir);
  const BoundReport r = lower_bound_report(cfg.n, cfg.sigma2, cfg.seed);
  auto os = open_text(cfg.output_dir / "lowerbound.csv");
  os << "# config: " << cfg.serialize() << '\n' << BoundReport::csv_header() << '\n' << r.csv_row() << '\n';
  const PackingCode code = vg_code(std::max(8, r.m * r.m), cfg.seed);
  auto hex = open_text(cfg.output_dir / "lowerbound_code.hex");
  hex << "# config: " << cfg.serialize() << '\n' << code_hex(code);
  log << "m=" << r.m << " code_size=" << r.code_size << " alpha_sep=" << fmt(r.alpha_sep)
      << " beta=" << fmt(r.beta_kl) << (r.beta_in_range ? "" : " (outside (0,1/8))")
      << " bound=" << fmt(r.bound_value) << '\n';
  return kExitOk;
}

int cmd_sawtooth(const ExperimentConfig& cfg, std::ostream& log) {
  if (cfg.d_list.empty()) {
    throw ConfigError("d_list must not be empty");
  }
  ensure_dir(cfg.output_dir);
  const PlanarMap truth = identity_map();
  auto os = open_text(cfg.output_dir / "sawtooth.csv");
  os << "# config: " << cfg.serialize() << '\n'
     << "D,sup_error,sup_bound,forward_l2,inverse_l2_sq,psi_term,total_inverse_risk,nonminv_area\n";
  for (const int D : cfg.d_list) {
    const PlanarMap saw = sawtooth_estimator(D);
    RiskOptions ro;
    ro.samples = cfg.mc_samples;
    ro.seed = cfg.seed;
    ro.sup_resolution = 1001;
    const RiskReport r = inverse_risk(saw.eval, sawtooth_inverse(D), truth, ro);
    os << D << ',' << fmt(r.sup_error) << ',' << fmt(2.0 / D) << ',' << fmt(r.forward_l2) << ','
       << fmt(r.inverse_l2_sq) << ',' << fmt(r.psi_term) << ',' << fmt(r.total_inverse_risk) << ','
       << fmt(r.nonminv_area) << '\n';
    log << "D=" << D << " sup_error=" << fmt(r.sup_error) << " total_inverse_risk=" << fmt(r.total_inverse_risk)
        << '\n';
  }
  return kExitOk;
}

}  // namespace invreg::cli
