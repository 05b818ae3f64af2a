#include "invreg/synth.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "invreg/rng.hpp"

namespace invreg {

void validate(const CovariateLaw& law) {
  if (law.kind == CovariateLaw::Kind::Rejection) {
    if (!law.density) {
      throw std::invalid_argument("covariate law: rejection sampling needs a density");
    }
    if (!(law.density_bound > 0.0) || !std::isfinite(law.density_bound)) {
      throw std::invalid_argument("covariate law: density bound must be positive and finite");
    }
  }
}

std::vector<Point2> sample_covariates(const CovariateLaw& law, std::size_t n, std::uint64_t seed,
                                      std::uint64_t stream) {
  validate(law);
  Rng rng(seed, stream);
  std::vector<Point2> xs;
  xs.reserve(n);
  while (xs.size() < n) {
    const Point2 x = rng.uniform_square();
    if (law.kind == CovariateLaw::Kind::Uniform || rng.uniform() * law.density_bound < law.density(x)) {
      xs.push_back(x);
    }
  }
  return xs;
}

Dataset sample_dataset(const PlanarMap& truth, std::size_t n, double sigma2, std::uint64_t seed,
                       const CovariateLaw& law) {
  if (n < 1) {
    throw std::invalid_argument("sample_dataset: n must be positive");
  }
  if (!(sigma2 >= 0.0)) {
    throw std::invalid_argument("sample_dataset: sigma2 must be non-negative");
  }
  Dataset d;
  d.sigma2 = sigma2;
  d.seed = seed;
  d.x = sample_covariates(law, n, seed, 1);
  d.y.reserve(n);
  Rng noise(seed, 2);
  const double sd = std::sqrt(sigma2);
  for (const Point2 x : d.x) {
    Point2 y = truth(x);
    if (sigma2 > 0.0) {
      const auto [e1, e2] = noise.normal_pair();
      y += Point2{sd * e1, sd * e2};
    }
    d.y.push_back(y);
  }
  return d;
}

void write_csv(const Dataset& d, const std::filesystem::path& path, const std::string& comment) {
  std::ofstream os(path);
  if (!os) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "# sigma2=%.17g seed=%llu\n", d.sigma2, static_cast<unsigned long long>(d.seed));
  os << buf;
  std::istringstream extra(comment);
  for (std::string line; std::getline(extra, line);) {
    os << "# " << line << '\n';
  }
  os << "x1,x2,y1,y2\n";
  for (std::size_t i = 0; i < d.n(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", d.x[i].x1, d.x[i].x2, d.y[i].x1, d.y[i].x2);
    os << buf;
  }
}

namespace {

double parse_double(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError(line, "not a number: '" + std::string(s) + "'");
  }
  if (!std::isfinite(v)) {
    throw ParseError(line, "non-finite value");
  }
  return v;
}

void parse_comment(std::string_view body, Dataset& d, std::size_t line) {
  std::istringstream is{std::string(body)};
  for (std::string tok; is >> tok;) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) {
      continue;
    }
    const std::string key = tok.substr(0, eq);
    const std::string val = tok.substr(eq + 1);
    if (key == "sigma2") {
      d.sigma2 = parse_double(val, line);
    } else if (key == "seed") {
      std::uint64_t s = 0;
      const auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), s);
      if (ec != std::errc{} || ptr != val.data() + val.size()) {
        throw ParseError(line, "bad seed '" + val + "'");
      }
      d.seed = s;
    }
  }
}

}  // namespace

Dataset read_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) {
    throw std::runtime_error("cannot open " + path.string());
  }
  Dataset d;
  bool header_seen = false;
  std::size_t lineno = 0;
  for (std::string line; std::getline(is, line);) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    if (line.front() == '#') {
      if (!header_seen) {
        parse_comment(std::string_view(line).substr(1), d, lineno);
      }
      continue;
    }
    if (!header_seen) {
      if (line != "x1,x2,y1,y2") {
        throw ParseError(lineno, "expected header 'x1,x2,y1,y2'");
      }
      header_seen = true;
      continue;
    }
    std::array<double, 4> v{};
    std::size_t col = 0;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      if (col == 4) {
        throw ParseError(lineno, "expected 4 columns, found more");
      }
      const auto end = comma == std::string::npos ? line.size() : comma;
      v[col++] = parse_double(std::string_view(line).substr(start, end - start), lineno);
      if (comma == std::string::npos) {
        break;
      }
      start = comma + 1;
    }
    if (col != 4) {
      throw ParseError(lineno, "expected 4 columns, found " + std::to_string(col));
    }
    const Point2 x{v[0], v[1]};
    if (!in_unit_square(x)) {
      throw ParseError(lineno, "covariate outside [-1,1]^2");
    }
    d.x.push_back(x);
    d.y.push_back({v[2], v[3]});
  }
  if (!header_seen) {
    throw ParseError(lineno, "missing header 'x1,x2,y1,y2'");
  }
  return d;
}

}  // namespace invreg
