#include "thermoch/config.hpp"

#include "thermoch/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace thermoch {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double to_double(std::string_view s) {
  s = trim(s);
  if (s.starts_with('+')) s.remove_prefix(1);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || (ec != std::errc{} && ec != std::errc::result_out_of_range) || ptr != s.data() + s.size())
    throw ConfigurationError("expected a number, got '" + std::string(s) + "'");
  return x;
}

int to_int(std::string_view s) {
  s = trim(s);
  int k = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), k);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw ConfigurationError("expected an integer, got '" + std::string(s) + "'");
  return k;
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  if (out.size() == 1 && out[0].empty()) out.clear();
  return out;
}

std::vector<double> to_doubles(std::string_view s) {
  std::vector<double> out;
  for (auto item : split_list(s)) out.push_back(to_double(item));
  return out;
}

PotentialKind to_potential_kind(std::string_view s) {
  for (auto k : {PotentialKind::Regular, PotentialKind::Logarithmic, PotentialKind::DoubleObstacle})
    if (s == to_string(k)) return k;
  throw ConfigurationError("unknown potential kind '" + std::string(s) +
                           "' (regular, logarithmic, double-obstacle)");
}

TimeScheme to_scheme(std::string_view s) {
  for (auto k : {TimeScheme::SemiImplicit, TimeScheme::BackwardEuler})
    if (s == to_string(k)) return k;
  throw ConfigurationError("unknown scheme '" + std::string(s) + "' (semi-implicit, backward-euler)");
}

ExperimentKind to_experiment(std::string_view s) {
  for (auto k : {ExperimentKind::Simulate, ExperimentKind::Verify, ExperimentKind::Converge, ExperimentKind::Depend})
    if (s == to_string(k)) return k;
  throw ConfigurationError("unknown experiment kind '" + std::string(s) + "'");
}

using Setter = std::function<void(RunConfig&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table{
      {"domain.dim", [](RunConfig& c, std::string_view v) { c.domain.dim = to_int(v); }},
      {"domain.lengths", [](RunConfig& c, std::string_view v) { c.domain.lengths = to_doubles(v); }},
      {"domain.grid", [](RunConfig& c, std::string_view v) { c.domain.grid = to_int(v); }},
      {"domain.n_modes", [](RunConfig& c, std::string_view v) { c.domain.n_modes = to_int(v); }},
      {"physics.gamma", [](RunConfig& c, std::string_view v) { c.physics.gamma = to_double(v); }},
      {"physics.a", [](RunConfig& c, std::string_view v) { c.physics.a = to_double(v); }},
      {"physics.b", [](RunConfig& c, std::string_view v) { c.physics.b = to_double(v); }},
      {"physics.kappa1", [](RunConfig& c, std::string_view v) { c.physics.kappa1 = to_double(v); }},
      {"physics.kappa2", [](RunConfig& c, std::string_view v) { c.physics.kappa2 = to_double(v); }},
      {"physics.lambda", [](RunConfig& c, std::string_view v) { c.physics.lambda_latent = to_double(v); }},
      {"potential.kind", [](RunConfig& c, std::string_view v) { c.potential.kind = to_potential_kind(v); }},
      {"potential.c1", [](RunConfig& c, std::string_view v) { c.potential.c1 = to_double(v); }},
      {"potential.c2", [](RunConfig& c, std::string_view v) { c.potential.c2 = to_double(v); }},
      {"potential.eps", [](RunConfig& c, std::string_view v) { c.potential.eps = to_double(v); }},
      {"data.f", [](RunConfig& c, std::string_view v) { c.data.f = DataExpr::parse(v); }},
      {"data.g", [](RunConfig& c, std::string_view v) { c.data.g = DataExpr::parse(v); }},
      {"data.phi0", [](RunConfig& c, std::string_view v) { c.data.phi0 = DataExpr::parse(v); }},
      {"data.w0", [](RunConfig& c, std::string_view v) { c.data.w0 = DataExpr::parse(v); }},
      {"data.w1", [](RunConfig& c, std::string_view v) { c.data.w1 = DataExpr::parse(v); }},
      {"time.T_final", [](RunConfig& c, std::string_view v) { c.time.T_final = to_double(v); }},
      {"time.dt", [](RunConfig& c, std::string_view v) { c.time.dt = to_double(v); }},
      {"time.scheme", [](RunConfig& c, std::string_view v) { c.time.scheme = to_scheme(v); }},
      {"time.stabilization", [](RunConfig& c, std::string_view v) { c.time.stabilization = to_double(v); }},
      {"experiment.kind", [](RunConfig& c, std::string_view v) { c.experiment.kind = to_experiment(v); }},
      {"experiment.schedule", [](RunConfig& c, std::string_view v) { c.experiment.schedule = to_doubles(v); }},
      {"experiment.samples", [](RunConfig& c, std::string_view v) { c.experiment.samples = to_int(v); }},
      {"experiment.h", [](RunConfig& c, std::string_view v) { c.experiment.h = SpatialExpr::parse(v); }},
      {"output.directory", [](RunConfig& c, std::string_view v) { c.output.directory = std::string(v); }},
      {"output.formats",
       [](RunConfig& c, std::string_view v) {
         c.output.formats.clear();
         for (auto item : split_list(v)) {
           if (item != "csv" && item != "json") throw ConfigurationError("unknown format '" + std::string(item) + "'");
           c.output.formats.emplace_back(item);
         }
       }},
  };
  return table;
}

void check_ranges(const RunConfig& c) {
  make_domain(c).validate();
  const int capacity = SpectralBasis::capacity(make_domain(c));
  if (c.domain.n_modes < 1 || c.domain.n_modes > capacity) {
    throw ConfigurationError("domain.n_modes = " + std::to_string(c.domain.n_modes) + " outside [1, " +
                             std::to_string(capacity) + "] for the chosen grid");
  }
  if (!(c.potential.eps > 0.0 && c.potential.eps < 1.0))
    throw ConfigurationError("potential.eps = " + format_double(c.potential.eps) + " must lie in (0, 1)");
  if (c.potential.kind == PotentialKind::Logarithmic && !(c.potential.c1 > 1.0))
    throw ConfigurationError("potential.c1 = " + format_double(c.potential.c1) + " must exceed 1");
  if (c.potential.kind == PotentialKind::DoubleObstacle && !(c.potential.c2 > 0.0))
    throw ConfigurationError("potential.c2 = " + format_double(c.potential.c2) + " must be positive");
  if (!(c.time.T_final > 0.0) || !std::isfinite(c.time.T_final))
    throw ConfigurationError("time.T_final must be positive and finite");
  if (!(c.time.dt > 0.0) || !(c.time.dt <= c.time.T_final))
    throw ConfigurationError("time.dt must lie in (0, T_final]");
  if (c.time.stabilization && !(*c.time.stabilization >= 0.0))
    throw ConfigurationError("time.stabilization must be nonnegative");
  if (c.experiment.samples < 1) throw ConfigurationError("experiment.samples must be positive");
  for (double s : c.experiment.schedule)
    if (!(s > 0.0) || !std::isfinite(s)) throw ConfigurationError("experiment.schedule entries must be positive");
  if (c.experiment.h.max_index(1) != 0 && c.domain.dim == 1)
    throw ConfigurationError("experiment.h uses a second mode index on a 1-D domain");
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_double(v[i]);
  return out;
}

} // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
  case ExperimentKind::Simulate: return "simulate";
  case ExperimentKind::Verify: return "verify";
  case ExperimentKind::Converge: return "converge";
  case ExperimentKind::Depend: return "depend";
  }
  return "unknown";
}

RunConfig read_config(std::string_view text) {
  static const std::set<std::string, std::less<>> sections{"domain", "physics", "potential", "data",
                                                           "time",   "experiment", "output"};
  RunConfig c;
  std::string section;
  std::set<std::string> seen_sections;
  std::set<std::string> seen_keys;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!sections.contains(section)) throw ParseError(line_no, "unknown section [" + section + "]");
      if (!seen_sections.insert(section).second) throw ParseError(line_no, "duplicate section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    if (section.empty()) throw ParseError(line_no, "key outside of any section");
    const std::string key = section + "." + std::string(trim(line.substr(0, eq)));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ParseError(line_no, "unknown key '" + key + "'");
    if (!seen_keys.insert(key).second) throw ParseError(line_no, "duplicate key '" + key + "'");
    try {
      it->second(c, trim(line.substr(eq + 1)));
    } catch (const ConfigurationError& e) {
      throw ParseError(line_no, key + ": " + e.what());
    }
  }
  check_ranges(c);
  return c;
}

ValidationReport validate(const RunConfig& config) {
  ValidationReport report;
  auto& errors = report.errors;
  const auto& p = config.physics;
  const std::pair<const char*, double> positive[] = {
      {"gamma", p.gamma}, {"b", p.b}, {"kappa1", p.kappa1}, {"kappa2", p.kappa2}, {"lambda", p.lambda_latent}};
  for (const auto& [name, value] : positive) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      errors.push_back(std::string("(2.5) positive constants: ") + name + " = " + format_double(value) +
                       " must be positive and finite");
    }
  }
  if (!std::isfinite(p.a)) errors.push_back("(2.5) positive constants: a = " + format_double(p.a) + " must be finite");
  else if (!(p.a > 0.0))
    report.warnings.push_back("a = " + format_double(p.a) + " is not positive; accepted, the scheme does not use its sign");

  const auto domain = std::make_shared<const BoxDomain>(make_domain(config));
  const std::pair<const char*, const DataExpr*> sources[] = {{"f", &config.data.f}, {"g", &config.data.g}};
  bool sources_ok = true;
  for (const auto& [name, expr] : sources) {
    if (!expr->build(domain).all_finite()) {
      errors.push_back(std::string("(2.11) data regularity: ") + name + " is not finite on the grid");
      sources_ok = false;
    }
  }
  const std::pair<const char*, const DataExpr*> initial[] = {
      {"phi0", &config.data.phi0}, {"w0", &config.data.w0}, {"w1", &config.data.w1}};
  bool initial_ok = true;
  for (const auto& [name, expr] : initial) {
    if (!expr->time_independent()) {
      errors.push_back(std::string("(2.12) initial data: ") + name + " must not depend on time");
      initial_ok = false;
    } else if (!expr->build(domain).all_finite()) {
      errors.push_back(std::string("(2.12) initial data: ") + name + " is not finite on the grid");
      initial_ok = false;
    }
  }

  if (sources_ok && initial_ok && p.gamma > 0.0 && std::isfinite(p.gamma)) {
    ProblemData d;
    d.params = p;
    d.potential = make_potential(config.potential);
    d.f = config.data.f.build(domain);
    d.phi0 = config.data.phi0.pieces[0].evaluate(domain);
    for (const auto& issue : compatibility_issues(d)) {
      std::string m = "(2.14) compatibility: " + issue.quantity + " = " + format_double(issue.value) +
                      " not interior to D(beta) = " + d.potential.domain_string();
      if (issue.quantity.find("rho") != std::string::npos) m += " (rho = ||f||_inf/gamma = " + format_double(d.rho()) + ")";
      errors.push_back(std::move(m));
    }
  }
  return report;
}

RunConfig parse_config_text(std::string_view text) {
  RunConfig c = read_config(text);
  auto report = validate(c);
  if (!report.errors.empty()) throw ValidationError(std::move(report.errors));
  return c;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string to_ini(const RunConfig& c) {
  std::ostringstream os;
  os << "[domain]\n"
     << "dim = " << c.domain.dim << "\n"
     << "lengths = " << join(c.domain.lengths) << "\n"
     << "grid = " << c.domain.grid << "\n"
     << "n_modes = " << c.domain.n_modes << "\n\n";
  os << "[physics]\n"
     << "gamma = " << format_double(c.physics.gamma) << "\n"
     << "a = " << format_double(c.physics.a) << "\n"
     << "b = " << format_double(c.physics.b) << "\n"
     << "kappa1 = " << format_double(c.physics.kappa1) << "\n"
     << "kappa2 = " << format_double(c.physics.kappa2) << "\n"
     << "lambda = " << format_double(c.physics.lambda_latent) << "\n\n";
  os << "[potential]\n"
     << "kind = " << to_string(c.potential.kind) << "\n"
     << "c1 = " << format_double(c.potential.c1) << "\n"
     << "c2 = " << format_double(c.potential.c2) << "\n"
     << "eps = " << format_double(c.potential.eps) << "\n\n";
  os << "[data]\n"
     << "f = " << c.data.f.to_string() << "\n"
     << "g = " << c.data.g.to_string() << "\n"
     << "phi0 = " << c.data.phi0.to_string() << "\n"
     << "w0 = " << c.data.w0.to_string() << "\n"
     << "w1 = " << c.data.w1.to_string() << "\n\n";
  os << "[time]\n"
     << "T_final = " << format_double(c.time.T_final) << "\n"
     << "dt = " << format_double(c.time.dt) << "\n"
     << "scheme = " << to_string(c.time.scheme) << "\n";
  if (c.time.stabilization) os << "stabilization = " << format_double(*c.time.stabilization) << "\n";
  os << "\n[experiment]\n"
     << "kind = " << to_string(c.experiment.kind) << "\n"
     << "schedule = " << join(c.experiment.schedule) << "\n"
     << "samples = " << c.experiment.samples << "\n"
     << "h = " << c.experiment.h.to_string() << "\n\n";
  os << "[output]\n"
     << "directory = " << c.output.directory << "\n"
     << "formats = ";
  for (std::size_t i = 0; i < c.output.formats.size(); ++i) os << (i ? ", " : "") << c.output.formats[i];
  os << "\n";
  return os.str();
}

BoxDomain make_domain(const RunConfig& config) {
  BoxDomain d;
  d.dim = config.domain.dim;
  d.lengths = config.domain.lengths;
  d.grid_points_per_axis = config.domain.grid;
  return d;
}

PotentialSpec make_potential(const PotentialSection& s) {
  switch (s.kind) {
  case PotentialKind::Regular: return PotentialSpec::regular();
  case PotentialKind::Logarithmic: return PotentialSpec::logarithmic(s.c1);
  case PotentialKind::DoubleObstacle: return PotentialSpec::double_obstacle(s.c2);
  case PotentialKind::Custom: break;
  }
  throw ConfigurationError("custom potentials cannot be configured from text");
}

Problem build_problem(const RunConfig& config) {
  Problem pr;
  pr.basis = SpectralBasis::build(make_domain(config), config.domain.n_modes);
  const auto& domain = pr.basis->domain_ptr();
  auto& d = pr.data;
  d.params = config.physics;
  d.potential = make_potential(config.potential);
  d.eps = YosidaParams(config.potential.eps);
  d.f = config.data.f.build(domain);
  d.g = config.data.g.build(domain);
  d.phi0 = config.data.phi0.pieces.front().evaluate(domain);
  d.w0 = config.data.w0.pieces.front().evaluate(domain);
  d.w1 = config.data.w1.pieces.front().evaluate(domain);
  d.T_final = config.time.T_final;
  pr.options.dt = config.time.dt;
  pr.options.step.scheme = config.time.scheme;
  pr.options.step.stabilization = config.time.stabilization;
  return pr;
}

} // namespace thermoch
