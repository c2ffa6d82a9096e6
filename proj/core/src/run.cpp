#include "thermoch/run.hpp"

#include "thermoch/error.hpp"
#include "thermoch/output.hpp"
#include "thermoch/verify.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

namespace thermoch {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

class Session {
public:
  Session(const RunConfig& config, const RunContext& ctx, std::string experiment)
      : config_(config), ctx_(ctx), start_(Clock::now()) {
    dir_ = ctx.output_dir.empty() ? std::filesystem::path(config.output.directory) : ctx.output_dir;
    summary_["experiment"] = std::move(experiment);
    summary_["config"] = to_ini(config);
    const auto warnings = validate(config).warnings;
    summary_["warnings"] = warnings;
    if (!ctx.quiet && ctx.log)
      for (const auto& w : warnings) *ctx.log << "warning: " << w << "\n";
  }

  Json& summary() { return summary_; }

  bool wants(std::string_view format) const {
    return std::find(config_.output.formats.begin(), config_.output.formats.end(), format) !=
           config_.output.formats.end();
  }

  void csv(const std::string& name, const std::string& text) const {
    if (wants("csv")) write_text(dir_ / name, text);
  }

  int finish(bool ok) {
    summary_["status"] = ok ? "ok" : "failed";
    if (wants("json")) {
      write_text(dir_ / "summary.json", summary_.dump(2) + "\n");
      const double seconds = std::chrono::duration<double>(Clock::now() - start_).count();
      write_text(dir_ / "timing.json", Json{{"wall_seconds", seconds}}.dump(2) + "\n");
    }
    if (!ctx_.quiet && ctx_.log) {
      *ctx_.log << summary_["experiment"].get<std::string>() << ": " << (ok ? "ok" : "FAILED") << " -> "
                << dir_.string() << "\n";
    }
    return ok ? kExitOk : kExitNumeric;
  }

private:
  const RunConfig& config_;
  const RunContext& ctx_;
  std::filesystem::path dir_;
  Clock::time_point start_;
  Json summary_;
};

Json norms_json(const NormInventory& n) {
  return Json{{"phi_Linf_V", n.phi_Linf_V},   {"phi_Linf_Vstar", n.phi_Linf_Vstar}, {"phi_L2_V", n.phi_L2_V},
              {"mu_L2_V", n.mu_L2_V},         {"xi_L1Q", n.xi_L1Q},                 {"xi_L2_L6", n.xi_L2_L6},
              {"wt_Linf_H", n.wt_Linf_H},     {"wt_L2_H", n.wt_L2_H},               {"w_Linf_grad", n.w_Linf_grad}};
}

Json violations_json(const std::vector<Violation>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(Json{{"t", v.t}, {"tag", v.tag}, {"message", v.message}});
  return out;
}

Json checks_json(const std::vector<Check>& checks) {
  Json out = Json::array();
  for (const auto& c : checks)
    out.push_back(Json{{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass}});
  return out;
}

Json band_json(const ProblemData& d) {
  const auto band = mean_band(d);
  return Json{{"rho", d.rho()}, {"lo", band.lo}, {"hi", band.hi}};
}

std::vector<double> default_schedule(ConvergenceKind kind, const RunConfig& c) {
  switch (kind) {
  case ConvergenceKind::ModeCount: {
    const int n = c.domain.n_modes;
    return {static_cast<double>(std::max(2, n / 4)), static_cast<double>(std::max(3, n / 2)), static_cast<double>(n)};
  }
  case ConvergenceKind::Epsilon: return {0.2, 0.1, 0.05, 0.025};
  case ConvergenceKind::TimeStep: return {c.time.dt, c.time.dt / 2, c.time.dt / 4};
  }
  return {};
}

} // namespace

std::string to_string(VerifyTarget target) {
  switch (target) {
  case VerifyTarget::Potentials: return "potentials";
  case VerifyTarget::Spectral: return "spectral";
  case VerifyTarget::Elliptic: return "elliptic";
  }
  return "unknown";
}

int run_simulate(const RunConfig& config, const RunContext& ctx) {
  Session s(config, ctx, "simulate");
  const Problem pr = build_problem(config);
  const SimulationResult result = simulate(pr.data, pr.basis, pr.options);
  const auto records = records_of(result.trajectory);
  s.csv("trajectory.csv", trajectory_csv(records));

  const auto violations = apriori_monitor(records, mean_band(pr.data));
  const auto mean_law = mean_law_check(records, pr.data);
  double energy_increase = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < records.size(); ++k)
    energy_increase = std::max(energy_increase, records[k].energy - records[k - 1].energy);

  auto& j = s.summary();
  j["completed"] = result.completed;
  j["failure"] = result.failure;
  j["steps"] = records.empty() ? 0 : records.size() - 1;
  j["final_time"] = records.empty() ? 0.0 : records.back().t;
  j["band"] = band_json(pr.data);
  j["norms"] = norms_json(realized_norms(records));
  j["violations"] = violations_json(violations);
  j["constants"] = Json{{"energy_identity_residual", energy_identity_residual(records)},
                        {"energy_max_step_increase", records.size() > 1 ? energy_increase : 0.0},
                        {"mean_law_continuum_error", mean_law.continuum_error},
                        {"mean_law_discrete_error", mean_law.discrete_error}};
  return s.finish(result.completed && violations.empty());
}

int run_verify(VerifyTarget target, const RunConfig& config, const RunContext& ctx) {
  Session s(config, ctx, "verify " + to_string(target));
  const Problem pr = build_problem(config);
  std::vector<Check> checks;
  switch (target) {
  case VerifyTarget::Potentials:
    checks = verify_potential(pr.data.potential, pr.data.eps, config.experiment.samples, ctx.seed);
    break;
  case VerifyTarget::Spectral: checks = verify_spectral(pr.basis, config.experiment.samples, ctx.seed); break;
  case VerifyTarget::Elliptic: {
    EllipticProblem ep{pr.basis, pr.data.potential, pr.data.eps, config.experiment.h.evaluate(pr.basis->domain_ptr())};
    checks = verify_elliptic(ep, std::min(config.experiment.samples, 20), ctx.seed);
    break;
  }
  }
  s.csv("checks.csv", checks_csv(checks));
  s.summary()["seed"] = ctx.seed;
  s.summary()["checks"] = checks_json(checks);
  return s.finish(all_pass(checks));
}

int run_verify_trajectory(const RunConfig& config, const std::filesystem::path& csv, const RunContext& ctx) {
  Session s(config, ctx, "verify trajectory");
  const Problem pr = build_problem(config);
  const auto records = parse_trajectory_csv(read_text(csv));
  const auto violations = apriori_monitor(records, mean_band(pr.data));
  s.summary()["band"] = band_json(pr.data);
  s.summary()["records"] = records.size();
  s.summary()["violations"] = violations_json(violations);
  if (!ctx.quiet && ctx.log) {
    for (const auto& v : violations) *ctx.log << "t = " << v.t << ": " << v.tag << " " << v.message << "\n";
  }
  return s.finish(violations.empty());
}

int run_converge(ConvergenceKind kind, const RunConfig& config, const RunContext& ctx) {
  Session s(config, ctx, "converge " + to_string(kind));
  const Problem pr = build_problem(config);
  std::vector<double> schedule = config.experiment.schedule;
  if (schedule.empty()) schedule = default_schedule(kind, config);
  const auto table = convergence_study(kind, schedule, pr.data, pr.basis->domain(), config.domain.n_modes, pr.options);
  s.csv("convergence.csv", convergence_csv(table));

  std::vector<double> xi1, xi6;
  for (const auto& r : table.rows) {
    xi1.push_back(r.xi_L1Q);
    xi6.push_back(r.xi_L2_L6);
  }
  auto& j = s.summary();
  j["schedule"] = schedule;
  j["exact_reference"] = table.exact_reference;
  Json rows = Json::array();
  for (const auto& r : table.rows) {
    rows.push_back(Json{{"parameter", r.parameter},
                        {"error", r.error},
                        {"slope", r.slope},
                        {"xi_L1Q", r.xi_L1Q},
                        {"xi_L2_L6", r.xi_L2_L6}});
  }
  j["rows"] = std::move(rows);
  j["constants"] = Json{{"xi_L1Q_uniformity_ratio", uniformity_ratio(xi1)},
                        {"xi_L2_L6_uniformity_ratio", uniformity_ratio(xi6)}};
  return s.finish(true);
}

int run_depend(const RunConfig& first, const RunConfig& second, const RunContext& ctx) {
  Session s(first, ctx, "depend");
  const Problem p1 = build_problem(first);
  Problem p2 = build_problem(second);
  if (!(make_domain(first) == make_domain(second)) || first.domain.n_modes != second.domain.n_modes)
    throw ConfigurationError("depend: both configs must use the same domain and mode count");
  if (!(first.time == second.time)) throw ConfigurationError("depend: both configs must use the same time settings");

  const std::vector<std::pair<std::string, DependenceReport>> rows{
      {"identical", dependence_experiment(p1.data, p1.data, p1.basis, p1.options)},
      {"pair", dependence_experiment(p1.data, p2.data, p1.basis, p1.options)},
  };
  s.csv("dependence.csv", dependence_csv(rows));

  auto& j = s.summary();
  j["second_config"] = to_ini(second);
  Json reports = Json::object();
  for (const auto& [label, r] : rows) {
    reports[label] = Json{{"lhs", r.lhs},
                          {"f_L2Vstar_plus_L1Q", r.f_L2Vstar_plus_L1Q},
                          {"f_L1Q_sqrt", r.f_L1Q_sqrt},
                          {"g_convolution_L2H", r.g_convolution_L2H},
                          {"rhs_sum", r.rhs_sum()},
                          {"empirical_K2", r.empirical_K2},
                          {"xi1_L1Q", r.xi1_L1Q},
                          {"xi2_L1Q", r.xi2_L1Q}};
  }
  j["reports"] = std::move(reports);
  return s.finish(true);
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const IoError*>(&e)) return kExitIo;
  if (dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const ParseError*>(&e) ||
      dynamic_cast<const ConfigurationError*>(&e) || dynamic_cast<const CompatibilityError*>(&e) ||
      dynamic_cast<const DomainError*>(&e))
    return kExitValidation;
  return kExitNumeric;
}

} // namespace thermoch
