// Command-line front end: simulate, verify, converge, depend.

#include "thermoch/error.hpp"
#include "thermoch/run.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace thermoch;

namespace {

struct Args {
  std::string output_dir;
  bool quiet = false;
  std::uint64_t seed = 0;
  std::string target;
  std::string config;
  std::string second;
  std::string csv;
};

RunContext context(const Args& a) {
  RunContext ctx;
  ctx.output_dir = a.output_dir;
  ctx.quiet = a.quiet;
  ctx.seed = a.seed;
  ctx.log = &std::cout;
  return ctx;
}

void report(const std::exception& e) {
  if (const auto* v = dynamic_cast<const ValidationError*>(&e)) {
    std::cerr << "invalid configuration:\n";
    for (const auto& m : v->messages()) std::cerr << "  " << m << "\n";
    return;
  }
  std::cerr << "error: " << e.what() << "\n";
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galerkin solver and verification harness for a nonisothermal Cahn-Hilliard system"};
  app.require_subcommand(1);
  app.fallthrough();
  Args a;
  app.add_option("--output-dir", a.output_dir, "Directory for artifacts (overrides [output] directory)");
  app.add_flag("--quiet", a.quiet, "Suppress progress output");
  app.add_option("--seed", a.seed, "Seed for randomized property sweeps");

  auto* sim = app.add_subcommand("simulate", "Integrate one configuration");
  sim->add_option("config", a.config)->required();

  auto* ver = app.add_subcommand("verify", "Property checks or trajectory re-verification");
  ver->add_option("target", a.target, "potentials | spectral | elliptic | trajectory")
      ->required()
      ->check(CLI::IsMember({"potentials", "spectral", "elliptic", "trajectory"}));
  ver->add_option("config", a.config)->required();
  ver->add_option("csv", a.csv, "trajectory.csv to re-check (trajectory target only)");

  auto* conv = app.add_subcommand("converge", "Convergence sweep");
  conv->add_option("kind", a.target, "modes | eps | dt")->required()->check(CLI::IsMember({"modes", "eps", "dt"}));
  conv->add_option("config", a.config)->required();

  auto* dep = app.add_subcommand("depend", "Continuous dependence on the sources");
  dep->add_option("config", a.config)->required();
  dep->add_option("second", a.second)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    const RunConfig config = parse_config(a.config);
    const RunContext ctx = context(a);
    if (sim->parsed()) return run_simulate(config, ctx);
    if (ver->parsed()) {
      if (a.target == "trajectory") {
        if (a.csv.empty()) {
          std::cerr << "error: verify trajectory needs a trajectory.csv argument\n";
          return kExitValidation;
        }
        return run_verify_trajectory(config, a.csv, ctx);
      }
      const VerifyTarget t = a.target == "potentials" ? VerifyTarget::Potentials
                             : a.target == "spectral" ? VerifyTarget::Spectral
                                                      : VerifyTarget::Elliptic;
      return run_verify(t, config, ctx);
    }
    if (conv->parsed()) {
      const ConvergenceKind k = a.target == "modes" ? ConvergenceKind::ModeCount
                                : a.target == "eps" ? ConvergenceKind::Epsilon
                                                    : ConvergenceKind::TimeStep;
      return run_converge(k, config, ctx);
    }
    return run_depend(config, parse_config(a.second), ctx);
  } catch (const std::exception& e) {
    report(e);
    return exit_code_for(e);
  }
}
