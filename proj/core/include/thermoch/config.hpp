#pragma once

#include "thermoch/expression.hpp"
#include "thermoch/galerkin.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace thermoch {

struct DomainSection {
  int dim = 1;
  std::vector<double> lengths{1.0};
  int grid = 64;
  int n_modes = 16;

  bool operator==(const DomainSection&) const = default;
};

struct PotentialSection {
  PotentialKind kind = PotentialKind::Regular;
  double c1 = 2.0;
  double c2 = 1.0;
  double eps = 0.1;

  bool operator==(const PotentialSection&) const = default;
};

struct DataSection {
  DataExpr f = DataExpr::constant(0.0);
  DataExpr g = DataExpr::constant(0.0);
  DataExpr phi0 = DataExpr::constant(0.0);
  DataExpr w0 = DataExpr::constant(0.0);
  DataExpr w1 = DataExpr::constant(0.0);

  bool operator==(const DataSection&) const = default;
};

struct TimeSection {
  double T_final = 1.0;
  double dt = 1e-2;
  TimeScheme scheme = TimeScheme::SemiImplicit;
  std::optional<double> stabilization;

  bool operator==(const TimeSection&) const = default;
};

enum class ExperimentKind { Simulate, Verify, Converge, Depend };

std::string to_string(ExperimentKind kind);

struct ExperimentSection {
  ExperimentKind kind = ExperimentKind::Simulate;
  /// Parameter values of a convergence sweep (mode counts, eps or dt).
  std::vector<double> schedule;
  /// Number of random samples in verification sweeps.
  int samples = 10000;
  /// Right-hand side of the elliptic verification problem.
  SpatialExpr h{0.5, {}};

  bool operator==(const ExperimentSection&) const = default;
};

struct OutputSection {
  std::string directory = "out";
  std::vector<std::string> formats{"csv", "json"};

  bool operator==(const OutputSection&) const = default;
};

struct RunConfig {
  DomainSection domain;
  PhysicalParams physics;
  PotentialSection potential;
  DataSection data;
  TimeSection time;
  ExperimentSection experiment;
  OutputSection output;

  bool operator==(const RunConfig&) const = default;
};

/// Reads bracketed-section key = value text ('#' starts a comment). Unknown
/// sections or keys, duplicates and malformed values raise ParseError with
/// the offending line; out-of-range artifact settings (grid, n_modes, dt,
/// eps, ...) raise ConfigurationError. Model assumptions are not checked.
RunConfig read_config(std::string_view text);

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
};

/// Checks the model assumptions. Each error message starts with exactly one
/// tag out of (2.5), (2.11), (2.12), (2.14).
ValidationReport validate(const RunConfig& config);

/// read_config + validate; throws ValidationError listing every violation.
RunConfig parse_config_text(std::string_view text);
/// Throws IoError if the file cannot be read.
RunConfig parse_config(const std::filesystem::path& path);

/// Canonical text form; read_config(to_ini(c)) == c.
std::string to_ini(const RunConfig& config);

BoxDomain make_domain(const RunConfig& config);
PotentialSpec make_potential(const PotentialSection& section);

struct Problem {
  std::shared_ptr<const SpectralBasis> basis;
  ProblemData data;
  SimulationOptions options;
};

Problem build_problem(const RunConfig& config);

} // namespace thermoch
