#pragma once

#include "thermoch/diagnostics.hpp"
#include "thermoch/galerkin.hpp"

#include <span>
#include <string>
#include <vector>

namespace thermoch {

// ---------------------------------------------------------------------------
// Mean-value law

struct MeanLawReport {
  /// max_k |mean_phi(t_k) - continuum mean(t_k)|
  double continuum_error = 0.0;
  /// max_k |mean_phi(t_k) - c_k| with c_{k+1} = (c_k + dt_k fbar(t_k)) / (1 + gamma dt_k).
  double discrete_error = 0.0;
};

MeanLawReport mean_law_check(std::span<const DiagnosticsRecord> records, const ProblemData& data);

// ---------------------------------------------------------------------------
// Spatially constant exact solution with f = g = 0:
//   c' + gamma c = 0,  v' = -lambda c',  w' = v.

struct HomogeneousBenchmark {
  double c0 = 0.0;
  double w0 = 0.0;
  double w1 = 0.0;
  double gamma = 1.0;
  double lambda_latent = 1.0;

  double c(double t) const;
  double v(double t) const;
  double w(double t) const;
};

HomogeneousBenchmark homogeneous_benchmark(double c0, double w0, double w1, double gamma, double lambda_latent);

// ---------------------------------------------------------------------------
// Energy identity dE/dt + |grad mu|^2 + (b kappa1/lambda)|grad w_t|^2 = source power

/// |E(T) - E(0) + int_0^T (dissipation - source power) dt|, trapezoid in time.
double energy_identity_residual(std::span<const DiagnosticsRecord> records);

// ---------------------------------------------------------------------------
// A-priori monitors

struct Violation {
  double t = 0.0;
  std::string tag;
  std::string message;
};

/// Time-integrated realization of the estimate's norm inventory.
struct NormInventory {
  double phi_Linf_V = 0.0;
  double phi_Linf_Vstar = 0.0;
  double phi_L2_V = 0.0;
  double mu_L2_V = 0.0;
  double xi_L1Q = 0.0;
  double xi_L2_L6 = 0.0;
  double wt_Linf_H = 0.0;
  double wt_L2_H = 0.0;
  double w_Linf_grad = 0.0;
};

NormInventory realized_norms(std::span<const DiagnosticsRecord> records);

/// Flags non-finite records and mean values outside band by more than tol.
std::vector<Violation> apriori_monitor(std::span<const DiagnosticsRecord> records, MeanBand band,
                                       double tol = 1e-6);

/// max/min of a family of positive values (+inf if any is nonpositive).
double uniformity_ratio(std::span<const double> values);

// ---------------------------------------------------------------------------
// Continuous dependence on the sources

struct DependenceReport {
  double lhs = 0.0;
  double f_L2Vstar_plus_L1Q = 0.0;
  double f_L1Q_sqrt = 0.0;
  double g_convolution_L2H = 0.0;
  double empirical_K2 = 0.0;
  double xi1_L1Q = 0.0;
  double xi2_L1Q = 0.0;

  double rhs_sum() const { return f_L2Vstar_plus_L1Q + f_L1Q_sqrt + g_convolution_L2H; }
};

/// Runs both problems and compares
///   ||phi1 - phi2||_{Linf(V*) ∩ L2(V)} + ||w1 - w2||_{H1(H) ∩ Linf(V)}
/// against the data differences. Requires identical initial data, params,
/// potential, eps and T_final.
DependenceReport dependence_experiment(const ProblemData& data1, const ProblemData& data2,
                                       const std::shared_ptr<const SpectralBasis>& basis,
                                       const SimulationOptions& options);

// ---------------------------------------------------------------------------
// Convergence studies

enum class ConvergenceKind { ModeCount, Epsilon, TimeStep };

std::string to_string(ConvergenceKind kind);

struct ConvergenceRow {
  double parameter = 0.0;
  /// ModeCount: ||phi_n - phi_nmax||_{Linf(V*)}; Epsilon: ||phi_eps - phi_next||_{Linf(V*)}
  /// against the next schedule entry; TimeStep: error at T_final.
  double error = 0.0;
  /// log2(error_prev / error) for TimeStep rows (0 for the first row).
  double slope = 0.0;
  double xi_L1Q = 0.0;
  double xi_L2_L6 = 0.0;
};

struct ConvergenceTable {
  ConvergenceKind kind = ConvergenceKind::ModeCount;
  std::vector<ConvergenceRow> rows;
  /// For TimeStep: whether the error is measured against the exact
  /// spatially constant solution (true) or the next finer step (false).
  bool exact_reference = false;
};

/// ModeCount: schedule holds mode counts (the last entry is the reference).
/// Epsilon: eps values, each compared with its successor.
/// TimeStep: dt values; uses the exact benchmark when the base data are
/// spatially constant with f = g = 0, otherwise successive differences.
/// Member runs execute concurrently.
ConvergenceTable convergence_study(ConvergenceKind kind, std::span<const double> schedule, const ProblemData& base,
                                   const BoxDomain& domain, int n_modes, const SimulationOptions& options);

/// max_k ||a_k - b_k||_* over two trajectories recorded on the same time grid;
/// b is truncated or zero-padded to a's basis.
double linf_vstar_distance(const Trajectory& a, const Trajectory& b);

} // namespace thermoch
