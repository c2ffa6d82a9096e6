#pragma once

#include "thermoch/diagnostics.hpp"
#include "thermoch/model.hpp"

#include <functional>
#include <optional>
#include <string>

namespace thermoch {

enum class TimeScheme { SemiImplicit, BackwardEuler };

std::string to_string(TimeScheme scheme);

struct StepOptions {
  TimeScheme scheme = TimeScheme::SemiImplicit;
  /// Linear stabilization S added as S(phi_new - phi_old) to mu in the
  /// semi-implicit scheme. Defaults to (1/eps + L_pi) / 2.
  std::optional<double> stabilization;
  double newton_tolerance = 1e-10;
  int newton_max_iterations = 50;
};

/// Initial state P_n phi0, P_n w0, P_n w1. Throws CompatibilityError naming
/// the first quantity that is not interior to D(beta).
GalerkinState project_initial_data(const ProblemData& data,
                                   const std::shared_ptr<const SpectralBasis>& basis);

MuReconstruction reconstruct_mu(const GalerkinState& state, const ProblemData& data);

struct Derivatives {
  Coeffs dphi;
  Coeffs dw;
  Coeffs dv;
};

/// Right-hand side of the Galerkin ODE system with phi' eliminated from the
/// heat equation.
Derivatives rhs(const GalerkinState& state, const ProblemData& data);

/// One first-order step of size dt. Sources are taken at state.t.
/// Throws StepFailure if the Newton iteration does not converge.
GalerkinState step(const GalerkinState& state, const ProblemData& data, double dt,
                   const StepOptions& options = {});

struct SimulationOptions {
  double dt = 1e-2;
  StepOptions step;
};

struct SimulationResult {
  Trajectory trajectory;
  bool completed = true;
  std::string failure;
};

using Observer = std::function<void(const TrajectoryPoint&)>;

/// Integrates from the projected initial data to data.T_final with fixed dt
/// (the last step is truncated). A failed step is retried as two half steps,
/// recursively, down to 1e-8 * T_final; every accepted step is recorded.
SimulationResult simulate(const ProblemData& data, const std::shared_ptr<const SpectralBasis>& basis,
                          const SimulationOptions& options, const Observer& observer = {});

} // namespace thermoch
