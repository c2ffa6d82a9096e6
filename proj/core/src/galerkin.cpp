#include "thermoch/galerkin.hpp"

#include "thermoch/error.hpp"

#include <Eigen/LU>

#include <cmath>
#include <sstream>

namespace thermoch {

namespace {

// Coefficients of (beta_eps + pi)(phi) + a.
Eigen::VectorXd nonlinear_coeffs(const Eigen::VectorXd& phi_grid, const ProblemData& data,
                                 const SpectralBasis& basis) {
  Eigen::VectorXd g(phi_grid.size());
  for (Eigen::Index k = 0; k < g.size(); ++k)
    g[k] = yosida(data.potential, data.eps, phi_grid[k]) + data.potential.pi(phi_grid[k]) + data.params.a;
  return basis.samples() * g * basis.domain().cell_volume();
}

double default_stabilization(const ProblemData& data) {
  return 0.5 * (1.0 / data.eps.eps() + data.potential.pi_lipschitz());
}

// The heat equation is linear in (w, v), so for a given phi_new the implicit
// update reads v_new = alpha - beta * phi_new and w_new = w + dt v_new.
struct ThermalElimination {
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta;
};

ThermalElimination eliminate_thermal(const GalerkinState& s, const ProblemData& data,
                                     const Eigen::VectorXd& g_hat, double dt) {
  const auto& lam = s.phi.basis().eigenvalues();
  const auto& p = data.params;
  const Eigen::Index n = lam.size();
  ThermalElimination e{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    const double d = 1.0 + dt * lam[j] * p.kappa1 + dt * dt * lam[j] * p.kappa2;
    e.alpha[j] = (s.v[j] - dt * lam[j] * p.kappa2 * s.w[j] + dt * g_hat[j] + p.lambda_latent * s.phi[j]) / d;
    e.beta[j] = p.lambda_latent / d;
  }
  return e;
}

GalerkinState finish_step(const GalerkinState& s, const ThermalElimination& e, Eigen::VectorXd phi_new,
                          double dt) {
  const auto& basis = s.phi.basis_ptr();
  Eigen::VectorXd v_new = e.alpha - e.beta.cwiseProduct(phi_new);
  Eigen::VectorXd w_new = s.w.values() + dt * v_new;
  return {s.t + dt, Coeffs(basis, std::move(phi_new)), Coeffs(basis, std::move(w_new)),
          Coeffs(basis, std::move(v_new))};
}

Eigen::VectorXd semi_implicit_phi(const GalerkinState& s, const ProblemData& data, const Eigen::VectorXd& f_hat,
                                  const ThermalElimination& e, double dt, double stab) {
  const auto& basis = s.phi.basis();
  const auto& lam = basis.eigenvalues();
  const auto& p = data.params;
  const Eigen::VectorXd nl = nonlinear_coeffs(to_field(s.phi).values(), data, basis);
  Eigen::VectorXd phi_new(lam.size());
  for (Eigen::Index j = 0; j < lam.size(); ++j) {
    const double lj = lam[j];
    const double num = s.phi[j] + dt * f_hat[j] - dt * lj * (nl[j] - stab * s.phi[j] - p.b * e.alpha[j]);
    const double den = 1.0 + dt * p.gamma + dt * lj * (lj + stab) + dt * lj * p.b * e.beta[j];
    phi_new[j] = num / den;
  }
  return phi_new;
}

Eigen::VectorXd backward_euler_phi(const GalerkinState& s, const ProblemData& data, const Eigen::VectorXd& f_hat,
                                   const ThermalElimination& e, double dt, Eigen::VectorXd guess,
                                   const StepOptions& opt) {
  const auto& basis = s.phi.basis();
  const auto& lam = basis.eigenvalues();
  const auto& p = data.params;
  const Eigen::Index n = lam.size();
  const double wq = basis.domain().cell_volume();
  const Eigen::MatrixXd& B = basis.samples();

  Eigen::VectorXd diag(n);
  for (Eigen::Index j = 0; j < n; ++j)
    diag[j] = 1.0 + dt * p.gamma + dt * lam[j] * lam[j] + dt * lam[j] * p.b * e.beta[j];
  const Eigen::VectorXd rhs_const = s.phi.values() + dt * f_hat + dt * p.b * lam.cwiseProduct(e.alpha);

  auto residual = [&](const Eigen::VectorXd& x, Eigen::VectorXd& grid) {
    grid = B.transpose() * x;
    return Eigen::VectorXd(diag.cwiseProduct(x) + dt * lam.cwiseProduct(nonlinear_coeffs(grid, data, basis)) -
                           rhs_const);
  };

  Eigen::VectorXd x = std::move(guess);
  Eigen::VectorXd grid;
  Eigen::VectorXd r = residual(x, grid);
  for (int it = 0; it < opt.newton_max_iterations; ++it) {
    if (it > 0 && r.norm() <= opt.newton_tolerance) return x;
    Eigen::VectorXd curvature(grid.size());
    for (Eigen::Index k = 0; k < grid.size(); ++k)
      curvature[k] = wq * regularized_derivative(data.potential, data.eps, grid[k]);
    Eigen::MatrixXd J = B * curvature.asDiagonal() * B.transpose();
    J = (dt * lam).asDiagonal() * J;
    J.diagonal() += diag;
    x -= J.partialPivLu().solve(r);
    r = residual(x, grid);
    if (!r.allFinite()) break;
  }
  if (r.norm() <= opt.newton_tolerance) return x;
  std::ostringstream os;
  os << "backward Euler: Newton did not converge at t = " << s.t << " (dt = " << dt
     << ", residual = " << r.norm() << ")";
  throw StepFailure(os.str());
}

} // namespace

std::string to_string(TimeScheme scheme) {
  return scheme == TimeScheme::SemiImplicit ? "semi-implicit" : "backward-euler";
}

GalerkinState project_initial_data(const ProblemData& data, const std::shared_ptr<const SpectralBasis>& basis) {
  const auto issues = compatibility_issues(data);
  if (!issues.empty()) {
    std::ostringstream os;
    os << "compatibility: " << issues.front().quantity << " = " << issues.front().value
       << " not interior to D(beta) = " << data.potential.domain_string();
    throw CompatibilityError(os.str());
  }
  return {0.0, to_coeffs(data.phi0, basis), to_coeffs(data.w0, basis), to_coeffs(data.w1, basis)};
}

MuReconstruction reconstruct_mu(const GalerkinState& state, const ProblemData& data) {
  const auto& basis = state.phi.basis_ptr();
  const Field phi = to_field(state.phi);
  Field xi(phi.domain_ptr());
  Eigen::VectorXd g(phi.size());
  for (int k = 0; k < phi.size(); ++k) {
    const double r = phi.values()[k];
    xi.values()[k] = yosida(data.potential, data.eps, r);
    g[k] = xi.values()[k] + data.potential.pi(r) + data.params.a;
  }
  Coeffs mu = to_coeffs(Field(phi.domain_ptr(), std::move(g)), basis);
  mu += stiffness_apply(state.phi);
  mu -= data.params.b * state.v;
  return {std::move(mu), std::move(xi)};
}

Derivatives rhs(const GalerkinState& state, const ProblemData& data) {
  const auto& basis = state.phi.basis_ptr();
  const auto& p = data.params;
  const Coeffs mu = reconstruct_mu(state, data).mu;
  Coeffs dphi = to_coeffs(data.f.at(state.t), basis) - stiffness_apply(mu) - p.gamma * state.phi;
  Coeffs dv = to_coeffs(data.g.at(state.t), basis) - stiffness_apply(p.kappa1 * state.v + p.kappa2 * state.w) -
              p.lambda_latent * dphi;
  return {std::move(dphi), state.v, std::move(dv)};
}

GalerkinState step(const GalerkinState& state, const ProblemData& data, double dt, const StepOptions& options) {
  if (!(dt > 0.0)) throw ConfigurationError("step: dt must be positive");
  const auto& basis = state.phi.basis_ptr();
  const Eigen::VectorXd f_hat = to_coeffs(data.f.at(state.t), basis).values();
  const Eigen::VectorXd g_hat = to_coeffs(data.g.at(state.t), basis).values();
  const auto elim = eliminate_thermal(state, data, g_hat, dt);
  const double stab = options.stabilization.value_or(default_stabilization(data));
  Eigen::VectorXd phi_new = semi_implicit_phi(state, data, f_hat, elim, dt, stab);
  if (options.scheme == TimeScheme::BackwardEuler)
    phi_new = backward_euler_phi(state, data, f_hat, elim, dt, std::move(phi_new), options);
  return finish_step(state, elim, std::move(phi_new), dt);
}

namespace {

// Advances `state` by dt, splitting into halves on failure.
void advance(GalerkinState& state, double dt, const ProblemData& data, const SimulationOptions& opt,
             double dt_min, Trajectory& out, const Observer& observer) {
  GalerkinState next;
  try {
    next = step(state, data, dt, opt.step);
  } catch (const StepFailure&) {
    if (dt * 0.5 < dt_min) throw;
    advance(state, 0.5 * dt, data, opt, dt_min, out, observer);
    advance(state, 0.5 * dt, data, opt, dt_min, out, observer);
    return;
  }
  if (!next.phi.values().allFinite() || !next.w.values().allFinite() || !next.v.values().allFinite()) {
    std::ostringstream os;
    os << "non-finite state at t = " << next.t;
    throw StepFailure(os.str());
  }
  state = std::move(next);
  out.push_back({state, diagnose(state, data)});
  if (observer) observer(out.back());
}

} // namespace

SimulationResult simulate(const ProblemData& data, const std::shared_ptr<const SpectralBasis>& basis,
                          const SimulationOptions& options, const Observer& observer) {
  if (!(data.T_final >= 0.0)) throw ConfigurationError("simulate: T_final must be nonnegative");
  if (!(options.dt > 0.0)) throw ConfigurationError("simulate: dt must be positive");
  SimulationResult result;
  GalerkinState state = project_initial_data(data, basis);
  result.trajectory.push_back({state, diagnose(state, data)});
  if (observer) observer(result.trajectory.back());

  const double T = data.T_final;
  const double dt_min = 1e-8 * T;
  // Grid times are k*dt rather than accumulated sums so runs are reproducible.
  const auto steps = static_cast<long>(std::ceil(T / options.dt - 1e-9));
  try {
    for (long k = 0; k < steps; ++k) {
      const double t_next = std::min(T, static_cast<double>(k + 1) * options.dt);
      advance(state, t_next - state.t, data, options, dt_min, result.trajectory, observer);
      state.t = t_next;
      result.trajectory.back().state.t = t_next;
      result.trajectory.back().record.t = t_next;
    }
  } catch (const NumericFailure& e) {
    result.completed = false;
    result.failure = e.what();
  }
  return result;
}

} // namespace thermoch
