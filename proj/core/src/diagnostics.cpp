#include "thermoch/diagnostics.hpp"

#include "thermoch/galerkin.hpp"

#include <cmath>
#include <limits>

namespace thermoch {

double exact_mean(const ProblemData& data, double t) {
  const double gamma = data.params.gamma;
  double m = data.initial_mean() * std::exp(-gamma * t);
  const auto& starts = data.f.starts();
  const auto& pieces = data.f.pieces();
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const double a = starts[i];
    if (a >= t) break;
    const double b = (i + 1 < starts.size()) ? std::min(starts[i + 1], t) : t;
    // int_a^b e^{-gamma (t - s)} ds
    const double kernel = (std::exp(-gamma * (t - b)) - std::exp(-gamma * (t - a))) / gamma;
    m += pieces[i].values().mean() * kernel;
  }
  return m;
}

DiagnosticsRecord diagnose(const GalerkinState& state, const ProblemData& data) {
  const auto& basis = state.phi.basis_ptr();
  const auto& p = data.params;
  const double vol = basis->domain().cell_volume();
  const double sqrt_measure = std::sqrt(basis->domain().measure());

  const MuReconstruction mr = reconstruct_mu(state, data);
  const Field phi = to_field(state.phi);

  double potential = 0.0;
  for (double r : phi.values()) potential += regularized_potential(data.potential, data.eps, r);
  potential *= vol;

  const Coeffs f_hat = to_coeffs(data.f.at(state.t), basis);
  const Coeffs g_hat = to_coeffs(data.g.at(state.t), basis);
  const double b_over_l = p.b / p.lambda_latent;

  DiagnosticsRecord r;
  r.t = state.t;
  r.mean_phi = mean_value(state.phi);
  r.mean_phi_exact = exact_mean(data, state.t);
  const double gphi = norm_grad(state.phi);
  const double gw = norm_grad(state.w);
  const double vH = norm_H(state.v);
  r.energy = 0.5 * gphi * gphi + potential + p.a * state.phi[0] * sqrt_measure + 0.5 * b_over_l * vH * vH +
             0.5 * b_over_l * p.kappa2 * gw * gw;
  const double gmu = norm_grad(mr.mu);
  const double gv = norm_grad(state.v);
  r.dissipation_mu = gmu * gmu;
  r.dissipation_w = b_over_l * p.kappa1 * gv * gv;
  r.source_power = inner(f_hat - p.gamma * state.phi, mr.mu) + b_over_l * inner(g_hat, state.v);

  r.norms.phi_V = norm_V(state.phi);
  r.norms.phi_Vstar = norm_Vstar(state.phi);
  r.norms.wt_H = vH;
  r.norms.grad_w = gw;
  r.norms.xi_L1 = norm_Lp(mr.xi, 1.0);
  r.norms.xi_L6 = norm_Lp(mr.xi, 6.0);
  r.norms.mu_V = norm_V(mr.mu);
  return r;
}

std::vector<DiagnosticsRecord> records_of(const Trajectory& trajectory) {
  std::vector<DiagnosticsRecord> out;
  out.reserve(trajectory.size());
  for (const auto& p : trajectory) out.push_back(p.record);
  return out;
}

} // namespace thermoch
