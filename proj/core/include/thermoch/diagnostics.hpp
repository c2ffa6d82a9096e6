#pragma once

#include "thermoch/model.hpp"

#include <array>
#include <string_view>
#include <utility>
#include <vector>

namespace thermoch {

/// Norms of the a-priori estimate inventory realized at a single time.
struct NormSample {
  double phi_V = 0.0;
  double phi_Vstar = 0.0;
  double wt_H = 0.0;
  double grad_w = 0.0;
  double xi_L1 = 0.0;
  double xi_L6 = 0.0;
  double mu_V = 0.0;

  static constexpr std::array<std::string_view, 7> names{"phi_V", "phi_Vstar", "wt_H", "grad_w",
                                                         "xi_L1", "xi_L6",     "mu_V"};
  std::array<double, 7> values() const { return {phi_V, phi_Vstar, wt_H, grad_w, xi_L1, xi_L6, mu_V}; }
  static NormSample from_values(const std::array<double, 7>& v) {
    return {v[0], v[1], v[2], v[3], v[4], v[5], v[6]};
  }
};

struct DiagnosticsRecord {
  double t = 0.0;
  double mean_phi = 0.0;
  double mean_phi_exact = 0.0;
  /// E = 1/2|grad phi|^2 + int (beta_hat_eps + pi_hat)(phi) + a int phi
  ///     + b/(2 lambda) |w_t|^2 + b kappa2/(2 lambda) |grad w|^2
  double energy = 0.0;
  double dissipation_mu = 0.0;
  double dissipation_w = 0.0;
  /// int (f - gamma phi) mu + (b/lambda) int g w_t
  double source_power = 0.0;
  NormSample norms;
};

/// Continuum mean value phi0_mean e^{-gamma t} + int_0^t e^{-gamma(t-s)} fbar(s) ds
/// evaluated with exact integrals over the schedule's pieces.
double exact_mean(const ProblemData& data, double t);

DiagnosticsRecord diagnose(const GalerkinState& state, const ProblemData& data);

struct TrajectoryPoint {
  GalerkinState state;
  DiagnosticsRecord record;
};

using Trajectory = std::vector<TrajectoryPoint>;

std::vector<DiagnosticsRecord> records_of(const Trajectory& trajectory);

} // namespace thermoch
