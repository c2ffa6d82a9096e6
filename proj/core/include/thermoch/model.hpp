#pragma once

#include "thermoch/potentials.hpp"
#include "thermoch/spectral.hpp"

#include <string>
#include <vector>

namespace thermoch {

/// Constants of the coupled system
///   phi_t - Laplace(mu) + gamma phi = f
///   mu = -Laplace(phi) + F'(phi) + a - b w_t
///   w_tt - Laplace(kappa1 w_t + kappa2 w) + lambda phi_t = g
struct PhysicalParams {
  double gamma = 1.0;
  double a = 0.0;
  double b = 1.0;
  double kappa1 = 1.0;
  double kappa2 = 1.0;
  double lambda_latent = 1.0;

  bool operator==(const PhysicalParams&) const = default;
};

/// Space-time datum that is piecewise constant in time: piece i is active
/// on [starts[i], starts[i+1]).
class DataSchedule {
public:
  DataSchedule() = default;
  explicit DataSchedule(Field constant_in_time);
  DataSchedule(std::vector<double> starts, std::vector<Field> pieces);

  const Field& at(double t) const;
  const std::vector<double>& starts() const noexcept { return starts_; }
  const std::vector<Field>& pieces() const noexcept { return pieces_; }
  /// max over pieces of the grid maximum of |f|.
  double sup_norm() const;
  bool all_finite() const;

private:
  std::vector<double> starts_;
  std::vector<Field> pieces_;
};

struct ProblemData {
  PhysicalParams params;
  PotentialSpec potential = PotentialSpec::regular();
  YosidaParams eps{0.1};
  DataSchedule f;
  DataSchedule g;
  Field phi0;
  Field w0;
  Field w1;
  double T_final = 1.0;

  /// rho = ||f||_inf / gamma.
  double rho() const;
  /// Spatial mean of phi0.
  double initial_mean() const;
};

/// One quantity that must lie in the interior of D(beta) but does not.
struct CompatibilityIssue {
  std::string quantity;
  double value = 0.0;
};

/// Checks min phi0, max phi0, -rho - (mean phi0)^-, rho + (mean phi0)^+.
std::vector<CompatibilityIssue> compatibility_issues(const ProblemData& data);

/// Band [-rho - (mean phi0)^-, rho + (mean phi0)^+] that contains the mean of
/// phi for all times.
struct MeanBand {
  double lo = 0.0;
  double hi = 0.0;
};
MeanBand mean_band(const ProblemData& data);

/// Time t and coefficient vectors of phi, w and v = w_t.
struct GalerkinState {
  double t = 0.0;
  Coeffs phi;
  Coeffs w;
  Coeffs v;
};

/// Chemical potential coefficients and the selection xi = beta_eps(phi) on the grid.
struct MuReconstruction {
  Coeffs mu;
  Field xi;
};

} // namespace thermoch
