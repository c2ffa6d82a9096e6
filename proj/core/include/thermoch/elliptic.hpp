#pragma once

#include "thermoch/potentials.hpp"
#include "thermoch/spectral.hpp"

#include <memory>
#include <optional>

namespace thermoch {

/// Neumann problem  -Laplace(u) + beta_eps(u) = h  in Galerkin form on V_n.
struct EllipticProblem {
  std::shared_ptr<const SpectralBasis> basis;
  PotentialSpec potential = PotentialSpec::regular();
  YosidaParams eps{0.1};
  Field h;
};

struct EllipticSolution {
  Coeffs u;
  /// ||A u + P_n beta_eps(u) - P_n h||_H at exit.
  double residual = 0.0;
  int iterations = 0;
};

/// Levenberg-damped Newton on the spectral residual with backtracking
/// (at most 30 halvings per iteration). Iterates towards 1e-14 (1 + ||h||_H)
/// until the residual stops decreasing; converged when it is at most
/// 1e-10 (1 + ||h||_H). Throws NumericFailure otherwise.
EllipticSolution solve_elliptic(const EllipticProblem& p, std::optional<Coeffs> initial_guess = std::nullopt);

struct L6Check {
  double lhs = 0.0; ///< ||beta_eps(u)||_6
  double rhs = 0.0; ///< ||h||_6
  bool pass = false;
};

/// lhs <= rhs * (1 + slack).
L6Check check_L6_bound(const EllipticProblem& p, const Coeffs& u, double slack = 1e-6);

/// Computable stand-ins for the W^{2,6} norm of u.
struct H2Surrogate {
  /// ||beta_eps(u) - h||_6, the equation form of ||Laplace u||_6.
  double laplacian_L6 = 0.0;
  /// ||Laplace u||_6 evaluated from the coefficients.
  double laplacian_L6_spectral = 0.0;
  /// sqrt(sum (1 + lambda_j)^2 u_j^2).
  double spectral_H2 = 0.0;
};

H2Surrogate check_H2_surrogate(const EllipticProblem& p, const Coeffs& u);

} // namespace thermoch
