#pragma once

#include "thermoch/elliptic.hpp"
#include "thermoch/potentials.hpp"
#include "thermoch/spectral.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace thermoch {

/// Outcome of one property check: pass iff value <= tolerance.
struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

bool all_pass(const std::vector<Check>& checks);

/// Yosida properties of beta_eps on `samples` uniform points in [-3, 3]:
/// monotonicity, the 1/eps Lipschitz bound, beta_eps(0) = 0,
/// |beta_eps| <= |beta°| inside D(beta), 0 <= beta_hat_eps <= beta_hat, and
/// the defining inclusion y + eps beta(y) = r of the resolvent.
std::vector<Check> verify_potential(const PotentialSpec& spec, YosidaParams eps, int samples, std::uint64_t seed);

/// Basis and operator-N identities on random coefficient vectors:
/// orthonormality, closed-form eigenvalues, N symmetry and duality, the
/// time-integration identity on a piecewise linear path, the Poincare
/// bound, projection non-expansiveness and rejection of nonzero means.
std::vector<Check> verify_spectral(const std::shared_ptr<const SpectralBasis>& basis, int samples,
                                   std::uint64_t seed);

/// L6 bound for the given right-hand side plus `samples` random band-limited
/// ones, equality for a constant right-hand side, and agreement of two
/// Newton starts (compared through beta_eps(u) for the obstacle, whose
/// solution is only unique up to constants).
std::vector<Check> verify_elliptic(const EllipticProblem& problem, int samples, std::uint64_t seed);

} // namespace thermoch
