#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>

namespace thermoch {

enum class PotentialKind { Regular, Logarithmic, DoubleObstacle, Custom };

std::string to_string(PotentialKind kind);

/// Callables describing a user-supplied potential F = beta_hat + pi_hat.
/// beta_min_section must be nondecreasing on the domain with value 0 at 0.
struct CustomPotential {
  std::function<double(double)> beta_hat;
  std::function<double(double)> beta_min_section;
  std::function<double(double)> pi_hat;
  std::function<double(double)> pi;
  double pi_lipschitz = 0.0;
  double domain_lo = -std::numeric_limits<double>::infinity();
  double domain_hi = std::numeric_limits<double>::infinity();
};

/// Double-well potential split into a convex part beta_hat (with
/// subdifferential beta) and a smooth perturbation pi_hat whose derivative
/// pi is Lipschitz.
///
/// The three built-in kinds use the splits
///   Regular:        beta_hat = r^4/4,               pi_hat = (1 - 2r^2)/4
///   Logarithmic:    beta_hat = (1+r)ln(1+r) + (1-r)ln(1-r), pi_hat = -c1 r^2
///   DoubleObstacle: beta_hat = indicator of [-1, 1],        pi_hat = -c2 r^2
class PotentialSpec {
public:
  static PotentialSpec regular();
  static PotentialSpec logarithmic(double c1);
  static PotentialSpec double_obstacle(double c2);
  static PotentialSpec custom(CustomPotential callables);

  PotentialKind kind() const noexcept { return kind_; }
  /// c1 for Logarithmic, c2 for DoubleObstacle, 0 otherwise.
  double coefficient() const noexcept { return coefficient_; }

  /// Convex part; +inf outside the closure of the domain.
  double beta_hat(double r) const;
  double pi_hat(double r) const;
  double pi(double r) const;
  double pi_lipschitz() const noexcept { return pi_lipschitz_; }
  /// Minimal-modulus section beta°(r), defined for r in D(beta).
  double beta_min_section(double r) const;

  /// Endpoints of the closure of D(beta) (possibly infinite).
  double domain_lo() const noexcept { return domain_lo_; }
  double domain_hi() const noexcept { return domain_hi_; }
  bool in_interior(double r) const noexcept { return r > domain_lo_ && r < domain_hi_; }
  bool in_closure(double r) const noexcept { return r >= domain_lo_ && r <= domain_hi_; }
  /// Human-readable D(beta), e.g. "(-1, 1)".
  std::string domain_string() const;

  const CustomPotential* custom_callables() const noexcept {
    return kind_ == PotentialKind::Custom ? &custom_ : nullptr;
  }

private:
  PotentialSpec() = default;

  PotentialKind kind_ = PotentialKind::Regular;
  double coefficient_ = 0.0;
  double pi_lipschitz_ = 1.0;
  double domain_lo_ = -std::numeric_limits<double>::infinity();
  double domain_hi_ = std::numeric_limits<double>::infinity();
  CustomPotential custom_;
};

/// Moreau-Yosida parameter, 0 < eps < 1.
class YosidaParams {
public:
  explicit YosidaParams(double eps);
  double eps() const noexcept { return eps_; }

private:
  double eps_;
};

/// Resolvent (I + eps*beta)^{-1}(r): the unique y with y + eps*beta(y) ∋ r.
/// Throws NumericFailure if the safeguarded Newton iteration stalls.
double resolvent(const PotentialSpec& spec, YosidaParams eps, double r);

/// beta_eps(r) = (r - resolvent(r)) / eps.
double yosida(const PotentialSpec& spec, YosidaParams eps, double r);

/// Derivative of beta_eps. For the obstacle the derivative at |r| = 1 is
/// taken from the inside (0).
double yosida_derivative(const PotentialSpec& spec, YosidaParams eps, double r);

/// Moreau envelope beta_hat_eps(r) = beta_hat(J r) + (r - J r)^2 / (2 eps).
double yosida_primitive(const PotentialSpec& spec, YosidaParams eps, double r);

/// Regularized potential beta_hat_eps + pi_hat, and its derivative.
double regularized_potential(const PotentialSpec& spec, YosidaParams eps, double r);
double regularized_derivative(const PotentialSpec& spec, YosidaParams eps, double r);

struct InteriorBoundConstants {
  double r_lo = 0.0;
  double r_hi = 0.0;
  double delta0 = 0.0;
  double C0 = 0.0;
};

/// Sampled estimate of the smallest C0 >= 0 such that
///   beta_eps(r) (r - r0) >= delta0 |beta_eps(r)| - C0
/// for every sampled eps and r and every r0 in [r_lo, r_hi]. The expression
/// is affine in r0, so only the two endpoints r0 = r_lo, r_hi are checked.
/// Throws CompatibilityError unless r_lo - delta0 and r_hi + delta0 are
/// interior to D(beta).
InteriorBoundConstants interior_bound_constants(const PotentialSpec& spec, double r_lo,
                                                double r_hi, double delta0,
                                                std::span<const double> eps_grid,
                                                std::span<const double> r_grid);

} // namespace thermoch
