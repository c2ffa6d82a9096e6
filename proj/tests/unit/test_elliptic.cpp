#include "thermoch/elliptic.hpp"
#include "thermoch/error.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace thermoch;

namespace {

constexpr double pi = std::numbers::pi;

std::shared_ptr<const SpectralBasis> basis_1d(int n = 16) {
  BoxDomain d;
  d.grid_points_per_axis = 64;
  return SpectralBasis::build(d, n);
}

std::shared_ptr<const SpectralBasis> basis_2d(int n = 20) {
  BoxDomain d;
  d.dim = 2;
  d.lengths = {1.0, 2.0};
  d.grid_points_per_axis = 24;
  return SpectralBasis::build(d, n);
}

Field random_h(const std::shared_ptr<const SpectralBasis>& basis, unsigned seed, double scale) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, scale);
  Coeffs c(basis);
  for (int j = 0; j < c.size(); ++j) c[j] = n(rng) / (1.0 + std::sqrt(basis->eigenvalues()[j]));
  return to_field(c);
}

// beta_eps(u) = c has the root u = J(u) + eps c, where J(u) solves beta(J) = c.
double constant_root(PotentialKind kind, double eps, double c) {
  switch (kind) {
  case PotentialKind::Regular: return std::cbrt(c) + eps * c;
  case PotentialKind::Logarithmic: return std::tanh(0.5 * c) + eps * c;
  case PotentialKind::DoubleObstacle: return (c > 0 ? 1.0 : (c < 0 ? -1.0 : 0.0)) + eps * c;
  default: return NAN;
  }
}

std::vector<PotentialSpec> prototypes() {
  return {PotentialSpec::regular(), PotentialSpec::logarithmic(2.0), PotentialSpec::double_obstacle(1.0)};
}

} // namespace

TEST(Elliptic, ConstantDataHaveConstantSolutions) {
  const auto basis = basis_1d();
  for (const auto& spec : prototypes()) {
    for (double e : {0.5, 0.1, 0.02}) {
      for (double c : {-2.0, 0.7, 3.0}) {
        EllipticProblem p{basis, spec, YosidaParams(e), Field::constant(basis->domain_ptr(), c)};
        const auto sol = solve_elliptic(p);
        EXPECT_NEAR(sol.u[0], constant_root(spec.kind(), e, c), 1e-9) << to_string(spec.kind()) << " " << e;
        EXPECT_LE(sol.u.values().tail(sol.u.size() - 1).norm(), 1e-9);
      }
    }
  }
}

TEST(Elliptic, SolutionSatisfiesTheGalerkinEquation) {
  for (const auto& basis : {basis_1d(), basis_2d()}) {
    for (const auto& spec : prototypes()) {
      EllipticProblem p{basis, spec, YosidaParams(0.1), random_h(basis, 7, 3.0)};
      const auto sol = solve_elliptic(p);
      const Field ug = to_field(sol.u);
      Field xi(ug.domain_ptr());
      for (int k = 0; k < ug.size(); ++k) xi.values()[k] = yosida(spec, p.eps, ug.values()[k]);
      const Coeffs res = stiffness_apply(sol.u) + to_coeffs(xi, basis) - to_coeffs(p.h, basis);
      EXPECT_LE(norm_H(res), 1e-9) << to_string(spec.kind());
      EXPECT_LE(sol.residual, 1e-10 * (1.0 + norm_Lp(p.h, 2.0)));
    }
  }
}

TEST(Elliptic, SmoothDatumMatchesTheExactModeSolution) {
  // For the obstacle with |u| <= 1 everywhere, beta_eps(u) = 0 and -u'' = h
  // has the solution u = h / (pi^2) for h = A cos(pi x) up to the constant 0.
  const auto basis = basis_1d();
  Field h(basis->domain_ptr());
  for (int k = 0; k < h.size(); ++k) h.values()[k] = 2.0 * std::cos(pi * basis->domain().point(k)[0]);
  EllipticProblem p{basis, PotentialSpec::double_obstacle(1.0), YosidaParams(0.1), h};
  const Field u = to_field(solve_elliptic(p).u);
  for (int k = 0; k < u.size(); ++k) EXPECT_NEAR(u.values()[k], h.values()[k] / (pi * pi), 1e-9);
}

TEST(Elliptic, L6BoundHoldsOnRandomData) {
  for (const auto& basis : {basis_1d(), basis_2d()}) {
    for (const auto& spec : prototypes()) {
      for (unsigned seed = 1; seed <= 5; ++seed) {
        EllipticProblem p{basis, spec, YosidaParams(0.05), random_h(basis, seed, 4.0)};
        const auto check = check_L6_bound(p, solve_elliptic(p).u);
        EXPECT_TRUE(check.pass) << to_string(spec.kind()) << " " << check.lhs << " > " << check.rhs;
        EXPECT_LE(check.lhs, check.rhs * (1.0 + 1e-6));
      }
    }
  }
}

TEST(Elliptic, ConstantDatumGivesEqualityInTheL6Bound) {
  const auto basis = basis_2d();
  for (const auto& spec : prototypes()) {
    EllipticProblem p{basis, spec, YosidaParams(0.1), Field::constant(basis->domain_ptr(), 0.7)};
    const auto check = check_L6_bound(p, solve_elliptic(p).u);
    EXPECT_NEAR(check.lhs, check.rhs, 1e-12 * check.rhs);
  }
}

TEST(Elliptic, DifferentStartsReachTheSameSolution) {
  const auto basis = basis_1d();
  for (const auto& spec : {PotentialSpec::regular(), PotentialSpec::logarithmic(2.0)}) {
    EllipticProblem p{basis, spec, YosidaParams(0.1), random_h(basis, 11, 2.0)};
    Coeffs start(basis);
    start[0] = 1.5;
    start[3] = -0.4;
    const auto a = solve_elliptic(p);
    const auto b = solve_elliptic(p, start);
    EXPECT_LE(norm_H(a.u - b.u), 1e-8);
  }
}

TEST(Elliptic, H2SurrogatesAreConsistent) {
  const auto basis = basis_1d(24);
  EllipticProblem p{basis, PotentialSpec::regular(), YosidaParams(0.1), random_h(basis, 3, 1.0)};
  const auto sol = solve_elliptic(p);
  const auto s = check_H2_surrogate(p, sol.u);
  EXPECT_TRUE(std::isfinite(s.laplacian_L6));
  EXPECT_GT(s.spectral_H2, 0.0);
  EXPECT_GE(s.spectral_H2, norm_H(sol.u));
  EXPECT_NEAR(s.laplacian_L6_spectral, s.laplacian_L6, 0.5 * s.laplacian_L6);
}

TEST(Elliptic, NonFiniteDatumFails) {
  const auto basis = basis_1d();
  EllipticProblem p{basis, PotentialSpec::regular(), YosidaParams(0.1),
                    Field::constant(basis->domain_ptr(), std::numeric_limits<double>::quiet_NaN())};
  EXPECT_THROW(solve_elliptic(p), NumericFailure);
}
