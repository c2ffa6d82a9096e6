#include "oracles.hpp"

#include "thermoch/error.hpp"
#include "thermoch/spectral.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace thermoch;

namespace {

constexpr double pi = std::numbers::pi;

BoxDomain interval(double L, int grid = 64) {
  BoxDomain d;
  d.lengths = {L};
  d.grid_points_per_axis = grid;
  return d;
}

BoxDomain rectangle(double L1, double L2, int grid = 32) {
  BoxDomain d;
  d.dim = 2;
  d.lengths = {L1, L2};
  d.grid_points_per_axis = grid;
  return d;
}

Coeffs random_coeffs(const std::shared_ptr<const SpectralBasis>& b, std::mt19937_64& rng, bool zero_mean) {
  std::normal_distribution<double> n;
  Coeffs c(b);
  for (int j = 0; j < c.size(); ++j) c[j] = n(rng);
  if (zero_mean) c[0] = 0.0;
  return c;
}

} // namespace

TEST(Basis, OneDimensionalEigenvalues) {
  const auto b = SpectralBasis::build(interval(1.0), 2);
  EXPECT_EQ(b->eigenvalues()[0], 0.0);
  EXPECT_NEAR(b->eigenvalues()[1], 9.8696044, 1e-7);
  const auto b5 = SpectralBasis::build(interval(2.5), 5);
  for (int j = 0; j < 5; ++j) EXPECT_NEAR(b5->eigenvalues()[j], oracle::neumann_eigenvalue(j, 2.5), 1e-12);
}

TEST(Basis, SingleModeIsTheConstant) {
  const auto b = SpectralBasis::build(interval(1.0), 1);
  EXPECT_EQ(b->eigenvalues()[0], 0.0);
  EXPECT_NEAR(b->evaluate(0, {0.3, 0.0}), 1.0, 1e-15);
}

TEST(Basis, SquareTiesAreLexicographic) {
  const auto b = SpectralBasis::build(rectangle(1.0, 1.0), 3);
  EXPECT_EQ(b->eigenvalues()[0], 0.0);
  EXPECT_NEAR(b->eigenvalues()[1], pi * pi, 1e-12);
  EXPECT_NEAR(b->eigenvalues()[2], pi * pi, 1e-12);
  EXPECT_EQ((b->modes()[1]), (MultiIndex{0, 1}));
  EXPECT_EQ((b->modes()[2]), (MultiIndex{1, 0}));
}

TEST(Basis, EigenvaluesNondecreasingAndOrthonormal) {
  for (const auto& dom : {interval(1.0, 64), interval(3.0, 32), rectangle(1.0, 2.0, 16)}) {
    const auto b = SpectralBasis::build(dom, SpectralBasis::capacity(dom));
    for (int j = 1; j < b->size(); ++j) EXPECT_LE(b->eigenvalues()[j - 1], b->eigenvalues()[j]);
    const Eigen::MatrixXd G = dom.cell_volume() * b->samples() * b->samples().transpose();
    EXPECT_LE((G - Eigen::MatrixXd::Identity(b->size(), b->size())).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Basis, EigenfunctionsSatisfyTheNeumannProblem) {
  const auto dom = rectangle(1.0, 2.0, 16);
  const auto b = SpectralBasis::build(dom, 12);
  const double h = 1e-4;
  for (int j = 0; j < b->size(); ++j) {
    const std::array<double, 2> x{0.37, 1.21};
    auto e = [&](double a, double c) { return b->evaluate(j, {a, c}); };
    const double lap = (e(x[0] + h, x[1]) + e(x[0] - h, x[1]) + e(x[0], x[1] + h) + e(x[0], x[1] - h) - 4 * e(x[0], x[1])) / (h * h);
    EXPECT_NEAR(-lap, b->eigenvalues()[j] * e(x[0], x[1]), 1e-4 * (1.0 + b->eigenvalues()[j]));
    EXPECT_NEAR(oracle::derivative([&](double a) { return e(a, 0.5); }, 0.0), 0.0, 1e-8);
    EXPECT_NEAR(oracle::derivative([&](double c) { return e(0.5, c); }, 2.0), 0.0, 1e-8);
  }
}

TEST(Basis, CapacityIsEnforced) {
  const auto dom = interval(1.0, 8);
  EXPECT_EQ(SpectralBasis::capacity(dom), 5);
  EXPECT_THROW(SpectralBasis::build(dom, 6), ConfigurationError);
  EXPECT_THROW(SpectralBasis::build(dom, 0), ConfigurationError);
}

TEST(Transform, UnresolvedModeIsProjectedAway) {
  const auto dom = interval(1.0, 64);
  const auto full = SpectralBasis::build(dom, 10);
  const auto b = SpectralBasis::build(dom, 6);
  const Field f = to_field(Coeffs::unit(full, 0) + Coeffs::unit(full, 6));
  const Coeffs c = to_coeffs(f, b);
  EXPECT_NEAR((c.values() - Coeffs::unit(b, 0).values()).cwiseAbs().maxCoeff(), 0.0, 1e-13);
}

TEST(Transform, ConstantField) {
  const auto b = SpectralBasis::build(rectangle(2.0, 3.0, 16), 5);
  const Coeffs c = to_coeffs(Field::constant(b->domain_ptr(), 1.5), b);
  EXPECT_NEAR(c[0], 1.5 * std::sqrt(6.0), 1e-13);
  EXPECT_NEAR(c.values().tail(4).cwiseAbs().maxCoeff(), 0.0, 1e-13);
  EXPECT_NEAR(mean_value(c), 1.5, 1e-14);
}

TEST(Transform, RoundTripOnBandLimitedData) {
  std::mt19937_64 rng(11);
  for (const auto& dom : {interval(1.0, 64), rectangle(1.0, 1.5, 32)}) {
    const auto b = SpectralBasis::build(dom, 20);
    const Coeffs c = random_coeffs(b, rng, false);
    EXPECT_LE((to_coeffs(to_field(c), b) - c).values().cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Transform, MeanValueExamples) {
  const auto b = SpectralBasis::build(interval(4.0, 16), 3);
  Coeffs c(b);
  c[0] = 2.0;
  EXPECT_DOUBLE_EQ(mean_value(c), 1.0);
  EXPECT_EQ(mean_value(Coeffs::unit(b, 2)), 0.0);
}

TEST(OperatorN, UnitIntervalExample) {
  const auto b = SpectralBasis::build(interval(1.0), 4);
  const Coeffs u = solve_N(Coeffs::unit(b, 1));
  EXPECT_NEAR(u[1], 1.0 / (pi * pi), 1e-15);
  EXPECT_EQ(u[0], 0.0);
  EXPECT_EQ(solve_N(Coeffs(b)).values().norm(), 0.0);
  EXPECT_THROW(solve_N(Coeffs::unit(b, 0)), DomainError);
}

TEST(OperatorN, WeakFormAgainstEveryTestFunction) {
  std::mt19937_64 rng(3);
  const auto b = SpectralBasis::build(rectangle(1.0, 2.0, 16), 30);
  const Coeffs psi = random_coeffs(b, rng, true);
  const Coeffs u = solve_N(psi);
  for (int j = 0; j < b->size(); ++j) {
    const Coeffs v = Coeffs::unit(b, j);
    EXPECT_NEAR(inner(stiffness_apply(u), v), inner(psi, v), 1e-13);
  }
}

TEST(OperatorN, IdentitiesOnRandomZeroMeanVectors) {
  std::mt19937_64 rng(5);
  const std::pair<BoxDomain, int> cases[] = {
      {interval(1.0, 32), 8}, {interval(1.0, 128), 32}, {interval(1.0, 256), 128}, {rectangle(1.0, 1.0, 16), 64}};
  for (const auto& [dom, n] : cases) {
    const auto b = SpectralBasis::build(dom, n);
    for (int trial = 0; trial < 50; ++trial) {
      const Coeffs psi = random_coeffs(b, rng, true);
      const Coeffs zeta = random_coeffs(b, rng, true);
      EXPECT_NEAR(inner(psi, solve_N(zeta)), inner(zeta, solve_N(psi)), 1e-12);
      const double dual = norm_Vstar(psi);
      EXPECT_NEAR(inner(psi, solve_N(psi)), dual * dual, 1e-12);
      EXPECT_NEAR(std::pow(norm_grad(solve_N(psi)), 2), dual * dual, 1e-12);
    }
  }
}

TEST(Norms, UnitModeExamples) {
  const auto b = SpectralBasis::build(interval(1.0), 4);
  const Coeffs e2 = Coeffs::unit(b, 1);
  EXPECT_DOUBLE_EQ(norm_H(e2), 1.0);
  EXPECT_NEAR(norm_V(e2), std::sqrt(1.0 + pi * pi), 1e-14);
  EXPECT_NEAR(norm_Vstar(e2), 1.0 / pi, 1e-15);
  const Coeffs one = to_coeffs(Field::constant(b->domain_ptr(), 1.0), b);
  EXPECT_NEAR(norm_H(one), 1.0, 1e-14);
  EXPECT_NEAR(norm_V(one), 1.0, 1e-14);
  EXPECT_NEAR(norm_Vstar(one), 1.0, 1e-14);
}

TEST(Norms, LpOfConstantsAndCosines) {
  auto d1 = std::make_shared<const BoxDomain>(interval(1.0, 64));
  EXPECT_NEAR(norm_Lp(Field::constant(d1, 2.0), 6.0), 2.0, 1e-14);
  auto d8 = std::make_shared<const BoxDomain>(rectangle(2.0, 4.0, 16));
  EXPECT_NEAR(norm_Lp(Field::constant(d8, 2.0), 6.0), 2.0 * std::pow(8.0, 1.0 / 6.0), 1e-13);

  Field c(d1);
  for (int k = 0; k < c.size(); ++k) c.values()[k] = std::cos(pi * d1->point(k)[0]);
  auto cos_p = [](double x, double p) { return std::pow(std::abs(std::cos(pi * x)), p); };
  for (double p : {2.0, 4.0, 6.0}) {
    const double exact = std::pow(oracle::simpson([&](double x) { return cos_p(x, p); }, 0.0, 1.0, 4000), 1.0 / p);
    EXPECT_NEAR(norm_Lp(c, p), exact, 1e-8) << "p = " << p;
  }
  EXPECT_NEAR(norm_Lp(c, std::numeric_limits<double>::infinity()), std::cos(pi / 128), 1e-15);
}

TEST(Stiffness, ActsDiagonally) {
  std::mt19937_64 rng(9);
  const auto b = SpectralBasis::build(interval(1.0), 6);
  EXPECT_EQ(stiffness_apply(Coeffs::unit(b, 0)).values().norm(), 0.0);
  EXPECT_NEAR(stiffness_apply(Coeffs::unit(b, 1))[1], pi * pi, 1e-13);
  const Coeffs u = random_coeffs(b, rng, false), v = random_coeffs(b, rng, false);
  const Coeffs lhs = stiffness_apply(2.0 * u + (-3.0) * v);
  const Coeffs rhs = 2.0 * stiffness_apply(u) + (-3.0) * stiffness_apply(v);
  EXPECT_LE((lhs - rhs).values().cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Norms, PoincareAndProjection) {
  std::mt19937_64 rng(13);
  const auto dom = rectangle(1.0, 2.0, 16);
  const auto b = SpectralBasis::build(dom, 20);
  const auto full = SpectralBasis::build(dom, SpectralBasis::capacity(dom));
  for (int trial = 0; trial < 100; ++trial) {
    Coeffs v = random_coeffs(b, rng, false);
    Coeffs fluct = v;
    fluct[0] = 0.0;
    EXPECT_LE(std::pow(norm_H(fluct), 2), std::pow(norm_grad(v), 2) / b->eigenvalues()[1] + 1e-12);

    const Coeffs big = random_coeffs(full, rng, false);
    const Coeffs p = to_coeffs(to_field(big), b);
    EXPECT_LE(norm_H(p), norm_H(big) + 1e-12);
    EXPECT_LE(norm_grad(p), norm_grad(big) + 1e-12);
  }
}

TEST(Basis, TiedEigenvaluesAreExactlyEqual) {
  BoxDomain d;
  d.dim = 2;
  d.lengths = {1.0, 1.5};
  d.grid_points_per_axis = 32;
  const auto basis = SpectralBasis::build(d, 64);
  for (int j = 1; j < basis->size(); ++j) EXPECT_GE(basis->eigenvalues()[j], basis->eigenvalues()[j - 1]) << j;
}
