#include "oracles.hpp"

#include "thermoch/analysis.hpp"
#include "thermoch/error.hpp"
#include "thermoch/galerkin.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace thermoch;

namespace {

constexpr double pi = std::numbers::pi;

struct Case {
  std::shared_ptr<const SpectralBasis> basis;
  ProblemData data;
};

template <class F>
Field sample(const std::shared_ptr<const BoxDomain>& d, F&& fn) {
  Field f(d);
  for (int k = 0; k < f.size(); ++k) f.values()[k] = fn(d->point(k)[0]);
  return f;
}

Case make_setup(PotentialSpec potential = PotentialSpec::regular(), int n = 16) {
  BoxDomain dom;
  dom.grid_points_per_axis = 64;
  Case s;
  s.basis = SpectralBasis::build(dom, n);
  const auto d = s.basis->domain_ptr();
  auto& p = s.data;
  p.potential = potential;
  p.eps = YosidaParams(0.1);
  p.phi0 = sample(d, [](double x) { return 0.1 + 0.3 * std::cos(pi * x) + 0.2 * std::cos(2 * pi * x); });
  p.w0 = sample(d, [](double x) { return 0.1 * std::cos(pi * x); });
  p.w1 = Field::constant(d, 0.0);
  p.f = DataSchedule(sample(d, [](double x) { return 0.2 + 0.1 * std::cos(pi * x); }));
  p.g = DataSchedule(sample(d, [](double x) { return 0.3 * std::cos(3 * pi * x); }));
  p.T_final = 0.2;
  return s;
}

Case homogeneous(double c0, double lambda) {
  Case s = make_setup();
  const auto d = s.basis->domain_ptr();
  s.data.params.lambda_latent = lambda;
  s.data.phi0 = Field::constant(d, c0);
  s.data.w0 = Field::constant(d, 0.0);
  s.data.f = DataSchedule(Field::constant(d, 0.0));
  s.data.g = DataSchedule(Field::constant(d, 0.0));
  s.data.T_final = 1.0;
  return s;
}

} // namespace

TEST(Projection, RejectsIncompatibleInitialData) {
  Case s = make_setup(PotentialSpec::logarithmic(2.0));
  s.data.phi0 = sample(s.basis->domain_ptr(), [](double x) { return 1.2 * std::cos(pi * x); });
  try {
    project_initial_data(s.data, s.basis);
    FAIL() << "expected a compatibility error";
  } catch (const CompatibilityError& e) {
    EXPECT_NE(std::string(e.what()).find("phi0"), std::string::npos);
  }
}

TEST(Step, MeanFollowsTheImplicitRecursion) {
  for (auto scheme : {TimeScheme::SemiImplicit, TimeScheme::BackwardEuler}) {
    Case s = make_setup();
    StepOptions opt;
    opt.scheme = scheme;
    GalerkinState st = project_initial_data(s.data, s.basis);
    const double fbar = 0.2;
    double c = mean_value(st.phi);
    for (int k = 0; k < 20; ++k) {
      st = step(st, s.data, 0.01, opt);
      c = (c + 0.01 * fbar) / (1.0 + s.data.params.gamma * 0.01);
      ASSERT_NEAR(mean_value(st.phi), c, 1e-12) << to_string(scheme);
    }
  }
}

// The backward Euler update must satisfy (X+ - X)/dt = rhs(X+) with the
// sources frozen at the start of the step.
TEST(Step, BackwardEulerSolvesTheImplicitSystem) {
  for (const auto& pot : {PotentialSpec::regular(), PotentialSpec::logarithmic(2.0), PotentialSpec::double_obstacle(1.0)}) {
    Case s = make_setup(pot);
    StepOptions opt;
    opt.scheme = TimeScheme::BackwardEuler;
    const GalerkinState st = project_initial_data(s.data, s.basis);
    const double dt = 0.01;
    GalerkinState next = step(st, s.data, dt, opt);
    EXPECT_NEAR(next.t, dt, 1e-15);
    GalerkinState frozen = next;
    frozen.t = st.t;
    const Derivatives d = rhs(frozen, s.data);
    EXPECT_LE(((next.phi - st.phi).values() / dt - d.dphi.values()).norm(), 1e-7);
    EXPECT_LE(((next.w - st.w).values() / dt - d.dw.values()).norm(), 1e-9);
    EXPECT_LE(((next.v - st.v).values() / dt - d.dv.values()).norm(), 1e-7);
  }
}

TEST(Step, SchemesAgreeAsTheStepShrinks) {
  Case s = make_setup();
  double prev = 0.0;
  for (double dt : {4e-3, 2e-3, 1e-3}) {
    SimulationOptions a{dt, {}}, b{dt, {}};
    b.step.scheme = TimeScheme::BackwardEuler;
    const auto ra = simulate(s.data, s.basis, a);
    const auto rb = simulate(s.data, s.basis, b);
    const double diff = norm_H(ra.trajectory.back().state.phi - rb.trajectory.back().state.phi);
    if (prev > 0.0) {
      EXPECT_LT(diff, 0.7 * prev);
    }
    prev = diff;
  }
}

TEST(Simulate, HomogeneousBenchmarkIsFirstOrder) {
  Case s = homogeneous(0.3, 2.0);
  for (auto scheme : {TimeScheme::SemiImplicit, TimeScheme::BackwardEuler}) {
    std::vector<double> err;
    for (double dt : {1e-2, 5e-3, 2.5e-3}) {
      SimulationOptions opt{dt, {}};
      opt.step.scheme = scheme;
      const auto r = simulate(s.data, s.basis, opt);
      const auto& last = r.trajectory.back().state;
      ASSERT_NEAR(last.t, 1.0, 1e-15);
      const double c = mean_value(last.phi);
      const double v = last.v[0];
      EXPECT_LE(std::abs(c - 0.3 * std::exp(-1.0)), 3 * dt);
      EXPECT_LE(std::abs(v - 0.6 * (1.0 - std::exp(-1.0))), 3 * dt);
      EXPECT_NEAR(c, oracle::implicit_mean(0.3, 0.0, 1.0, dt, static_cast<int>(std::lround(1.0 / dt))), 1e-12);
      err.push_back(std::abs(c - 0.3 * std::exp(-1.0)));
      EXPECT_LE(last.phi.values().tail(last.phi.size() - 1).norm(), 1e-14);
    }
    EXPECT_NEAR(std::log2(err[0] / err[1]), 1.0, 0.1);
    EXPECT_NEAR(std::log2(err[1] / err[2]), 1.0, 0.1);
  }
}

TEST(Simulate, TimeGridAndTruncatedLastStep) {
  Case s = make_setup();
  s.data.T_final = 0.105;
  int calls = 0;
  const auto r = simulate(s.data, s.basis, {0.01, {}}, [&](const TrajectoryPoint&) { ++calls; });
  ASSERT_TRUE(r.completed);
  ASSERT_EQ(r.trajectory.size(), 12u);
  EXPECT_EQ(calls, 12);
  for (std::size_t k = 0; k + 1 < r.trajectory.size(); ++k) EXPECT_EQ(r.trajectory[k].state.t, 0.01 * k);
  EXPECT_EQ(r.trajectory.back().state.t, 0.105);
}

TEST(Simulate, FailedStepsAreHalved) {
  Case s = make_setup(PotentialSpec::logarithmic(2.0));
  SimulationOptions opt{0.05, {}};
  opt.step.scheme = TimeScheme::BackwardEuler;
  opt.step.newton_max_iterations = 2;
  const auto r = simulate(s.data, s.basis, opt);
  ASSERT_TRUE(r.completed) << r.failure;
  EXPECT_GT(r.trajectory.size(), 5u);
  for (std::size_t k = 1; k < r.trajectory.size(); ++k)
    EXPECT_GT(r.trajectory[k].state.t, r.trajectory[k - 1].state.t);
  EXPECT_NEAR(r.trajectory.back().state.t, s.data.T_final, 1e-15);
}

TEST(Simulate, StepFailureBelowTheFloorIsReported) {
  Case s = make_setup();
  SimulationOptions opt{0.05, {}};
  opt.step.scheme = TimeScheme::BackwardEuler;
  opt.step.newton_max_iterations = 0;
  opt.step.newton_tolerance = 0.0;
  const auto r = simulate(s.data, s.basis, opt);
  EXPECT_FALSE(r.completed);
  EXPECT_FALSE(r.failure.empty());
  EXPECT_EQ(r.trajectory.size(), 1u);
}

TEST(Diagnostics, ChemicalPotentialReconstruction) {
  Case s = make_setup();
  const GalerkinState st = project_initial_data(s.data, s.basis);
  const auto mr = reconstruct_mu(st, s.data);
  const Field phi = to_field(st.phi);
  for (int k = 0; k < phi.size(); ++k)
    EXPECT_EQ(mr.xi.values()[k], yosida(s.data.potential, s.data.eps, phi.values()[k]));
  // mu_j = lambda_j phi_j + (P_n (xi + pi(phi) + a))_j - b v_j
  Field g(phi.domain_ptr());
  for (int k = 0; k < phi.size(); ++k) g.values()[k] = mr.xi.values()[k] - phi.values()[k] + s.data.params.a;
  const Coeffs expect = stiffness_apply(st.phi) + to_coeffs(g, s.basis) - s.data.params.b * st.v;
  EXPECT_LE((mr.mu - expect).values().cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Diagnostics, EnergyIdentityResidualHalvesWithTheStep) {
  Case s = make_setup(PotentialSpec::regular(), 32);
  s.data.T_final = 0.5;
  for (auto scheme : {TimeScheme::SemiImplicit, TimeScheme::BackwardEuler}) {
    std::vector<double> res;
    for (double dt : {4e-3, 2e-3, 1e-3}) {
      SimulationOptions opt{dt, {}};
      opt.step.scheme = scheme;
      res.push_back(energy_identity_residual(records_of(simulate(s.data, s.basis, opt).trajectory)));
    }
    for (std::size_t i = 1; i < res.size(); ++i) {
      EXPECT_GT(res[i - 1] / res[i], 1.6) << to_string(scheme);
      EXPECT_LT(res[i - 1] / res[i], 2.6) << to_string(scheme);
    }
  }
}

TEST(Diagnostics, ExactMeanUsesPiecewiseIntegrals) {
  Case s = make_setup();
  const auto d = s.basis->domain_ptr();
  s.data.f = DataSchedule({0.0, 0.5}, {Field::constant(d, 1.0), Field::constant(d, -2.0)});
  const double m0 = s.data.initial_mean();
  const double g = s.data.params.gamma;
  const double at_half = oracle::exact_mean(m0, 1.0, g, 0.5);
  EXPECT_NEAR(exact_mean(s.data, 0.5), at_half, 1e-14);
  EXPECT_NEAR(exact_mean(s.data, 0.8), oracle::exact_mean(at_half, -2.0, g, 0.3), 1e-14);
}
