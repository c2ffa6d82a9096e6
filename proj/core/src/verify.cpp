#include "thermoch/verify.hpp"

#include "thermoch/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace thermoch {

namespace {

Check make_check(std::string name, double value, double tolerance) {
  return {std::move(name), value, tolerance, value <= tolerance};
}

Coeffs random_coeffs(const std::shared_ptr<const SpectralBasis>& basis, std::mt19937_64& rng, bool zero_mean) {
  std::normal_distribution<double> normal;
  Coeffs c(basis);
  for (int j = 0; j < c.size(); ++j) c[j] = normal(rng);
  if (zero_mean) c[0] = 0.0;
  return c;
}

} // namespace

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::vector<Check> verify_potential(const PotentialSpec& spec, YosidaParams eps, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-3.0, 3.0);
  std::vector<double> r(static_cast<std::size_t>(samples));
  for (auto& x : r) x = uniform(rng);
  r.push_back(0.0);
  std::sort(r.begin(), r.end());

  std::vector<double> b(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) b[i] = yosida(spec, eps, r[i]);

  double decrease = 0.0, lipschitz = 0.0;
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    decrease = std::max(decrease, b[i] - b[i + 1]);
    lipschitz = std::max(lipschitz, std::abs(b[i + 1] - b[i]) - (r[i + 1] - r[i]) / eps.eps());
  }

  double section = 0.0, envelope = 0.0, inclusion = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (spec.in_interior(r[i])) section = std::max(section, std::abs(b[i]) - std::abs(spec.beta_min_section(r[i])));
    const double hat_eps = yosida_primitive(spec, eps, r[i]);
    envelope = std::max(envelope, -hat_eps);
    const double hat = spec.beta_hat(r[i]);
    if (std::isfinite(hat)) envelope = std::max(envelope, hat_eps - hat);

    const double y = resolvent(spec, eps, r[i]);
    if (spec.in_interior(y)) {
      // Residual of y + eps beta(y) = r divided by the slope 1 + eps beta'(y),
      // i.e. the size of the next Newton correction in y. The slope comes from
      // 1 - eps beta_eps'(r) = 1 / (1 + eps beta'(y)), which stays accurate
      // when y is within rounding of the boundary of D(beta).
      const double inv_slope = std::max(1.0 - eps.eps() * yosida_derivative(spec, eps, r[i]), 0.0);
      inclusion = std::max(inclusion, std::abs(y + eps.eps() * spec.beta_min_section(y) - r[i]) * inv_slope);
    } else if ((r[i] - y) * y < 0.0 || !spec.in_closure(y)) {
      inclusion = std::max(inclusion, std::abs(r[i] - y));
    }
  }

  return {
      make_check("monotonicity", decrease, 1e-10),
      make_check("lipschitz_1_over_eps", lipschitz, 1e-10),
      make_check("beta_eps_at_zero", std::abs(yosida(spec, eps, 0.0)), 1e-10),
      make_check("bounded_by_min_section", section, 1e-10),
      make_check("envelope_between_0_and_beta_hat", envelope, 1e-10),
      make_check("resolvent_inclusion", inclusion, 1e-10),
  };
}

std::vector<Check> verify_spectral(const std::shared_ptr<const SpectralBasis>& basis, int samples,
                                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int trials = std::min(samples, 200);
  const auto& dom = basis->domain();
  const double vol = dom.cell_volume();

  const Eigen::MatrixXd gram = vol * basis->samples() * basis->samples().transpose();
  const double ortho = (gram - Eigen::MatrixXd::Identity(basis->size(), basis->size())).cwiseAbs().maxCoeff();

  double eig = 0.0;
  for (int j = 0; j < basis->size(); ++j) {
    const auto& m = basis->modes()[static_cast<std::size_t>(j)];
    double exact = std::pow(m[0] * std::numbers::pi / dom.lengths[0], 2);
    if (dom.dim == 2) exact += std::pow(m[1] * std::numbers::pi / dom.lengths[1], 2);
    eig = std::max(eig, std::abs(basis->eigenvalues()[j] - exact) / (1.0 + exact));
    if (j > 0 && basis->eigenvalues()[j] < basis->eigenvalues()[j - 1]) eig = std::max(eig, 1.0);
  }

  double symmetry = 0.0, duality = 0.0, poincare = 0.0, projection = 0.0, path = 0.0;
  const double lambda2 = basis->size() > 1 ? basis->eigenvalues()[1] : 0.0;
  const auto full = SpectralBasis::build(dom, SpectralBasis::capacity(dom));
  for (int s = 0; s < trials && basis->size() > 1; ++s) {
    const Coeffs psi = random_coeffs(basis, rng, true);
    const Coeffs zeta = random_coeffs(basis, rng, true);
    symmetry = std::max(symmetry, std::abs(inner(psi, solve_N(zeta)) - inner(zeta, solve_N(psi))));
    const double dual = norm_Vstar(psi);
    duality = std::max(duality, std::abs(inner(psi, solve_N(psi)) - dual * dual));
    const double g = norm_grad(solve_N(psi));
    duality = std::max(duality, std::abs(g * g - dual * dual));

    const Coeffs v = random_coeffs(basis, rng, false);
    Coeffs fluct = v;
    fluct[0] = 0.0;
    const double gv = norm_grad(v);
    poincare = std::max(poincare, std::pow(norm_H(fluct), 2) - gv * gv / lambda2);

    const Coeffs big = random_coeffs(full, rng, false);
    const Coeffs proj = to_coeffs(to_field(big), basis);
    projection = std::max({projection, norm_H(proj) - norm_H(big), norm_grad(proj) - norm_grad(big)});

    // Piecewise linear path through random knots: the integrand <v', N v> is
    // linear on every segment, so the midpoint rule is exact.
    Coeffs prev = psi;
    double integral = 0.0;
    for (int k = 0; k < 4; ++k) {
      const Coeffs next = random_coeffs(basis, rng, true);
      integral += inner(next - prev, solve_N(0.5 * (next + prev)));
      prev = next;
    }
    const double a = norm_Vstar(psi), b = norm_Vstar(prev);
    path = std::max(path, std::abs(integral - (0.5 * b * b - 0.5 * a * a)));
  }

  double rejects_mean = 1.0;
  try {
    solve_N(Coeffs::unit(basis, 0));
  } catch (const DomainError&) {
    rejects_mean = 0.0;
  }

  return {
      make_check("orthonormality", ortho, 1e-10),
      make_check("closed_form_eigenvalues", eig, 1e-12),
      make_check("N_symmetry", symmetry, 1e-12),
      make_check("N_duality", duality, 1e-12),
      make_check("N_time_integration", path, 1e-12),
      make_check("poincare", poincare, 1e-12),
      make_check("projection_nonexpansive", projection, 1e-12),
      make_check("N_rejects_nonzero_mean", rejects_mean, 0.0),
  };
}

std::vector<Check> verify_elliptic(const EllipticProblem& problem, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const auto& basis = problem.basis;
  const bool unique_u = problem.potential.kind() != PotentialKind::DoubleObstacle;

  auto xi_of = [&](const Coeffs& u) {
    Eigen::VectorXd g = to_field(u).values();
    for (auto& x : g) x = yosida(problem.potential, problem.eps, x);
    return g;
  };

  std::vector<EllipticProblem> cases{problem};
  for (int s = 0; s < samples; ++s) {
    Coeffs h(basis);
    for (int j = 0; j < std::min(basis->size(), 8); ++j) h[j] = normal(rng) / (1.0 + j);
    EllipticProblem p = problem;
    p.h = to_field(h);
    cases.push_back(std::move(p));
  }

  double bound = 0.0, starts = 0.0;
  for (const auto& p : cases) {
    const auto sol = solve_elliptic(p);
    const auto l6 = check_L6_bound(p, sol.u);
    bound = std::max(bound, l6.lhs / std::max(l6.rhs, 1e-300) - 1.0);

    Coeffs guess(basis);
    guess[0] = 1.5 * std::sqrt(basis->domain().measure());
    for (int j = 1; j < basis->size(); ++j) guess[j] = 0.1 * normal(rng);
    const auto other = solve_elliptic(p, guess);
    const double diff = unique_u ? (sol.u - other.u).values().cwiseAbs().maxCoeff()
                                 : (xi_of(sol.u) - xi_of(other.u)).cwiseAbs().maxCoeff();
    starts = std::max(starts, diff);
  }

  EllipticProblem constant = problem;
  constant.h = Field::constant(basis->domain_ptr(), 0.7);
  const auto sol = solve_elliptic(constant);
  const auto l6 = check_L6_bound(constant, sol.u);

  return {
      make_check("L6_bound", bound, 1e-6),
      make_check("constant_rhs_equality", std::abs(l6.lhs - l6.rhs), 1e-12),
      make_check("newton_starts_agree", starts, 1e-8),
  };
}

} // namespace thermoch
