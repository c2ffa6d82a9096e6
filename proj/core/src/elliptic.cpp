#include "thermoch/elliptic.hpp"

#include "thermoch/error.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <sstream>

namespace thermoch {

namespace {

constexpr int kMaxIterations = 200;
constexpr int kMaxHalvings = 30;

Eigen::VectorXd apply_yosida(const EllipticProblem& p, const Eigen::VectorXd& grid) {
  Eigen::VectorXd out(grid.size());
  for (Eigen::Index k = 0; k < grid.size(); ++k) out[k] = yosida(p.potential, p.eps, grid[k]);
  return out;
}

} // namespace

EllipticSolution solve_elliptic(const EllipticProblem& p, std::optional<Coeffs> initial_guess) {
  const auto& basis = *p.basis;
  const auto& B = basis.samples();
  const auto& lam = basis.eigenvalues();
  const double vol = basis.domain().cell_volume();
  const Eigen::VectorXd h_hat = to_coeffs(p.h, p.basis).values();
  const double scale = 1.0 + norm_Lp(p.h, 2.0);
  const double tol = 1e-10 * scale;
  // Newton keeps polishing past tol while the residual still drops.
  const double target = 1e-14 * scale;

  Eigen::VectorXd u = initial_guess ? initial_guess->values() : Eigen::VectorXd::Zero(basis.size());
  auto residual = [&](const Eigen::VectorXd& x) {
    return Eigen::VectorXd(lam.cwiseProduct(x) + vol * (B * apply_yosida(p, B.transpose() * x)) - h_hat);
  };

  Eigen::VectorXd r = residual(u);
  double rn = r.norm();
  int it = 0;
  for (; it < kMaxIterations && rn > target; ++it) {
    const Eigen::VectorXd grid = B.transpose() * u;
    Eigen::VectorXd curvature(grid.size());
    for (Eigen::Index k = 0; k < grid.size(); ++k) curvature[k] = vol * yosida_derivative(p.potential, p.eps, grid[k]);
    Eigen::MatrixXd J = B * curvature.asDiagonal() * B.transpose();
    J.diagonal() += lam;
    // Levenberg shift: the Jacobian is singular in the constant mode wherever beta_eps' vanishes.
    J.diagonal().array() += std::min(rn, 1.0);
    const Eigen::VectorXd delta = J.ldlt().solve(-r);

    double s = 1.0;
    bool accepted = false;
    for (int k = 0; k <= kMaxHalvings; ++k, s *= 0.5) {
      const Eigen::VectorXd trial = u + s * delta;
      const Eigen::VectorXd rt = residual(trial);
      const double tn = rt.norm();
      // Equality is accepted so that the iteration can cross regions where
      // beta_eps is flat (obstacle) and the residual does not yet change.
      if (tn < rn || (tn == rn && rn > tol && s * delta.norm() > 0.0)) {
        u = trial;
        r = rt;
        rn = tn;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  if (!(rn <= tol)) {
    std::ostringstream os;
    os << "elliptic solve: Newton stalled after " << it << " iterations (residual " << rn << ", tolerance " << tol
       << ")";
    throw NumericFailure(os.str());
  }
  return {Coeffs(p.basis, std::move(u)), rn, it};
}

L6Check check_L6_bound(const EllipticProblem& p, const Coeffs& u, double slack) {
  const Field ug = to_field(u);
  const Field xi(ug.domain_ptr(), apply_yosida(p, ug.values()));
  L6Check c;
  c.lhs = norm_Lp(xi, 6.0);
  c.rhs = norm_Lp(p.h, 6.0);
  c.pass = c.lhs <= c.rhs * (1.0 + slack);
  return c;
}

H2Surrogate check_H2_surrogate(const EllipticProblem& p, const Coeffs& u) {
  const Field ug = to_field(u);
  const Field lap_eq(ug.domain_ptr(), apply_yosida(p, ug.values()) - p.h.values());
  Coeffs lap = stiffness_apply(u);
  lap *= -1.0;
  H2Surrogate s;
  s.laplacian_L6 = norm_Lp(lap_eq, 6.0);
  s.laplacian_L6_spectral = norm_Lp(to_field(lap), 6.0);
  const auto& lam = u.basis().eigenvalues();
  s.spectral_H2 = std::sqrt(((1.0 + lam.array()).square() * u.values().array().square()).sum());
  return s;
}

} // namespace thermoch
