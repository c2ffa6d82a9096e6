#pragma once

#include <Eigen/Dense>

#include <array>
#include <memory>
#include <vector>

namespace thermoch {

/// Interval (0, L1) or rectangle (0, L1) x (0, L2) with a uniform
/// cell-centred quadrature grid of `grid_points_per_axis` points per axis.
struct BoxDomain {
  int dim = 1;
  std::vector<double> lengths{1.0};
  int grid_points_per_axis = 64;

  /// Throws ConfigurationError on an invalid description.
  void validate() const;
  double measure() const;
  int num_points() const;
  /// Quadrature weight of a single grid point, |Omega| / num_points().
  double cell_volume() const;
  /// Coordinates of flat grid index k (x varies fastest).
  std::array<double, 2> point(int k) const;

  bool operator==(const BoxDomain&) const = default;
};

using MultiIndex = std::array<int, 2>;

/// Neumann-Laplacian eigenpairs on a BoxDomain, sorted by nondecreasing
/// eigenvalue with ties broken by lexicographic multi-index.
///
/// e_1 = 1/sqrt(|Omega|), e_k(x) = prod_i c_{k_i} cos(k_i pi x_i / L_i) with
/// c_0 = sqrt(1/L), c_k = sqrt(2/L). Only modes with 2 k_i <= grid points
/// per axis are admissible.
class SpectralBasis {
public:
  static std::shared_ptr<const SpectralBasis> build(const BoxDomain& domain, int n);
  /// Number of admissible modes for the domain's grid.
  static int capacity(const BoxDomain& domain);

  int size() const noexcept { return static_cast<int>(eigenvalues_.size()); }
  const BoxDomain& domain() const noexcept { return *domain_; }
  const std::shared_ptr<const BoxDomain>& domain_ptr() const noexcept { return domain_; }
  const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
  const std::vector<MultiIndex>& modes() const noexcept { return modes_; }
  /// samples()(j, k) = e_j(x_k).
  const Eigen::MatrixXd& samples() const noexcept { return samples_; }

  /// Evaluate e_j at an arbitrary point.
  double evaluate(int j, std::array<double, 2> x) const;

private:
  SpectralBasis() = default;

  std::shared_ptr<const BoxDomain> domain_;
  std::vector<MultiIndex> modes_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd samples_;
};

/// Coordinates of an element of V_n in the eigenbasis.
class Coeffs {
public:
  Coeffs() = default;
  explicit Coeffs(std::shared_ptr<const SpectralBasis> basis);
  Coeffs(std::shared_ptr<const SpectralBasis> basis, Eigen::VectorXd values);

  /// Unit vector in slot j (0-based).
  static Coeffs unit(std::shared_ptr<const SpectralBasis> basis, int j);

  const SpectralBasis& basis() const { return *basis_; }
  const std::shared_ptr<const SpectralBasis>& basis_ptr() const noexcept { return basis_; }
  const Eigen::VectorXd& values() const noexcept { return values_; }
  Eigen::VectorXd& values() noexcept { return values_; }
  int size() const noexcept { return static_cast<int>(values_.size()); }
  double operator[](int j) const { return values_[j]; }
  double& operator[](int j) { return values_[j]; }

  Coeffs& operator+=(const Coeffs& o);
  Coeffs& operator-=(const Coeffs& o);
  Coeffs& operator*=(double s);
  friend Coeffs operator+(Coeffs a, const Coeffs& b) { return a += b; }
  friend Coeffs operator-(Coeffs a, const Coeffs& b) { return a -= b; }
  friend Coeffs operator*(double s, Coeffs a) { return a *= s; }

private:
  std::shared_ptr<const SpectralBasis> basis_;
  Eigen::VectorXd values_;
};

/// Samples on the quadrature grid of a domain.
class Field {
public:
  Field() = default;
  explicit Field(std::shared_ptr<const BoxDomain> domain);
  Field(std::shared_ptr<const BoxDomain> domain, Eigen::VectorXd values);
  static Field constant(std::shared_ptr<const BoxDomain> domain, double c);

  const BoxDomain& domain() const { return *domain_; }
  const std::shared_ptr<const BoxDomain>& domain_ptr() const noexcept { return domain_; }
  const Eigen::VectorXd& values() const noexcept { return values_; }
  Eigen::VectorXd& values() noexcept { return values_; }
  int size() const noexcept { return static_cast<int>(values_.size()); }

  double min() const { return values_.minCoeff(); }
  double max() const { return values_.maxCoeff(); }
  bool all_finite() const { return values_.allFinite(); }

private:
  std::shared_ptr<const BoxDomain> domain_;
  Eigen::VectorXd values_;
};

/// Quadrature inner products (v, e_j); together with to_field this is the
/// H-orthogonal projection onto V_n.
Coeffs to_coeffs(const Field& field, const std::shared_ptr<const SpectralBasis>& basis);
Field to_field(const Coeffs& c);

/// Mean value c_1 / sqrt(|Omega|).
double mean_value(const Coeffs& c);

/// Inverse Neumann Laplacian on zero-mean elements. Throws DomainError if
/// the constant-mode coefficient exceeds 1e-10 * ||psi||_H.
Coeffs solve_N(const Coeffs& psi);

/// Euclidean inner product of coefficient vectors, equal to the H inner product.
double inner(const Coeffs& a, const Coeffs& b);
double norm_H(const Coeffs& c);
/// ||grad v||.
double norm_grad(const Coeffs& c);
double norm_V(const Coeffs& c);
/// Dual norm ||psi||_*^2 = ||grad N(psi - mean)||^2 + mean^2.
double norm_Vstar(const Coeffs& c);
/// Grid quadrature L^p norm; p = infinity gives the grid maximum of |f|.
double norm_Lp(const Field& field, double p);

/// Diagonal stiffness action (lambda_j c_j)_j.
Coeffs stiffness_apply(const Coeffs& c);

} // namespace thermoch
