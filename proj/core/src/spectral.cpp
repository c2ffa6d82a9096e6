#include "thermoch/spectral.hpp"

#include "thermoch/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace thermoch {

namespace {

double axis_factor(int k, double length, double x) {
  if (k == 0) return std::sqrt(1.0 / length);
  return std::sqrt(2.0 / length) * std::cos(k * std::numbers::pi * x / length);
}

void require_same_basis(const Coeffs& a, const Coeffs& b) {
  if (a.basis_ptr() != b.basis_ptr() && !(a.basis().domain() == b.basis().domain() && a.size() == b.size()))
    throw ConfigurationError("coefficient vectors belong to different bases");
}

} // namespace

void BoxDomain::validate() const {
  if (dim != 1 && dim != 2) throw ConfigurationError("domain dimension must be 1 or 2");
  if (static_cast<int>(lengths.size()) != dim)
    throw ConfigurationError("domain needs exactly " + std::to_string(dim) + " lengths");
  for (double l : lengths)
    if (!(l > 0.0) || !std::isfinite(l)) throw ConfigurationError("domain lengths must be positive");
  if (grid_points_per_axis < 4) throw ConfigurationError("grid needs at least 4 points per axis");
}

double BoxDomain::measure() const {
  double m = 1.0;
  for (double l : lengths) m *= l;
  return m;
}

int BoxDomain::num_points() const {
  return dim == 1 ? grid_points_per_axis : grid_points_per_axis * grid_points_per_axis;
}

double BoxDomain::cell_volume() const { return measure() / num_points(); }

std::array<double, 2> BoxDomain::point(int k) const {
  const int m = grid_points_per_axis;
  const int ix = k % m;
  const double x = (ix + 0.5) * lengths[0] / m;
  if (dim == 1) return {x, 0.0};
  const int iy = k / m;
  return {x, (iy + 0.5) * lengths[1] / m};
}

int SpectralBasis::capacity(const BoxDomain& domain) {
  const int per_axis = domain.grid_points_per_axis / 2 + 1;
  return domain.dim == 1 ? per_axis : per_axis * per_axis;
}

std::shared_ptr<const SpectralBasis> SpectralBasis::build(const BoxDomain& domain, int n) {
  domain.validate();
  if (n < 1) throw ConfigurationError("basis size must be at least 1");
  const int cap = capacity(domain);
  if (n > cap)
    throw ConfigurationError("basis size " + std::to_string(n) + " exceeds grid capacity " +
                             std::to_string(cap) + " (grid must have >= 2x the largest mode index per axis)");

  const int kmax = domain.grid_points_per_axis / 2;
  struct Candidate {
    MultiIndex k;
    double lambda;
  };
  std::vector<Candidate> candidates;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  // Lexicographic enumeration; stable_sort keeps that order among ties.
  for (int k1 = 0; k1 <= kmax; ++k1) {
    if (domain.dim == 1) {
      const double q = k1 / domain.lengths[0];
      candidates.push_back({{k1, 0}, pi2 * q * q});
      continue;
    }
    for (int k2 = 0; k2 <= kmax; ++k2) {
      const double q1 = k1 / domain.lengths[0];
      const double q2 = k2 / domain.lengths[1];
      candidates.push_back({{k1, k2}, pi2 * (q1 * q1 + q2 * q2)});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return a.lambda < b.lambda * (1.0 - 1e-12);
  });

  auto basis = std::shared_ptr<SpectralBasis>(new SpectralBasis());
  basis->domain_ = std::make_shared<const BoxDomain>(domain);
  basis->eigenvalues_.resize(n);
  basis->modes_.resize(n);
  for (int j = 0; j < n; ++j) {
    basis->modes_[j] = candidates[j].k;
    basis->eigenvalues_[j] = candidates[j].lambda;
    // Tied eigenvalues computed from different index pairs can differ in the last bit.
    if (j > 0 && candidates[j].lambda <= candidates[j - 1].lambda * (1.0 + 1e-12))
      basis->eigenvalues_[j] = basis->eigenvalues_[j - 1];
  }
  basis->eigenvalues_[0] = 0.0;

  const int npts = domain.num_points();
  basis->samples_.resize(n, npts);
  for (int k = 0; k < npts; ++k) {
    const auto x = domain.point(k);
    for (int j = 0; j < n; ++j) basis->samples_(j, k) = basis->evaluate(j, x);
  }
  return basis;
}

double SpectralBasis::evaluate(int j, std::array<double, 2> x) const {
  const auto& k = modes_.at(j);
  double v = axis_factor(k[0], domain_->lengths[0], x[0]);
  if (domain_->dim == 2) v *= axis_factor(k[1], domain_->lengths[1], x[1]);
  return v;
}

Coeffs::Coeffs(std::shared_ptr<const SpectralBasis> basis)
    : basis_(std::move(basis)), values_(Eigen::VectorXd::Zero(basis_->size())) {}

Coeffs::Coeffs(std::shared_ptr<const SpectralBasis> basis, Eigen::VectorXd values)
    : basis_(std::move(basis)), values_(std::move(values)) {
  if (values_.size() != basis_->size())
    throw ConfigurationError("coefficient vector length does not match basis size");
}

Coeffs Coeffs::unit(std::shared_ptr<const SpectralBasis> basis, int j) {
  Coeffs c(std::move(basis));
  c.values_[j] = 1.0;
  return c;
}

Coeffs& Coeffs::operator+=(const Coeffs& o) {
  require_same_basis(*this, o);
  values_ += o.values_;
  return *this;
}

Coeffs& Coeffs::operator-=(const Coeffs& o) {
  require_same_basis(*this, o);
  values_ -= o.values_;
  return *this;
}

Coeffs& Coeffs::operator*=(double s) {
  values_ *= s;
  return *this;
}

Field::Field(std::shared_ptr<const BoxDomain> domain)
    : domain_(std::move(domain)), values_(Eigen::VectorXd::Zero(domain_->num_points())) {}

Field::Field(std::shared_ptr<const BoxDomain> domain, Eigen::VectorXd values)
    : domain_(std::move(domain)), values_(std::move(values)) {
  if (values_.size() != domain_->num_points())
    throw ConfigurationError("field sample count does not match the grid");
}

Field Field::constant(std::shared_ptr<const BoxDomain> domain, double c) {
  Field f(std::move(domain));
  f.values_.setConstant(c);
  return f;
}

Coeffs to_coeffs(const Field& field, const std::shared_ptr<const SpectralBasis>& basis) {
  if (!(field.domain() == basis->domain())) throw ConfigurationError("to_coeffs: domain mismatch");
  Eigen::VectorXd c = basis->samples() * field.values();
  c *= basis->domain().cell_volume();
  return Coeffs(basis, std::move(c));
}

Field to_field(const Coeffs& c) {
  return Field(c.basis().domain_ptr(), c.basis().samples().transpose() * c.values());
}

double mean_value(const Coeffs& c) { return c[0] / std::sqrt(c.basis().domain().measure()); }

Coeffs solve_N(const Coeffs& psi) {
  const double h = psi.values().norm();
  if (std::abs(psi[0]) > 1e-10 * h)
    throw DomainError("N is defined on zero-mean elements only; mean value = " +
                      std::to_string(mean_value(psi)));
  Coeffs u(psi.basis_ptr());
  const auto& lam = psi.basis().eigenvalues();
  for (int j = 1; j < psi.size(); ++j) u[j] = psi[j] / lam[j];
  return u;
}

double inner(const Coeffs& a, const Coeffs& b) {
  require_same_basis(a, b);
  return a.values().dot(b.values());
}

double norm_H(const Coeffs& c) { return c.values().norm(); }

double norm_grad(const Coeffs& c) {
  const auto& lam = c.basis().eigenvalues();
  return std::sqrt((lam.array() * c.values().array().square()).sum());
}

double norm_V(const Coeffs& c) {
  const auto& lam = c.basis().eigenvalues();
  return std::sqrt(((1.0 + lam.array()) * c.values().array().square()).sum());
}

double norm_Vstar(const Coeffs& c) {
  const auto& lam = c.basis().eigenvalues();
  double s = 0.0;
  for (int j = 1; j < c.size(); ++j) s += c[j] * c[j] / lam[j];
  const double m = mean_value(c);
  return std::sqrt(s + m * m);
}

double norm_Lp(const Field& field, double p) {
  if (!(p >= 1.0)) throw ConfigurationError("norm_Lp requires p >= 1");
  const auto& v = field.values();
  if (std::isinf(p)) return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
  double s = 0.0;
  if (p == 1.0)
    s = v.cwiseAbs().sum();
  else if (p == 2.0)
    s = v.squaredNorm();
  else
    for (double x : v) s += std::pow(std::abs(x), p);
  return std::pow(s * field.domain().cell_volume(), 1.0 / p);
}

Coeffs stiffness_apply(const Coeffs& c) {
  return Coeffs(c.basis_ptr(), c.basis().eigenvalues().cwiseProduct(c.values()));
}

} // namespace thermoch
