#include "thermoch/potentials.hpp"

#include "thermoch/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace thermoch {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kResolventTol = 1e-12;
constexpr int kResolventMaxIter = 100;
// Iterates for the logarithmic graph are kept strictly inside (-1, 1).
constexpr double kLogClip = 1.0 - 1e-15;

// Safeguarded Newton for a nondecreasing scalar equation h(y) = 0 with a
// sign-changing bracket [lo, hi] (h(lo) <= 0 <= h(hi)).
template <class H, class DH>
double bracketed_newton(H&& h, DH&& dh, double lo, double hi, double y) {
  for (int it = 0; it < kResolventMaxIter; ++it) {
    const double hy = h(y);
    if (hy == 0.0) return y;
    if (hy < 0.0)
      lo = y;
    else
      hi = y;
    const double d = dh(y);
    double next = (d > 0.0 && std::isfinite(d)) ? y - hy / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= kResolventTol) return next;
    if (std::abs(next - y) <= kResolventTol) {
      // A tiny Newton step also occurs far from the root where h is steep;
      // accept only if the root is bracketed within a few tolerances.
      const double a = std::max(lo, next - 2.0 * kResolventTol);
      const double b = std::min(hi, next + 2.0 * kResolventTol);
      if (h(a) <= 0.0 && h(b) >= 0.0) return next;
      next = 0.5 * (lo + hi);
    }
    y = next;
  }
  throw NumericFailure("resolvent: no convergence after " + std::to_string(kResolventMaxIter) +
                       " iterations");
}

double regular_resolvent(double eps, double r) {
  // Real root of eps*y^3 + y - r = 0 via the hyperbolic form of Cardano's
  // formula for t^3 + p t + q = 0 with p > 0, then Newton polishing.
  const double p = 1.0 / eps;
  const double q = -r / eps;
  const double s = std::sqrt(p / 3.0);
  double y = -2.0 * s * std::sinh(std::asinh(1.5 * q / (p * s)) / 3.0);
  for (int k = 0; k < 2; ++k) {
    const double g = eps * y * y * y + y - r;
    y -= g / (3.0 * eps * y * y + 1.0);
  }
  return y;
}

double logarithmic_resolvent(double eps, double r) {
  // Solve tanh(z) + 2 eps z = r for z = atanh(y); the slope is at least
  // 2 eps, so the iteration stays well conditioned as y approaches +-1.
  auto h = [&](double z) { return std::tanh(z) + 2.0 * eps * z - r; };
  auto dh = [&](double z) {
    const double c = std::cosh(z);
    return 1.0 / (c * c) + 2.0 * eps;
  };
  const double lo = (r - 1.0) / (2.0 * eps);
  const double hi = (r + 1.0) / (2.0 * eps);
  const double z0 = std::clamp(std::atanh(std::clamp(r / (1.0 + 2.0 * eps), -0.5, 0.5)), lo, hi);
  const double z = bracketed_newton(h, dh, lo, hi, z0);
  return std::clamp(std::tanh(z), -kLogClip, kLogClip);
}

double custom_resolvent(const CustomPotential& c, double eps, double r) {
  auto beta = [&](double y) { return c.beta_min_section(y); };
  auto h = [&](double y) { return y + eps * beta(y) - r; };
  auto dh = [&](double y) {
    const double step = 1e-7 * std::max(1.0, std::abs(y));
    const double a = std::max(y - step, c.domain_lo);
    const double b = std::min(y + step, c.domain_hi);
    if (!(b > a)) return 0.0;
    return 1.0 + eps * (beta(b) - beta(a)) / (b - a);
  };
  // Nudge open endpoints inward so beta stays finite.
  const double dlo = std::isfinite(c.domain_lo) ? c.domain_lo + 1e-15 * std::max(1.0, std::abs(c.domain_lo)) : -kInf;
  const double dhi = std::isfinite(c.domain_hi) ? c.domain_hi - 1e-15 * std::max(1.0, std::abs(c.domain_hi)) : kInf;
  double lo = std::max(std::min(r, 0.0), dlo);
  double hi = std::min(std::max(r, 0.0), dhi);
  if (h(hi) < 0.0) return hi;
  if (h(lo) > 0.0) return lo;
  return bracketed_newton(h, dh, lo, hi, 0.5 * (lo + hi));
}

double pi_derivative(const PotentialSpec& spec, double r) {
  switch (spec.kind()) {
  case PotentialKind::Regular: return -1.0;
  case PotentialKind::Logarithmic:
  case PotentialKind::DoubleObstacle: return -2.0 * spec.coefficient();
  case PotentialKind::Custom: {
    const double h = 1e-6 * std::max(1.0, std::abs(r));
    return (spec.pi(r + h) - spec.pi(r - h)) / (2.0 * h);
  }
  }
  return 0.0;
}

std::string format_bound(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "+inf";
  std::ostringstream os;
  os << v;
  return os.str();
}

} // namespace

std::string to_string(PotentialKind kind) {
  switch (kind) {
  case PotentialKind::Regular: return "regular";
  case PotentialKind::Logarithmic: return "logarithmic";
  case PotentialKind::DoubleObstacle: return "double-obstacle";
  case PotentialKind::Custom: return "custom";
  }
  return "unknown";
}

PotentialSpec PotentialSpec::regular() {
  PotentialSpec s;
  s.kind_ = PotentialKind::Regular;
  s.pi_lipschitz_ = 1.0;
  return s;
}

PotentialSpec PotentialSpec::logarithmic(double c1) {
  if (!(c1 > 1.0))
    throw ConfigurationError("logarithmic potential requires c1 > 1, got " + format_bound(c1));
  PotentialSpec s;
  s.kind_ = PotentialKind::Logarithmic;
  s.coefficient_ = c1;
  s.pi_lipschitz_ = 2.0 * c1;
  s.domain_lo_ = -1.0;
  s.domain_hi_ = 1.0;
  return s;
}

PotentialSpec PotentialSpec::double_obstacle(double c2) {
  if (!(c2 > 0.0))
    throw ConfigurationError("double-obstacle potential requires c2 > 0, got " + format_bound(c2));
  PotentialSpec s;
  s.kind_ = PotentialKind::DoubleObstacle;
  s.coefficient_ = c2;
  s.pi_lipschitz_ = 2.0 * c2;
  s.domain_lo_ = -1.0;
  s.domain_hi_ = 1.0;
  return s;
}

PotentialSpec PotentialSpec::custom(CustomPotential callables) {
  if (!callables.beta_hat || !callables.beta_min_section || !callables.pi_hat || !callables.pi)
    throw ConfigurationError("custom potential: all four callables are required");
  if (!(callables.domain_lo <= 0.0 && callables.domain_hi >= 0.0))
    throw ConfigurationError("custom potential: 0 must lie in D(beta)");
  PotentialSpec s;
  s.kind_ = PotentialKind::Custom;
  s.pi_lipschitz_ = callables.pi_lipschitz;
  s.domain_lo_ = callables.domain_lo;
  s.domain_hi_ = callables.domain_hi;
  s.custom_ = std::move(callables);
  return s;
}

double PotentialSpec::beta_hat(double r) const {
  switch (kind_) {
  case PotentialKind::Regular: return 0.25 * r * r * r * r;
  case PotentialKind::Logarithmic: {
    if (std::abs(r) > 1.0) return kInf;
    const double plus = (r == -1.0) ? 0.0 : (1.0 + r) * std::log1p(r);
    const double minus = (r == 1.0) ? 0.0 : (1.0 - r) * std::log1p(-r);
    return plus + minus;
  }
  case PotentialKind::DoubleObstacle: return std::abs(r) <= 1.0 ? 0.0 : kInf;
  case PotentialKind::Custom: return in_closure(r) ? custom_.beta_hat(r) : kInf;
  }
  return kInf;
}

double PotentialSpec::pi_hat(double r) const {
  switch (kind_) {
  case PotentialKind::Regular: return 0.25 * (1.0 - 2.0 * r * r);
  case PotentialKind::Logarithmic:
  case PotentialKind::DoubleObstacle: return -coefficient_ * r * r;
  case PotentialKind::Custom: return custom_.pi_hat(r);
  }
  return 0.0;
}

double PotentialSpec::pi(double r) const {
  switch (kind_) {
  case PotentialKind::Regular: return -r;
  case PotentialKind::Logarithmic:
  case PotentialKind::DoubleObstacle: return -2.0 * coefficient_ * r;
  case PotentialKind::Custom: return custom_.pi(r);
  }
  return 0.0;
}

double PotentialSpec::beta_min_section(double r) const {
  switch (kind_) {
  case PotentialKind::Regular: return r * r * r;
  case PotentialKind::Logarithmic:
    if (!in_interior(r)) throw DomainError("beta°: r = " + format_bound(r) + " outside D(beta) = (-1, 1)");
    return 2.0 * std::atanh(r);
  case PotentialKind::DoubleObstacle:
    if (!in_closure(r)) throw DomainError("beta°: r = " + format_bound(r) + " outside D(beta) = [-1, 1]");
    return 0.0;
  case PotentialKind::Custom: return custom_.beta_min_section(r);
  }
  return 0.0;
}

std::string PotentialSpec::domain_string() const {
  switch (kind_) {
  case PotentialKind::Regular: return "(-inf, +inf)";
  case PotentialKind::Logarithmic: return "(-1, 1)";
  case PotentialKind::DoubleObstacle: return "[-1, 1]";
  case PotentialKind::Custom: break;
  }
  return "[" + format_bound(domain_lo_) + ", " + format_bound(domain_hi_) + "]";
}

YosidaParams::YosidaParams(double eps) : eps_(eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw ConfigurationError("Yosida parameter must satisfy 0 < eps < 1, got " + format_bound(eps));
}

double resolvent(const PotentialSpec& spec, YosidaParams eps, double r) {
  const double e = eps.eps();
  switch (spec.kind()) {
  case PotentialKind::Regular: return regular_resolvent(e, r);
  case PotentialKind::Logarithmic: return logarithmic_resolvent(e, r);
  case PotentialKind::DoubleObstacle: return std::clamp(r, -1.0, 1.0);
  case PotentialKind::Custom: return custom_resolvent(*spec.custom_callables(), e, r);
  }
  return r;
}

double yosida(const PotentialSpec& spec, YosidaParams eps, double r) {
  return (r - resolvent(spec, eps, r)) / eps.eps();
}

double yosida_derivative(const PotentialSpec& spec, YosidaParams eps, double r) {
  const double e = eps.eps();
  switch (spec.kind()) {
  case PotentialKind::Regular: {
    const double y = regular_resolvent(e, r);
    const double b = 3.0 * y * y;
    return b / (1.0 + e * b);
  }
  case PotentialKind::Logarithmic: {
    const double y = logarithmic_resolvent(e, r);
    return 2.0 / ((1.0 - y) * (1.0 + y) + 2.0 * e);
  }
  case PotentialKind::DoubleObstacle: return std::abs(r) > 1.0 ? 1.0 / e : 0.0;
  case PotentialKind::Custom: {
    const double h = 1e-6 * std::max(1.0, std::abs(r));
    return (yosida(spec, eps, r + h) - yosida(spec, eps, r - h)) / (2.0 * h);
  }
  }
  return 0.0;
}

double yosida_primitive(const PotentialSpec& spec, YosidaParams eps, double r) {
  const double y = resolvent(spec, eps, r);
  const double d = r - y;
  return spec.beta_hat(y) + d * d / (2.0 * eps.eps());
}

double regularized_potential(const PotentialSpec& spec, YosidaParams eps, double r) {
  return yosida_primitive(spec, eps, r) + spec.pi_hat(r);
}

double regularized_derivative(const PotentialSpec& spec, YosidaParams eps, double r) {
  return yosida_derivative(spec, eps, r) + pi_derivative(spec, r);
}

InteriorBoundConstants interior_bound_constants(const PotentialSpec& spec, double r_lo,
                                                double r_hi, double delta0,
                                                std::span<const double> eps_grid,
                                                std::span<const double> r_grid) {
  if (!(delta0 > 0.0)) throw ConfigurationError("interior bound: delta0 must be positive");
  if (!(r_lo <= r_hi)) throw ConfigurationError("interior bound: r_lo > r_hi");
  if (!spec.in_interior(r_lo - delta0) || !spec.in_interior(r_hi + delta0)) {
    std::ostringstream os;
    os << "interior bound: [r_lo - delta0, r_hi + delta0] = [" << r_lo - delta0 << ", "
       << r_hi + delta0 << "] is not interior to D(beta) = " << spec.domain_string();
    throw CompatibilityError(os.str());
  }
  double c0 = 0.0;
  for (double e : eps_grid) {
    const YosidaParams eps(e);
    for (double r : r_grid) {
      const double b = yosida(spec, eps, r);
      for (double r0 : {r_lo, r_hi}) c0 = std::max(c0, delta0 * std::abs(b) - b * (r - r0));
    }
  }
  return {r_lo, r_hi, delta0, c0};
}

} // namespace thermoch
