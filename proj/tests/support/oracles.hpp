#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's numerical kernels.

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace oracle {

/// Root of the nondecreasing function h on [lo, hi] by plain bisection.
inline double bisect(const std::function<double(double)>& h, double lo, double hi, int iterations = 200) {
  for (int k = 0; k < iterations; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (h(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Resolvent of y + eps y^3 = r.
inline double resolvent_cubic(double eps, double r) {
  const double b = std::abs(r) + 1.0;
  return bisect([&](double y) { return y + eps * y * y * y - r; }, -b, b);
}

/// Resolvent of y + eps ln((1+y)/(1-y)) = r on (-1, 1).
inline double resolvent_log(double eps, double r) {
  const double one = std::nextafter(1.0, 0.0);
  return bisect([&](double y) { return y + eps * std::log((1.0 + y) / (1.0 - y)) - r; }, -one, one);
}

inline double resolvent_obstacle(double r) { return r < -1.0 ? -1.0 : (r > 1.0 ? 1.0 : r); }

/// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

/// Central difference.
inline double derivative(const std::function<double(double)>& f, double x, double h = 1e-6) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Neumann eigenvalue (k pi / L)^2 of -d^2/dx^2 on (0, L).
inline double neumann_eigenvalue(int k, double L) { return std::pow(k * std::numbers::pi / L, 2); }

/// Discrete mean recursion c_{k+1} = (c_k + dt fbar) / (1 + gamma dt) after n steps.
inline double implicit_mean(double c0, double fbar, double gamma, double dt, int n) {
  double c = c0;
  for (int k = 0; k < n; ++k) c = (c + dt * fbar) / (1.0 + gamma * dt);
  return c;
}

/// Solution of c' + gamma c = fbar.
inline double exact_mean(double c0, double fbar, double gamma, double t) {
  return fbar / gamma + (c0 - fbar / gamma) * std::exp(-gamma * t);
}

} // namespace oracle
