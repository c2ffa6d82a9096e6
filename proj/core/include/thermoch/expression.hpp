#pragma once

#include "thermoch/model.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace thermoch {

/// coefficient * cos(k1 pi x / L1) * cos(k2 pi y / L2)
struct CosineTerm {
  double coefficient = 0.0;
  int k1 = 0;
  int k2 = 0;

  bool operator==(const CosineTerm&) const = default;
};

/// Constant plus a finite sum of cosine modes.
///
/// Text form: terms joined by '+' or '-', each a number, "cos(k)",
/// "cos(k1,k2)" or "<number> cos(...)" (an optional '*' is allowed).
/// Example: "0.1 + 0.3 cos(1) - 0.2*cos(2,1)".
struct SpatialExpr {
  double constant = 0.0;
  std::vector<CosineTerm> terms;

  static SpatialExpr parse(std::string_view text);
  /// Canonical form with 17 significant digits; parse(to_string()) == *this.
  std::string to_string() const;
  Field evaluate(const std::shared_ptr<const BoxDomain>& domain) const;
  /// Largest mode index along each axis.
  int max_index(int axis) const;

  bool operator==(const SpatialExpr&) const = default;
};

/// Piecewise-constant-in-time schedule of spatial expressions.
///
/// Text form: either a single SpatialExpr, or
/// "piecewise(0: <expr> | 0.5: <expr> | ...)" with increasing start times
/// beginning at 0.
struct DataExpr {
  std::vector<double> starts{0.0};
  std::vector<SpatialExpr> pieces{SpatialExpr{}};

  static DataExpr parse(std::string_view text);
  static DataExpr constant(double c);
  std::string to_string() const;
  DataSchedule build(const std::shared_ptr<const BoxDomain>& domain) const;
  bool time_independent() const noexcept { return pieces.size() == 1; }

  bool operator==(const DataExpr&) const = default;
};

/// printf("%.17g"); round-trip exact for every finite double.
std::string format_double(double x);

} // namespace thermoch
