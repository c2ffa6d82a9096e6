#include "thermoch/model.hpp"

#include "thermoch/error.hpp"

#include <algorithm>
#include <cmath>

namespace thermoch {

DataSchedule::DataSchedule(Field constant_in_time) : starts_{0.0}, pieces_{std::move(constant_in_time)} {}

DataSchedule::DataSchedule(std::vector<double> starts, std::vector<Field> pieces)
    : starts_(std::move(starts)), pieces_(std::move(pieces)) {
  if (starts_.empty() || starts_.size() != pieces_.size())
    throw ConfigurationError("schedule needs one start time per piece");
  if (starts_.front() != 0.0) throw ConfigurationError("schedule must start at t = 0");
  if (!std::is_sorted(starts_.begin(), starts_.end()) ||
      std::adjacent_find(starts_.begin(), starts_.end()) != starts_.end())
    throw ConfigurationError("schedule start times must be strictly increasing");
}

const Field& DataSchedule::at(double t) const {
  if (pieces_.empty()) throw ConfigurationError("empty data schedule");
  const double slack = 1e-12 * (1.0 + std::abs(t));
  std::size_t i = 0;
  while (i + 1 < starts_.size() && starts_[i + 1] <= t + slack) ++i;
  return pieces_[i];
}

double DataSchedule::sup_norm() const {
  double s = 0.0;
  for (const auto& p : pieces_) s = std::max(s, norm_Lp(p, std::numeric_limits<double>::infinity()));
  return s;
}

bool DataSchedule::all_finite() const {
  return std::all_of(pieces_.begin(), pieces_.end(), [](const Field& p) { return p.all_finite(); });
}

double ProblemData::rho() const { return f.sup_norm() / params.gamma; }

double ProblemData::initial_mean() const { return phi0.values().mean(); }

MeanBand mean_band(const ProblemData& data) {
  const double m = data.initial_mean();
  const double rho = data.rho();
  return {-rho - std::max(-m, 0.0), rho + std::max(m, 0.0)};
}

std::vector<CompatibilityIssue> compatibility_issues(const ProblemData& data) {
  const auto band = mean_band(data);
  const CompatibilityIssue candidates[] = {
      {"min phi0", data.phi0.min()},
      {"max phi0", data.phi0.max()},
      {"-rho - (mean phi0)^-", band.lo},
      {"rho + (mean phi0)^+", band.hi},
  };
  std::vector<CompatibilityIssue> issues;
  for (const auto& c : candidates)
    if (!data.potential.in_interior(c.value)) issues.push_back(c);
  return issues;
}

} // namespace thermoch
