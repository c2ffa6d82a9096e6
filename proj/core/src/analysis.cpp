#include "thermoch/analysis.hpp"

#include "thermoch/error.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>

namespace thermoch {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Trapezoid rule for samples y_k at times t_k.
template <class F>
double trapezoid(std::span<const DiagnosticsRecord> rec, F&& value) {
  double s = 0.0;
  for (std::size_t k = 1; k < rec.size(); ++k)
    s += 0.5 * (rec[k].t - rec[k - 1].t) * (value(rec[k - 1]) + value(rec[k]));
  return s;
}

double trapezoid(std::span<const double> t, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t k = 1; k < t.size(); ++k) s += 0.5 * (t[k] - t[k - 1]) * (y[k - 1] + y[k]);
  return s;
}

bool record_finite(const DiagnosticsRecord& r) {
  if (!std::isfinite(r.t) || !std::isfinite(r.mean_phi) || !std::isfinite(r.mean_phi_exact) ||
      !std::isfinite(r.energy) || !std::isfinite(r.dissipation_mu) || !std::isfinite(r.dissipation_w) ||
      !std::isfinite(r.source_power))
    return false;
  for (double v : r.norms.values())
    if (!std::isfinite(v)) return false;
  return true;
}

// Zero-pads or truncates c into `target`'s coordinates.
Eigen::VectorXd embed(const Coeffs& c, int size) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(size);
  const int m = std::min(size, c.size());
  out.head(m) = c.values().head(m);
  return out;
}

bool spatially_constant(const Field& f) { return f.max() - f.min() <= 1e-14 * (1.0 + std::abs(f.max())); }

} // namespace

MeanLawReport mean_law_check(std::span<const DiagnosticsRecord> records, const ProblemData& data) {
  MeanLawReport rep;
  if (records.empty()) return rep;
  const double gamma = data.params.gamma;
  double c = data.initial_mean();
  for (std::size_t k = 0; k < records.size(); ++k) {
    if (k > 0) {
      const double dt = records[k].t - records[k - 1].t;
      const double fbar = data.f.at(records[k - 1].t).values().mean();
      c = (c + dt * fbar) / (1.0 + gamma * dt);
    }
    rep.discrete_error = std::max(rep.discrete_error, std::abs(records[k].mean_phi - c));
    rep.continuum_error =
        std::max(rep.continuum_error, std::abs(records[k].mean_phi - exact_mean(data, records[k].t)));
  }
  return rep;
}

double HomogeneousBenchmark::c(double t) const { return c0 * std::exp(-gamma * t); }

double HomogeneousBenchmark::v(double t) const { return w1 + lambda_latent * (c0 - c(t)); }

double HomogeneousBenchmark::w(double t) const {
  // int_0^t c(s) ds = c0 (1 - e^{-gamma t}) / gamma
  return w0 + (w1 + lambda_latent * c0) * t - lambda_latent * c0 * (1.0 - std::exp(-gamma * t)) / gamma;
}

HomogeneousBenchmark homogeneous_benchmark(double c0, double w0, double w1, double gamma, double lambda_latent) {
  return {c0, w0, w1, gamma, lambda_latent};
}

double energy_identity_residual(std::span<const DiagnosticsRecord> records) {
  if (records.size() < 2) return 0.0;
  const double balance = trapezoid(records, [](const DiagnosticsRecord& r) {
    return r.dissipation_mu + r.dissipation_w - r.source_power;
  });
  return std::abs(records.back().energy - records.front().energy + balance);
}

NormInventory realized_norms(std::span<const DiagnosticsRecord> records) {
  NormInventory inv;
  for (const auto& r : records) {
    inv.phi_Linf_V = std::max(inv.phi_Linf_V, r.norms.phi_V);
    inv.phi_Linf_Vstar = std::max(inv.phi_Linf_Vstar, r.norms.phi_Vstar);
    inv.wt_Linf_H = std::max(inv.wt_Linf_H, r.norms.wt_H);
    inv.w_Linf_grad = std::max(inv.w_Linf_grad, r.norms.grad_w);
  }
  auto sq = [](double x) { return x * x; };
  inv.phi_L2_V = std::sqrt(trapezoid(records, [&](const DiagnosticsRecord& r) { return sq(r.norms.phi_V); }));
  inv.mu_L2_V = std::sqrt(trapezoid(records, [&](const DiagnosticsRecord& r) { return sq(r.norms.mu_V); }));
  inv.xi_L1Q = trapezoid(records, [](const DiagnosticsRecord& r) { return r.norms.xi_L1; });
  inv.xi_L2_L6 = std::sqrt(trapezoid(records, [&](const DiagnosticsRecord& r) { return sq(r.norms.xi_L6); }));
  inv.wt_L2_H = std::sqrt(trapezoid(records, [&](const DiagnosticsRecord& r) { return sq(r.norms.wt_H); }));
  return inv;
}

std::vector<Violation> apriori_monitor(std::span<const DiagnosticsRecord> records, MeanBand band, double tol) {
  std::vector<Violation> out;
  for (const auto& r : records) {
    if (!record_finite(r)) {
      out.push_back({r.t, "(2.27)", "non-finite diagnostics (NaN/Inf in the realized norm inventory)"});
      continue;
    }
    if (r.mean_phi < band.lo - tol || r.mean_phi > band.hi + tol) {
      std::ostringstream os;
      os.precision(17);
      os << "mean value " << r.mean_phi << " outside the invariant band [" << band.lo << ", " << band.hi << "]";
      out.push_back({r.t, "(4.31)", os.str()});
    }
  }
  return out;
}

double uniformity_ratio(std::span<const double> values) {
  if (values.empty()) return 1.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (!(*lo > 0.0)) return std::numeric_limits<double>::infinity();
  return *hi / *lo;
}

DependenceReport dependence_experiment(const ProblemData& data1, const ProblemData& data2,
                                       const std::shared_ptr<const SpectralBasis>& basis,
                                       const SimulationOptions& options) {
  if (!(data1.params == data2.params) || data1.eps.eps() != data2.eps.eps() ||
      data1.potential.kind() != data2.potential.kind() ||
      data1.potential.coefficient() != data2.potential.coefficient() || data1.T_final != data2.T_final ||
      data1.phi0.values() != data2.phi0.values() || data1.w0.values() != data2.w0.values() ||
      data1.w1.values() != data2.w1.values())
    throw ConfigurationError("dependence experiment: the two problems may differ only in f and g");

  auto run = [&](const ProblemData& d) { return simulate(d, basis, options); };
  auto fut = std::async(std::launch::async, run, std::cref(data2));
  const SimulationResult r1 = run(data1);
  const SimulationResult r2 = fut.get();
  if (!r1.completed) throw NumericFailure("dependence experiment, run 1: " + r1.failure);
  if (!r2.completed) throw NumericFailure("dependence experiment, run 2: " + r2.failure);
  const auto& a = r1.trajectory;
  const auto& b = r2.trajectory;
  if (a.size() != b.size()) throw NumericFailure("dependence experiment: runs recorded different time grids");

  const std::size_t K = a.size();
  std::vector<double> t(K), phi_V2(K), w_H2(K), v_H2(K), f_vstar2(K), f_L1(K), g_conv_H2(K);
  double phi_vstar_max = 0.0;
  double w_V_max = 0.0;

  const auto full = SpectralBasis::build(basis->domain(), SpectralBasis::capacity(basis->domain()));
  const auto domain = basis->domain_ptr();
  Eigen::VectorXd g_conv = Eigen::VectorXd::Zero(domain->num_points());
  Eigen::VectorXd g_prev;
  for (std::size_t k = 0; k < K; ++k) {
    t[k] = a[k].state.t;
    const Coeffs dphi = a[k].state.phi - b[k].state.phi;
    const Coeffs dw = a[k].state.w - b[k].state.w;
    const Coeffs dv = a[k].state.v - b[k].state.v;
    phi_vstar_max = std::max(phi_vstar_max, norm_Vstar(dphi));
    phi_V2[k] = std::pow(norm_V(dphi), 2);
    w_H2[k] = std::pow(norm_H(dw), 2);
    v_H2[k] = std::pow(norm_H(dv), 2);
    w_V_max = std::max(w_V_max, norm_V(dw));

    const Field df(domain, data1.f.at(t[k]).values() - data2.f.at(t[k]).values());
    f_vstar2[k] = std::pow(norm_Vstar(to_coeffs(df, full)), 2);
    f_L1[k] = norm_Lp(df, 1.0);

    const Eigen::VectorXd dg = data1.g.at(t[k]).values() - data2.g.at(t[k]).values();
    if (k > 0) g_conv += 0.5 * (t[k] - t[k - 1]) * (g_prev + dg);
    g_prev = dg;
    g_conv_H2[k] = std::pow(norm_Lp(Field(domain, g_conv), 2.0), 2);
  }

  DependenceReport rep;
  rep.lhs = phi_vstar_max + std::sqrt(trapezoid(t, phi_V2)) +
            std::sqrt(trapezoid(t, w_H2) + trapezoid(t, v_H2)) + w_V_max;
  const double l1q = trapezoid(t, f_L1);
  rep.f_L2Vstar_plus_L1Q = std::sqrt(trapezoid(t, f_vstar2)) + l1q;
  rep.f_L1Q_sqrt = std::sqrt(l1q);
  rep.g_convolution_L2H = std::sqrt(trapezoid(t, g_conv_H2));
  const double rhs = rep.rhs_sum();
  rep.empirical_K2 = rhs > 0.0 ? rep.lhs / rhs : (rep.lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  rep.xi1_L1Q = realized_norms(records_of(a)).xi_L1Q;
  rep.xi2_L1Q = realized_norms(records_of(b)).xi_L1Q;
  return rep;
}

std::string to_string(ConvergenceKind kind) {
  switch (kind) {
  case ConvergenceKind::ModeCount: return "modes";
  case ConvergenceKind::Epsilon: return "eps";
  case ConvergenceKind::TimeStep: return "dt";
  }
  return "unknown";
}

double linf_vstar_distance(const Trajectory& a, const Trajectory& b) {
  if (a.size() != b.size()) throw ConfigurationError("trajectories recorded on different time grids");
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const auto& pa = a[k].state.phi;
    const auto& pb = b[k].state.phi;
    const bool a_larger = pa.size() >= pb.size();
    const auto& big = a_larger ? pa : pb;
    const auto& small = a_larger ? pb : pa;
    const Coeffs diff(big.basis_ptr(), big.values() - embed(small, big.size()));
    d = std::max(d, norm_Vstar(diff));
  }
  return d;
}

ConvergenceTable convergence_study(ConvergenceKind kind, std::span<const double> schedule, const ProblemData& base,
                                   const BoxDomain& domain, int n_modes, const SimulationOptions& options) {
  if (schedule.size() < 2) throw ConfigurationError("convergence study needs at least two schedule entries");
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    const bool up = schedule[i] > schedule[i - 1];
    const bool first_up = schedule[1] > schedule[0];
    if (schedule[i] == schedule[i - 1] || up != first_up)
      throw ConfigurationError("convergence schedule must be strictly monotone");
  }

  const auto fixed_basis = kind == ConvergenceKind::ModeCount ? nullptr : SpectralBasis::build(domain, n_modes);
  auto member = [&](double param) {
    ProblemData data = base;
    SimulationOptions opt = options;
    auto basis = fixed_basis;
    switch (kind) {
    case ConvergenceKind::ModeCount: basis = SpectralBasis::build(domain, static_cast<int>(param)); break;
    case ConvergenceKind::Epsilon: data.eps = YosidaParams(param); break;
    case ConvergenceKind::TimeStep: opt.dt = param; break;
    }
    SimulationResult r = simulate(data, basis, opt);
    if (!r.completed) throw NumericFailure("convergence member failed: " + r.failure);
    return r.trajectory;
  };

  std::vector<std::future<Trajectory>> futures;
  for (double p : schedule) futures.push_back(std::async(std::launch::async, member, p));
  std::vector<Trajectory> runs;
  for (auto& f : futures) runs.push_back(f.get());

  ConvergenceTable table;
  table.kind = kind;
  const std::size_t m = schedule.size();
  table.rows.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto& row = table.rows[i];
    row.parameter = schedule[i];
    const auto inv = realized_norms(records_of(runs[i]));
    row.xi_L1Q = inv.xi_L1Q;
    row.xi_L2_L6 = inv.xi_L2_L6;
    row.error = kNaN;
  }

  switch (kind) {
  case ConvergenceKind::ModeCount:
    for (std::size_t i = 0; i + 1 < m; ++i) table.rows[i].error = linf_vstar_distance(runs[i], runs[m - 1]);
    break;
  case ConvergenceKind::Epsilon:
    for (std::size_t i = 0; i + 1 < m; ++i) table.rows[i].error = linf_vstar_distance(runs[i], runs[i + 1]);
    break;
  case ConvergenceKind::TimeStep: {
    const bool homogeneous = spatially_constant(base.phi0) && spatially_constant(base.w0) &&
                             spatially_constant(base.w1) && base.f.sup_norm() == 0.0 && base.g.sup_norm() == 0.0;
    table.exact_reference = homogeneous;
    const double sqrt_measure = std::sqrt(domain.measure());
    if (homogeneous) {
      const auto bench = homogeneous_benchmark(base.initial_mean(), base.w0.values().mean(), base.w1.values().mean(),
                                               base.params.gamma, base.params.lambda_latent);
      for (std::size_t i = 0; i < m; ++i) {
        const auto& last = runs[i].back().state;
        const double ec = std::abs(mean_value(last.phi) - bench.c(last.t));
        const double ev = std::abs(last.v[0] / sqrt_measure - bench.v(last.t));
        table.rows[i].error = std::max(ec, ev);
      }
    } else {
      for (std::size_t i = 0; i + 1 < m; ++i)
        table.rows[i].error = norm_H(runs[i].back().state.phi - runs[i + 1].back().state.phi);
    }
    for (std::size_t i = 1; i < m; ++i) {
      const double e0 = table.rows[i - 1].error;
      const double e1 = table.rows[i].error;
      table.rows[i].slope = (e0 > 0.0 && e1 > 0.0) ? std::log(e0 / e1) / std::log(schedule[i - 1] / schedule[i]) : kNaN;
    }
    break;
  }
  }
  return table;
}

} // namespace thermoch
