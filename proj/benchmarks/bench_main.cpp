#include "thermoch/config.hpp"
#include "thermoch/elliptic.hpp"
#include "thermoch/galerkin.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace thermoch;

namespace {

std::shared_ptr<const SpectralBasis> basis_for(int dim, int n) {
  BoxDomain d;
  d.dim = dim;
  d.lengths = dim == 1 ? std::vector<double>{1.0} : std::vector<double>{1.0, 1.0};
  d.grid_points_per_axis = dim == 1 ? 4 * n : 32;
  return SpectralBasis::build(d, n);
}

Problem problem(const std::string& kind, int n_modes, int grid, const char* scheme) {
  const std::string ini = "[domain]\ngrid = " + std::to_string(grid) + "\nn_modes = " + std::to_string(n_modes) +
                          "\n[potential]\nkind = " + kind +
                          "\n[data]\nf = 0.2 cos(1)\ng = 0.3 cos(2)\nphi0 = 0.1 + 0.4 cos(1) - 0.2 cos(3)\n"
                          "[time]\nT_final = 0.1\ndt = 0.001\nscheme = " + scheme + "\n";
  return build_problem(parse_config_text(ini));
}

} // namespace

static void BM_Transform(benchmark::State& state) {
  const auto basis = basis_for(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  Coeffs c(basis);
  for (int j = 0; j < c.size(); ++j) c[j] = g(rng);
  for (auto _ : state) {
    Coeffs back = to_coeffs(to_field(c), basis);
    benchmark::DoNotOptimize(back.values().data());
  }
}
BENCHMARK(BM_Transform)->Args({1, 32})->Args({1, 128})->Args({2, 64})->Args({2, 256});

static void BM_Resolvent(benchmark::State& state) {
  const PotentialSpec specs[] = {PotentialSpec::regular(), PotentialSpec::logarithmic(2.0),
                                 PotentialSpec::double_obstacle(1.0)};
  const auto& spec = specs[state.range(0)];
  const YosidaParams eps(0.01);
  std::vector<double> r(1024);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (auto& x : r) x = u(rng);
  for (auto _ : state)
    for (double x : r) benchmark::DoNotOptimize(yosida(spec, eps, x));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(r.size()));
  state.SetLabel(to_string(spec.kind()));
}
BENCHMARK(BM_Resolvent)->DenseRange(0, 2);

static void BM_Step(benchmark::State& state) {
  const bool implicit = state.range(1) != 0;
  const Problem pr = problem("logarithmic", static_cast<int>(state.range(0)), 4 * static_cast<int>(state.range(0)),
                             implicit ? "backward-euler" : "semi-implicit");
  const GalerkinState s0 = project_initial_data(pr.data, pr.basis);
  for (auto _ : state) {
    GalerkinState s1 = step(s0, pr.data, pr.options.dt, pr.options.step);
    benchmark::DoNotOptimize(s1.phi.values().data());
  }
  state.SetLabel(to_string(pr.options.step.scheme));
}
BENCHMARK(BM_Step)->Args({16, 0})->Args({64, 0})->Args({16, 1})->Args({64, 1});

static void BM_Elliptic(benchmark::State& state) {
  const auto basis = basis_for(1, static_cast<int>(state.range(0)));
  Field h(basis->domain_ptr());
  for (int k = 0; k < h.size(); ++k) h.values()[k] = 2.0 * std::cos(3.0 * basis->domain().point(k)[0]);
  const EllipticProblem p{basis, PotentialSpec::regular(), YosidaParams(0.05), h};
  for (auto _ : state) benchmark::DoNotOptimize(solve_elliptic(p).residual);
}
BENCHMARK(BM_Elliptic)->Arg(16)->Arg(64);
BENCHMARK_MAIN();
