// Throughput benchmarks for the pieces that dominate real runs: special
// function kernels, the numeric forward transform, the series recursion on
// the shipped nonlinear fixture, and the finite-difference reference march.

#include <benchmark/benchmark.h>

#include <cmath>
#include <string>
#include <vector>

#include "fracseries/natural_transform.hpp"
#include "fracseries/nthpm.hpp"
#include "fracseries/problem.hpp"
#include "fracseries/reference_oracle.hpp"
#include "fracseries/series_algebra.hpp"
#include "fracseries/special_functions.hpp"

namespace {

using namespace fracseries;

std::string fixture(const char* name) {
  return std::string(FRACSERIES_FIXTURE_DIR) + "/" + name;
}

void BM_MittagLeffler(benchmark::State& state) {
  const double alpha = state.range(0) / 100.0;
  double z = -9.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mittag_leffler(alpha, z));
    z += 0.1;
    if (z > 1.0) z = -9.0;
  }
}
BENCHMARK(BM_MittagLeffler)->Arg(50)->Arg(75)->Arg(100);

void BM_GammaRatio(benchmark::State& state) {
  double beta = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gamma_ratio(beta, 0.5));
    beta += 0.37;
    if (beta > 200.0) beta = 0.0;
  }
}
BENCHMARK(BM_GammaRatio);

void BM_ForwardTransform(benchmark::State& state) {
  const TimeSignal sig{[](double t) { return std::sin(t); }, 5.0, 4.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(nt_forward_numeric(sig, 2.0, 1.0));
}
BENCHMARK(BM_ForwardTransform);

void BM_IterateCoupled(benchmark::State& state) {
  const ProblemSpec spec = load_problem(fixture("burgers.frac"));
  const int terms = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(iterate(spec, terms));
}
BENCHMARK(BM_IterateCoupled)->Arg(4)->Arg(8)->Arg(12);

void BM_SeriesEval(benchmark::State& state) {
  const ProblemSpec spec = load_problem(fixture("burgers.frac"));
  const SolutionBundle sol = iterate(spec, 10);
  const std::vector<double> point = {1.3};
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_series(sol.series[0], point, t));
    t = t < 1.0 ? t + 0.01 : 0.0;
  }
}
BENCHMARK(BM_SeriesEval);

void BM_ReferenceMarch(benchmark::State& state) {
  const ProblemSpec spec = load_problem(fixture("diffusion1d.frac"));
  const Expr& ic = spec.initial_conditions[0];
  auto boundary = [](double, double) { return 0.0; };
  const int n_t = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(oracle::l1_solve(0.5, 1.0, ic, 0.0,
                                              3.14159265358979323846,
                                              boundary, 201, n_t, 0.5));
}
BENCHMARK(BM_ReferenceMarch)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

}  // namespace

// Provide main here instead of linking benchmark_main: distro builds ship
// that archive as LTO bytecode, which breaks links under a mismatched
// toolchain, while the benchmark library proper resolves to a shared object.
BENCHMARK_MAIN();
