// Serial reference vs OpenMP kernels. On a single core the parallel
// variants only show their scheduling overhead.

#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cqed/measures.hpp"
#include "cqed/scenarios.hpp"

using namespace cqed;

namespace {

DensityMatrix mixed_state(std::size_t dim_b, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  const std::size_t dim = 2 * dim_b;
  ComplexMatrix g(dim);
  for (auto& z : g.entries()) z = Complex(n(rng), n(rng));
  ComplexMatrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return make_density(rho.hermitian_part(), {2, dim_b});
}

void set_threads(int n) {
#ifdef _OPENMP
  omp_set_num_threads(n);
#else
  (void)n;
#endif
}

void BM_GridSerial(benchmark::State& state) {
  const DensityMatrix rho = mixed_state(static_cast<std::size_t>(state.range(0)), 1);
  set_threads(1);
  for (auto _ : state) benchmark::DoNotOptimize(grid_minimum_serial(rho, Side::A));
}

void BM_GridParallel(benchmark::State& state) {
  const DensityMatrix rho = mixed_state(static_cast<std::size_t>(state.range(0)), 1);
  set_threads(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(grid_minimum(rho, Side::A));
}

const TrajectoryRecord& trajectory() {
  static const TrajectoryRecord rec = [] {
    const ScenarioConfig cfg = std::get<ScenarioConfig>(parse_config(
        "model = jcm\nalpha = pi/10\ngamma = g\nt_max = 10/g\nsample_every = 625\npositivity_tolerance = 1e-3\n"));
    return evolve(initial_state(cfg), build_model(cfg), cfg.integration);
  }();
  return rec;
}

const std::set<Measure> kAll = {Measure::Entropy, Measure::Concurrence, Measure::MutualInfo,
                                Measure::ClassicalCorr, Measure::Discord};

void BM_TrajectorySerial(benchmark::State& state) {
  const TrajectoryRecord& rec = trajectory();
  set_threads(1);  // the discord grid inside would otherwise fan out
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_trajectory_serial(rec, kAll, Side::A, 1e-3));
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(rec.states.size()));
}

void BM_TrajectoryParallel(benchmark::State& state) {
  const TrajectoryRecord& rec = trajectory();
  set_threads(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_trajectory(rec, kAll, Side::A, 1e-3));
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(rec.states.size()));
}

}  // namespace

// Arguments: unmeasured dimension, thread count.
BENCHMARK(BM_GridSerial)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GridParallel)->ArgsProduct({{2, 4}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TrajectorySerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TrajectoryParallel)->ArgsProduct({{0}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
