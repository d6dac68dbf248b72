// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include "quadspin/metrics.hpp"
#include "quadspin/model.hpp"
#include "quadspin/wigner.hpp"

using namespace quadspin;

namespace {

Parallelism workers(const benchmark::State& state) { return Parallelism{static_cast<int>(state.range(0))}; }

void BM_RateMapSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(rate_map_serial(SpinQuantumNumber(9), 0.5, 181, 360));
}

void BM_RateMapParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(rate_map(SpinQuantumNumber(9), 0.5, 181, 360, workers(state)));
}

QuantumState wigner_input() {
  const SpinQuantumNumber s(9);
  const Vector psi = expm_unitary(mat_hamiltonian(s, {1.0, 1.0}), 0.05).matrix() *
                     css(s, BlochDirection(kPi / 2, kPi / 2)).amplitudes();
  return QuantumState::pure(psi);
}

void BM_WignerSerial(benchmark::State& state) {
  const auto psi = wigner_input();
  const SphereGrid grid;
  for (auto _ : state) benchmark::DoNotOptimize(wigner_distribution_serial(psi, grid));
}

void BM_WignerParallel(benchmark::State& state) {
  const auto psi = wigner_input();
  const SphereGrid grid;
  for (auto _ : state) benchmark::DoNotOptimize(wigner_distribution(psi, grid, workers(state)));
}

Trajectory series_input() {
  const SpinQuantumNumber s(9);
  EvolutionSpec spec{mat_hamiltonian(s, {1.0, 0.5})};
  spec.t_max = 20.0;
  spec.dt_sample = 0.01;
  return evolve_unitary(css(s, BlochDirection(kPi / 2, kPi / 2)), spec);
}

void BM_SeriesSerial(benchmark::State& state) {
  const auto tr = series_input();
  for (auto _ : state) benchmark::DoNotOptimize(squeezing_series_serial(tr, SpinQuantumNumber(9)));
}

void BM_SeriesParallel(benchmark::State& state) {
  const auto tr = series_input();
  for (auto _ : state) benchmark::DoNotOptimize(squeezing_series(tr, SpinQuantumNumber(9), workers(state)));
}

}  // namespace

BENCHMARK(BM_RateMapSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RateMapParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WignerSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WignerParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SeriesSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SeriesParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
