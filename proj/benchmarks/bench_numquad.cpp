#include <benchmark/benchmark.h>

#include <cmath>

#include "qcoh/coherence.hpp"
#include "qcoh/conditioning.hpp"
#include "qcoh/numquad.hpp"
#include "qcoh/states.hpp"

namespace {

void BM_Integrate1DGaussian(benchmark::State& state) {
  const qcoh::IntegrationConfig cfg;
  for (auto _ : state)
    benchmark::DoNotOptimize(qcoh::integrate_1d([](double x) { return std::exp(-x * x); }, cfg));
}
BENCHMARK(BM_Integrate1DGaussian);

void BM_HermiteFunction(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qcoh::hermite_function(n, x));
    x += 1e-9;
  }
}
BENCHMARK(BM_HermiteFunction)->Arg(1)->Arg(10)->Arg(50);

void BM_L1ThermalKernel(benchmark::State& state) {
  const qcoh::DensityKernel k =
      qcoh::gaussian_schell_kernel(qcoh::thermal_params(static_cast<double>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(qcoh::l1_coherence(k, {}));
}
BENCHMARK(BM_L1ThermalKernel)->Arg(1)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_L1FockKernel(benchmark::State& state) {
  const qcoh::DensityKernel k =
      qcoh::pure_kernel(qcoh::fock_wavefunction(qcoh::FockIndex(static_cast<int>(state.range(0)))));
  for (auto _ : state) benchmark::DoNotOptimize(qcoh::l1_coherence(k, {}));
}
BENCHMARK(BM_L1FockKernel)->Arg(1)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_ConditionalCoherenceThermal(benchmark::State& state) {
  const qcoh::DensityKernel rho = qcoh::gaussian_schell_kernel(qcoh::thermal_params(1.0));
  const qcoh::DensityKernel rho0 = qcoh::gaussian_schell_kernel(qcoh::thermal_params(0.0));
  const qcoh::BeamSplitter bs = qcoh::BeamSplitter::balanced();
  for (auto _ : state) benchmark::DoNotOptimize(qcoh::conditional_coherence(rho, rho0, bs, 0.5, {}));
}
BENCHMARK(BM_ConditionalCoherenceThermal)->Unit(benchmark::kMillisecond);

void BM_AverageCoherenceFock(benchmark::State& state) {
  const qcoh::DensityKernel rho =
      qcoh::pure_kernel(qcoh::fock_wavefunction(qcoh::FockIndex(static_cast<int>(state.range(0)))));
  const qcoh::DensityKernel rho0 = qcoh::pure_kernel(qcoh::fock_wavefunction(qcoh::FockIndex(0)));
  const qcoh::SweepGrid grid = qcoh::SweepGrid::for_states(rho, rho0);
  const qcoh::BeamSplitter bs = qcoh::BeamSplitter::balanced();
  for (auto _ : state) benchmark::DoNotOptimize(qcoh::average_coherence(rho, rho0, bs, grid, {}));
}
BENCHMARK(BM_AverageCoherenceFock)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
