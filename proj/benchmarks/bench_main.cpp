#include <benchmark/benchmark.h>

#include "qscatter/cascade.hpp"
#include "qscatter/classical.hpp"
#include "qscatter/compare.hpp"
#include "qscatter/quantum.hpp"

namespace {

using namespace qscatter;

const RateSet kRates = RateSet::radiative(12.0, 11.0);
const DriveSpec kDrive{6.0, 0.0, Complex(1.0, 0.0)};

void BM_ClosedForm(benchmark::State& state) {
  const TimeGrid grid(1.0, 2001);
  for (auto _ : state)
    benchmark::DoNotOptimize(quantum_closed_form(kRates, DriveSpec{0.0, 0.0, Complex(1.0, 0.0)}, grid, true));
}
BENCHMARK(BM_ClosedForm);

void BM_AmplitudeOde(benchmark::State& state) {
  const TimeGrid grid(1.0, 2001);
  for (auto _ : state) benchmark::DoNotOptimize(solve_amplitudes(kRates, 3.0, grid));
}
BENCHMARK(BM_AmplitudeOde);

void BM_MasterEquation(benchmark::State& state) {
  const TimeGrid grid(1.0, 201);
  const CascadeLiouvillian liouv = build_cascade(kRates, 0.0, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(evolve_rho(liouv, initial_density(), grid));
}
BENCHMARK(BM_MasterEquation);

void BM_BlochOde(benchmark::State& state) {
  const TimeGrid grid(1.0, 2001);
  for (auto _ : state) benchmark::DoNotOptimize(evolve_bloch(kRates, kDrive, grid));
}
BENCHMARK(BM_BlochOde);

void BM_SeriesSum(benchmark::State& state) {
  const TimeGrid grid(1.0, 2001);
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(series_sum(order, kRates, kDrive, grid));
}
BENCHMARK(BM_SeriesSum)->Arg(3)->Arg(7)->Arg(11);

void BM_Epsilon(benchmark::State& state) {
  const EpsilonConfig cfg;
  const TimeGrid grid(cfg.window(kRates), 1601);
  const ComplexEnvelope q = quantum_closed_form(kRates, DriveSpec{0.0, 0.0, Complex(1.0, 0.0)}, grid, true);
  const ComplexEnvelope c = evolve_bloch(kRates, kDrive, grid).envelope;
  for (auto _ : state) benchmark::DoNotOptimize(epsilon(c, q, kRates, cfg));
}
BENCHMARK(BM_Epsilon);

void BM_OptimizeOmega(benchmark::State& state) {
  const EpsilonConfig cfg;
  for (auto _ : state)
    benchmark::DoNotOptimize(optimize_omega(kRates, cfg, default_bracket(kRates),
                                            1e-3 * std::sqrt(kRates.gamma_e * kRates.gamma_p),
                                            401));
}
BENCHMARK(BM_OptimizeOmega);

}  // namespace

BENCHMARK_MAIN();
