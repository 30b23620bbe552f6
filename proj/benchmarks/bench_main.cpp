#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "asymcav/applications.hpp"
#include "asymcav/oracle_sim.hpp"
#include "fixtures.hpp"

using namespace asymcav;

namespace {

void BM_Eigenfrequencies(benchmark::State& state) {
  const CouplingRates r = derive_couplings(fixtures::fig2());
  double dx = 1e-9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigenfrequencies(r, dx));
    dx += 1e-15;
  }
}
BENCHMARK(BM_Eigenfrequencies);

void BM_ForceNoiseFull(benchmark::State& state) {
  const CouplingRates r = derive_couplings(fixtures::fig2());
  const OperatingPoint op = resonant_operating_point(r, quadratic_points(r).plus, 1.0);
  double w = fixtures::kOmegaM;
  for (auto _ : state) {
    benchmark::DoNotOptimize(force_noise_full(r, op, w));
    w += 1.0;
  }
}
BENCHMARK(BM_ForceNoiseFull);

void BM_ForceNoiseLargeGap(benchmark::State& state) {
  const CavitySpec s = fixtures::fig2();
  double w = fixtures::kOmegaM;
  for (auto _ : state) {
    benchmark::DoNotOptimize(force_noise_large_gap(s, 1.0, w));
    w += 1.0;
  }
}
BENCHMARK(BM_ForceNoiseLargeGap);

void BM_SpectrumSweep(benchmark::State& state) {
  const CavitySpec s = fixtures::fig2();
  const double kp = empty_cavity_decay_rate(s);
  std::vector<double> w;
  for (int i = 0; i < state.range(0); ++i) w.push_back(kp * std::pow(10.0, -2.0 + 4.0 * i / state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(force_noise_spectrum(s, 1.0, w, NoiseMethod::kFullTwoPort));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SpectrumSweep)->Arg(100)->Arg(10000);

void BM_NumericSusceptibility(benchmark::State& state) {
  const CouplingRates r = derive_couplings(fixtures::fig2());
  for (auto _ : state) benchmark::DoNotOptimize(numeric_susceptibility(r, 0.0, 1e-9, fixtures::kOmegaM));
}
BENCHMARK(BM_NumericSusceptibility);

void BM_QndRatio(benchmark::State& state) {
  const CavitySpec s = fixtures::fig2();
  const MechanicalMode m = MechanicalMode::from_mass(fixtures::kOmegaM, 1e-11);
  for (auto _ : state) benchmark::DoNotOptimize(qnd_ratio(s, 1.0, m));
}
BENCHMARK(BM_QndRatio);

void BM_Ringdown(benchmark::State& state) {
  const CavitySpec s = fixtures::ringdown();
  const CouplingRates r = derive_couplings(s);
  FieldState init;
  init.alpha1 = 1.0;
  SimulationOptions o;
  o.dx = quadratic_points(r).plus;
  o.sample_every = 500;
  const double dt = 2 * std::min(s.L1, s.L2()) / kSpeedOfLight / 20;
  for (auto _ : state) benchmark::DoNotOptimize(time_domain_fields(s, init, 8e-6, dt, o));
}
BENCHMARK(BM_Ringdown)->Unit(benchmark::kMillisecond);

void BM_RingdownFit(benchmark::State& state) {
  const CavitySpec s = fixtures::ringdown();
  const CouplingRates r = derive_couplings(s);
  FieldState init;
  init.alpha1 = 1.0;
  SimulationOptions o;
  o.dx = quadratic_points(r).plus;
  o.sample_every = 500;
  const double dt = 2 * std::min(s.L1, s.L2()) / kSpeedOfLight / 20;
  const auto traj = time_domain_fields(s, init, 8e-6, dt, o);
  for (auto _ : state) benchmark::DoNotOptimize(fit_ringdown(traj));
}
BENCHMARK(BM_RingdownFit)->Unit(benchmark::kMillisecond);

void BM_GridOptimize(benchmark::State& state) {
  const CavitySpec s = fixtures::fig2();
  GridOptimizeOptions g;
  g.points = 201;
  g.log_scale = true;
  for (auto _ : state) {
    benchmark::DoNotOptimize(grid_optimize(
        [&](double y) {
          CavitySpec t = s;
          t.L1 = (1 - y) * s.L;
          return force_noise_large_gap(t, 1.0, fixtures::kOmegaM);
        },
        1e-7, 0.5, g));
  }
}
BENCHMARK(BM_GridOptimize);

}  // namespace

BENCHMARK_MAIN();
