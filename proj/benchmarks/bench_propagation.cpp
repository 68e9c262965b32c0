#include <benchmark/benchmark.h>

#include <vector>

#include "tbdecay/bpm/mode_solver.hpp"
#include "tbdecay/bpm/propagator.hpp"

using namespace tbdecay::bpm;

static void mode_solve(benchmark::State& state) {
  const WaveguideArraySpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(solve_guided_mode(spec));
}
BENCHMARK(mode_solve)->Unit(benchmark::kMillisecond);

// One Crank-Nicolson step on the default 60-guide window.
static void crank_nicolson_step(benchmark::State& state) {
  const WaveguideArraySpec spec;
  const GridSpec grid;
  const auto profile = build_index_profile(spec, grid);
  const auto absorber = absorber_profile(profile.x, grid.absorber_width, grid.absorber_strength);
  CrankNicolsonStepper stepper(profile.x, spec.n_substrate, spec.reduced_wavelength(), grid.dz);
  stepper.set_profile(profile.index, absorber);
  const auto mode = solve_guided_mode(spec, grid.dx);
  std::vector<Complex> psi;
  for (double v : mode.sample(profile.x, 0.0)) psi.emplace_back(v, 0.0);
  for (auto _ : state) {
    stepper.step(psi);
    benchmark::ClobberMemory();
  }
  state.counters["points"] = static_cast<double>(psi.size());
}
BENCHMARK(crank_nicolson_step);
