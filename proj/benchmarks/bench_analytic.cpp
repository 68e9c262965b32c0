#include <benchmark/benchmark.h>

#include "tbdecay/analytic.hpp"
#include "tbdecay/bessel.hpp"
#include "tbdecay/evolve.hpp"
#include "tbdecay/zeno.hpp"

static void bessel_sequence(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tbdecay::special::bessel_j_sequence(40, x));
}
BENCHMARK(bessel_sequence)->Arg(2)->Arg(60)->Arg(400);

static void exact_amplitude(benchmark::State& state) {
  const tbdecay::CouplingModel m(0.5);
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tbdecay::exact_amplitude(m, t));
  state.counters["points"] = static_cast<double>(tbdecay::quadrature_points(m, t));
}
BENCHMARK(exact_amplitude)->Arg(10)->Arg(100)->Arg(400);

static void decomposition(benchmark::State& state) {
  const tbdecay::CouplingModel m(0.3);
  for (auto _ : state) benchmark::DoNotOptimize(tbdecay::decay_decomposition(m, 30.0));
}
BENCHMARK(decomposition);

static void rk4_evolve(benchmark::State& state) {
  const double t_max = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tbdecay::evolve(0.5, t_max));
}
BENCHMARK(rk4_evolve)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

static void zeno_crossing(benchmark::State& state) {
  const tbdecay::CouplingModel m(0.3);
  for (auto _ : state) benchmark::DoNotOptimize(tbdecay::zeno_crossing(m));
}
BENCHMARK(zeno_crossing)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
