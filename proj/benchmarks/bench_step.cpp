#include <benchmark/benchmark.h>

#include <chemonet/chemo_field.hpp>
#include <chemonet/presets.hpp>
#include <chemonet/scheme.hpp>
#include <chemonet/simulation.hpp>

using namespace chemonet;

namespace {

// Two-arc blow-up network with arc 1 space step 0.04 / 2^level.
RunConfig refined(int level) {
  return two_arc_family(1.0, 2.0, 0.04 / static_cast<double>(1 << level));
}

void BM_HyperbolicStep(benchmark::State& state) {
  Simulation sim(refined(static_cast<int>(state.range(0))));
  HyperbolicState next = sim.state();
  for (auto _ : state) {
    sim.scheme().step_into(sim.state(), sim.source(), next);
    benchmark::DoNotOptimize(next.u.data());
  }
  state.counters["points"] = static_cast<double>(sim.grid().total_points());
}
BENCHMARK(BM_HyperbolicStep)->DenseRange(0, 4);

void BM_ChemoFieldSolve(benchmark::State& state) {
  Simulation sim(refined(static_cast<int>(state.range(0))));
  const ChemoFieldSolver solver(sim.network(), sim.grid());
  for (auto _ : state) {
    PhiState p = solver.step(sim.phi(), sim.state().u, sim.state().u);
    benchmark::DoNotOptimize(p.phi.data());
  }
  state.counters["points"] = static_cast<double>(sim.grid().total_points());
}
BENCHMARK(BM_ChemoFieldSolve)->DenseRange(0, 4);

void BM_ChemoFieldFactor(benchmark::State& state) {
  Simulation sim(refined(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    ChemoFieldSolver solver(sim.network(), sim.grid());
    benchmark::DoNotOptimize(&solver);
  }
}
BENCHMARK(BM_ChemoFieldFactor)->DenseRange(0, 4, 2);

void BM_CoupledStep(benchmark::State& state) {
  Simulation sim(preset("twelve_arc"));
  for (auto _ : state) benchmark::DoNotOptimize(sim.step());
}
BENCHMARK(BM_CoupledStep);

}  // namespace
BENCHMARK_MAIN();
