// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "sensorplace/experiments.hpp"
#include "sensorplace/placement.hpp"

using namespace sensorplace;

namespace {

struct Fixture {
  MechanicalSystem system = build_chain({50, 2.0, 2.0e6, 1.0e-4, 1.0e-3});
  ModalData modal = solve_modes(system);
  double omega = 0.95 * modal.natural_freqs(4);
  NormalizedFrf full = normalize_columns(frf_direct(system, iota_indices(50), iota_indices(50), omega));
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

void BM_greedy_parallel(benchmark::State& state) {
  const Fixture& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(greedy_select(f.full, state.range(0)));
}

void BM_greedy_serial(benchmark::State& state) {
  const Fixture& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(greedy_select_serial(f.full, state.range(0)));
}

void map_bench(benchmark::State& state, Execution execution) {
  const Fixture& f = fixture();
  const IndexList sensors = greedy_select(f.full, state.range(0)).selected;
  ReconstructionOptions o;
  o.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(reconstruction_map(f.system, sensors, f.omega, o, execution));
}

void BM_map_parallel(benchmark::State& state) { map_bench(state, Execution::Parallel); }
void BM_map_serial(benchmark::State& state) { map_bench(state, Execution::Serial); }

void sweep_bench(benchmark::State& state, Execution execution) {
  const Fixture& f = fixture();
  SweepOptions o;
  o.budget = 10;
  o.reconstruct = false;
  std::vector<double> grid;
  for (int k = 0; k < 16; ++k) grid.push_back(5.0 + 6.0 * k);
  for (auto _ : state) benchmark::DoNotOptimize(frequency_sweep(f.system, grid, o, execution));
}

void BM_gram_sweep_parallel(benchmark::State& state) { sweep_bench(state, Execution::Parallel); }
void BM_gram_sweep_serial(benchmark::State& state) { sweep_bench(state, Execution::Serial); }

}  // namespace

BENCHMARK(BM_greedy_parallel)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_greedy_serial)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_map_parallel)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_map_serial)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gram_sweep_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gram_sweep_serial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
