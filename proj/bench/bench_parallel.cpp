// Serial reference vs OpenMP kernels: heuristic multi-start loop and oracle
// pattern enumeration.

#include <benchmark/benchmark.h>

#include "lotforge/heuristic.hpp"
#include "lotforge/oracle.hpp"

using namespace lotforge;

namespace {

Instance bench_instance(int retailers, int periods, int warehouses) {
    InstanceSpec spec;
    spec.num_retailers = retailers;
    spec.num_periods = periods;
    spec.num_warehouses = warehouses;
    spec.seed = 42;
    return generate(spec);
}

void heuristic(benchmark::State& state, bool parallel) {
    const Instance in = bench_instance(static_cast<int>(state.range(0)), 15, 5);
    HeuristicConfig cfg;
    cfg.iterations = 200;
    cfg.parallel = parallel;
    for (auto _ : state) benchmark::DoNotOptimize(run(in, cfg).best_cost);
    state.SetItemsProcessed(state.iterations() * cfg.iterations);
}

void oracle(benchmark::State& state, bool parallel) {
    const Instance in = bench_instance(3, static_cast<int>(state.range(0)), 1);
    OracleConfig cfg;
    cfg.max_setup_bits = 30;
    cfg.parallel = parallel;
    for (auto _ : state) benchmark::DoNotOptimize(solve_exact(in, cfg).cost);
}

void BM_HeuristicSerial(benchmark::State& s) { heuristic(s, false); }
void BM_HeuristicParallel(benchmark::State& s) { heuristic(s, true); }
void BM_OracleSerial(benchmark::State& s) { oracle(s, false); }
void BM_OracleParallel(benchmark::State& s) { oracle(s, true); }

}  // namespace

BENCHMARK(BM_HeuristicSerial)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_HeuristicParallel)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OracleSerial)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OracleParallel)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
