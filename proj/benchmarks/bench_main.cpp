#include <benchmark/benchmark.h>

#include "structlab/arrow.hpp"
#include "structlab/fraisse.hpp"

using namespace structlab;

namespace {

void bench_enumerate_embeddings(benchmark::State& state) {
    FinStructure a = ordered_graph(3, {{0, 1}, {1, 2}});
    FinStructure c = weakly_saturated_ordered_graph(3).structure;
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_embeddings(a, c));
}
BENCHMARK(bench_enumerate_embeddings);

void bench_arrow_exhaustive(benchmark::State& state) {
    FinStructure c = linear_order(static_cast<int>(state.range(0)));
    FinStructure b = linear_order(3);
    FinStructure a = linear_order(2);
    for (auto _ : state)
        benchmark::DoNotOptimize(check_arrow(c, b, a, 2, ArrowMode::exhaustive));
}
BENCHMARK(bench_arrow_exhaustive)->Arg(5)->Arg(6);

void bench_arrow_search(benchmark::State& state) {
    FinStructure c = linear_order(static_cast<int>(state.range(0)));
    FinStructure b = linear_order(3);
    FinStructure a = linear_order(2);
    for (auto _ : state) benchmark::DoNotOptimize(check_arrow(c, b, a, 2, ArrowMode::search));
}
BENCHMARK(bench_arrow_search)->Arg(6)->Arg(7);

void bench_saturation_construction(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(weakly_saturated_ordered_graph(static_cast<int>(state.range(0))));
}
BENCHMARK(bench_saturation_construction)->Arg(2)->Arg(3)->Arg(4);

void bench_type_catalog(benchmark::State& state) {
    FinStructure host = weakly_saturated_ordered_graph(3).structure;
    for (auto _ : state) benchmark::DoNotOptimize(type_catalog(host, 2));
}
BENCHMARK(bench_type_catalog);

}  // namespace

BENCHMARK_MAIN();
