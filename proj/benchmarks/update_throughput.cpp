#include <benchmark/benchmark.h>

#include "dphh/misra_gries.hpp"
#include "dphh/sketch.hpp"
#include "dphh/space_saving.hpp"
#include "dphh/zipf.hpp"

namespace {

const dphh::Stream& stream() {
    static const dphh::Stream x = dphh::generate_zipf(1 << 20, 500'000, 1.1, 1);
    return x;
}

template <typename Summary>
void BM_Counter(benchmark::State& state) {
    const auto& x = stream();
    Summary s(static_cast<std::size_t>(state.range(0)));
    std::size_t j = 0;
    for (auto _ : state) {
        s.update(x[j]);
        j = (j + 1) & (x.size() - 1);
    }
    state.SetItemsProcessed(state.iterations());
    state.counters["bytes"] = static_cast<double>(s.bytes());
}

void BM_Sketch(benchmark::State& state, dphh::SketchKind kind) {
    const auto& x = stream();
    // Depth for T = 1e6, delta = 0.001; width 2 k~.
    dphh::SketchMatrix s(kind, 21, 2 * static_cast<std::size_t>(state.range(0)), 7);
    std::size_t j = 0;
    for (auto _ : state) {
        s.update(x[j]);
        benchmark::ClobberMemory();
        j = (j + 1) & (x.size() - 1);
    }
    state.SetItemsProcessed(state.iterations());
    state.counters["bytes"] = static_cast<double>(s.bytes());
}

void capacities(benchmark::internal::Benchmark* b) {
    for (long k = 256; k <= 4096; k *= 2) b->Arg(k);
}

BENCHMARK(BM_Counter<dphh::SpaceSaving>)->Apply(capacities);
BENCHMARK(BM_Counter<dphh::MisraGries>)->Apply(capacities);
BENCHMARK_CAPTURE(BM_Sketch, count_min, dphh::SketchKind::count_min)->Apply(capacities);
BENCHMARK_CAPTURE(BM_Sketch, count_sketch, dphh::SketchKind::count_sketch)->Apply(capacities);

}  // namespace

BENCHMARK_MAIN();
