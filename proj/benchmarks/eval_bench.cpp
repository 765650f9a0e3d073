#include "screenwright/eval.hpp"

#include <benchmark/benchmark.h>

using namespace screenwright;

namespace {

void sign_test(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sign_test_p_value(n / 3, n - n / 3));
    }
}
BENCHMARK(sign_test)->Arg(200)->Arg(2000)->Arg(20000);

void count_reconstruction(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(reconstruct_counts(16.5, 83.0, 0.5, 206));
    }
}
BENCHMARK(count_reconstruction);

void presentation_order(benchmark::State& state) {
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(presented_order(7, "story:" + std::to_string(i++), Dimension::Overall));
    }
}
BENCHMARK(presentation_order);

} // namespace
