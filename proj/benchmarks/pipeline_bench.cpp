#include "screenwright/pipeline.hpp"

#include <benchmark/benchmark.h>

#include <filesystem>

using namespace screenwright;
namespace fs = std::filesystem;

namespace {

// One storyline through every stage on the mock backend, checkpoints included.
void mock_story(benchmark::State& state) {
    const fs::path root = fs::temp_directory_path() / "screenwright_bench";
    const Storyline storyline{Genre::Drama,
                              "A retired lighthouse keeper fights the sale of his lighthouse with "
                              "the help of his estranged daughter and a young mechanic."};
    PipelineConfig config;
    std::size_t i = 0;
    for (auto _ : state) {
        auto gw = make_gateway(config);
        const auto dir = root / std::to_string(i++);
        benchmark::DoNotOptimize(run_story(config, *gw, {"bench", storyline, dir}, {}));
        state.PauseTiming();
        fs::remove_all(dir);
        state.ResumeTiming();
    }
    fs::remove_all(root);
}
BENCHMARK(mock_story)->Unit(benchmark::kMillisecond);

} // namespace
