#include "octet/octuple.hpp"
#include "octet/orbit.hpp"
#include "octet/quadform.hpp"

#include <benchmark/benchmark.h>

using namespace octet;

namespace {

const octuple bench_root{0, 0, 1, 1, 1};

void bm_traversal_serial(benchmark::State& state) {
    const std::int64_t N = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_curvatures_serial(bench_root, N, false).positive_count());
}

void bm_traversal_parallel(benchmark::State& state) {
    const std::int64_t N = state.range(0);
    enumerate_options opts;
    opts.mode = enumeration_mode::traversal;
    opts.multiplicity = false;
    opts.threads = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_curvatures(bench_root, N, opts).positive_count());
}

void bm_histogram_serial(benchmark::State& state) {
    const quad_form f = build_form(normalize_seed(bench_root));
    for (auto _ : state) benchmark::DoNotOptimize(representation_histogram_serial(f, state.range(0)).back());
}

void bm_histogram_parallel(benchmark::State& state) {
    const quad_form f = build_form(normalize_seed(bench_root));
    const int threads = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(representation_histogram(f, state.range(0), threads).back());
}

void bm_certified(benchmark::State& state) {
    enumerate_options opts;
    opts.mode = enumeration_mode::certified;
    opts.threads = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_curvatures(bench_root, state.range(0), opts).positive_count());
}

}  // namespace

BENCHMARK(bm_traversal_serial)->Arg(2000)->Arg(5000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(bm_traversal_parallel)->ArgsProduct({{2000, 5000}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(bm_histogram_serial)->Arg(10000)->Arg(20000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(bm_histogram_parallel)->ArgsProduct({{10000, 20000}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(bm_certified)->ArgsProduct({{100000}, {1, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
