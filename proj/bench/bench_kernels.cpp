#include <benchmark/benchmark.h>
#include <omp.h>

#include <map>

#include "frp/reference.hpp"
#include "frp/synthetic.hpp"

using namespace frp;

namespace {

// Noisy disc on dark ground, the same texture the pipeline sees.
const SyntheticImage& fixture(int size) {
    static std::map<int, SyntheticImage> cache;
    auto it = cache.find(size);
    if (it == cache.end()) {
        SyntheticSpec s;
        s.shape = DiscShape{0.4 * size};
        s.noise = 12;
        s.lattice_pitch = 6;
        s.seed = 11;
        it = cache.emplace(size, generate_synthetic(s, size, size, 0.01)).first;
    }
    return it->second;
}

BinaryMask fixture_mask(int size) {
    SyntheticSpec s;
    s.shape = DiscShape{0.4 * size};
    return shape_mask(s, size, size);
}

// Parallel kernels take the thread count from the last argument.
void set_threads(const benchmark::State& state) { omp_set_num_threads(static_cast<int>(state.range(1))); }

void BM_ErodeSerial(benchmark::State& state) {
    const Gray8& img = fixture(static_cast<int>(state.range(0))).image.pixels();
    const morph::DiskKernel k(15);
    for (auto _ : state) benchmark::DoNotOptimize(reference::erode(img, k, morph::Border::replicate));
}

void BM_ErodeParallel(benchmark::State& state) {
    set_threads(state);
    const Gray8& img = fixture(static_cast<int>(state.range(0))).image.pixels();
    const morph::DiskKernel k(15);
    for (auto _ : state) benchmark::DoNotOptimize(morph::erode(img, k, morph::Border::replicate));
}

void BM_ReconstructSerial(benchmark::State& state) {
    const Gray8& img = fixture(static_cast<int>(state.range(0))).image.pixels();
    const Gray8 marker = morph::erode(img, morph::DiskKernel(8));
    for (auto _ : state) benchmark::DoNotOptimize(reference::reconstruct(marker, img, morph::Polarity::by_dilation));
}

void BM_ReconstructParallel(benchmark::State& state) {
    set_threads(state);
    const Gray8& img = fixture(static_cast<int>(state.range(0))).image.pixels();
    const Gray8 marker = morph::erode(img, morph::DiskKernel(8));
    for (auto _ : state) benchmark::DoNotOptimize(morph::reconstruct(marker, img, morph::Polarity::by_dilation));
}

void BM_LocalWeightsSerial(benchmark::State& state) {
    const int size = static_cast<int>(state.range(0));
    const CalibratedImage& img = fixture(size).image;
    const BinaryMask mask = fixture_mask(size);
    for (auto _ : state) benchmark::DoNotOptimize(reference::assign_local(img, mask, {}, 7));
}

void BM_LocalWeightsParallel(benchmark::State& state) {
    set_threads(state);
    const int size = static_cast<int>(state.range(0));
    const CalibratedImage& img = fixture(size).image;
    const BinaryMask mask = fixture_mask(size);
    for (auto _ : state) benchmark::DoNotOptimize(assign_local(img, mask, {}, 7));
}

void thread_sweep(benchmark::internal::Benchmark* b) {
    const int max_threads = omp_get_max_threads();
    for (int size : {256, 512}) {
        for (int t = 1; t <= max_threads; t *= 2) b->Args({size, t});
        if ((max_threads & (max_threads - 1)) != 0) b->Args({size, max_threads});
    }
}

}  // namespace

BENCHMARK(BM_ErodeSerial)->Args({256, 1})->Args({512, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ErodeParallel)->Apply(thread_sweep)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReconstructSerial)->Args({256, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReconstructParallel)->Apply(thread_sweep)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LocalWeightsSerial)->Args({256, 1})->Args({512, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LocalWeightsParallel)->Apply(thread_sweep)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
