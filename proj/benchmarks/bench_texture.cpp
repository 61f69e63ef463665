#include "cepstra/imaging.hpp"
#include "cepstra/rng.hpp"
#include "cepstra/texture.hpp"

#include <benchmark/benchmark.h>

namespace {

cepstra::QuantizedPlane random_quantized(int side, int levels, std::uint64_t seed) {
    cepstra::Plane p = cepstra::make_plane(side, side);
    cepstra::Rng rng(seed);
    for (double& v : p.data) v = rng.uniform();
    return cepstra::quantize(p, levels);
}

void bm_glcm(benchmark::State& state) {
    const auto q = random_quantized(static_cast<int>(state.range(0)), 256, 5);
    for (auto _ : state) {
        auto m = cepstra::glcm(q, cepstra::Direction::Deg0);
        benchmark::DoNotOptimize(m.p.data());
    }
}
BENCHMARK(bm_glcm)->Arg(64)->Arg(128)->Arg(256);

void bm_haralick13(benchmark::State& state) {
    const auto q = random_quantized(128, static_cast<int>(state.range(0)), 5);
    const auto m = cepstra::glcm(q, cepstra::Direction::Deg0);
    for (auto _ : state) {
        auto f = cepstra::haralick13(m);
        benchmark::DoNotOptimize(f.data());
    }
}
BENCHMARK(bm_haralick13)->Arg(64)->Arg(256);

void bm_directional_features(benchmark::State& state) {
    const auto q = random_quantized(static_cast<int>(state.range(0)), 256, 5);
    for (auto _ : state) {
        auto d = cepstra::directional_features(q);
        benchmark::DoNotOptimize(d.mean.data());
    }
}
BENCHMARK(bm_directional_features)->Arg(64)->Arg(128);

} // namespace
