#include "cepstra/cepstrum.hpp"
#include "cepstra/imaging.hpp"
#include "cepstra/rng.hpp"

#include <benchmark/benchmark.h>

namespace {

cepstra::Plane random_plane(int side, std::uint64_t seed) {
    cepstra::Plane p = cepstra::make_plane(side, side);
    cepstra::Rng rng(seed);
    for (double& v : p.data) v = rng.uniform();
    return p;
}

void bm_real_cepstrum_1d(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    cepstra::Rng rng(7);
    std::vector<double> x(n);
    for (double& v : x) v = rng.uniform();
    for (auto _ : state) {
        auto c = cepstra::real_cepstrum_1d(x);
        benchmark::DoNotOptimize(c.data());
    }
}
BENCHMARK(bm_real_cepstrum_1d)->Arg(256)->Arg(1024)->Arg(4096);

void bm_real_cepstrum_2d(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    const cepstra::Plane p = random_plane(side, 11);
    for (auto _ : state) {
        auto c = cepstra::real_cepstrum_2d(p);
        benchmark::DoNotOptimize(c.data.data());
    }
}
BENCHMARK(bm_real_cepstrum_2d)->Arg(64)->Arg(128)->Arg(256);

void bm_radial_profile(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    const cepstra::Cepstrum c = cepstra::center_shift(cepstra::real_cepstrum_2d(random_plane(side, 3)));
    for (auto _ : state) {
        auto prof = cepstra::radial_profile(c);
        benchmark::DoNotOptimize(prof.bins.data());
    }
}
BENCHMARK(bm_radial_profile)->Arg(64)->Arg(256);

} // namespace

BENCHMARK_MAIN();
