#include "cepstra/learn.hpp"
#include "cepstra/rng.hpp"
#include "cepstra/table.hpp"

#include <benchmark/benchmark.h>

#include <string>

namespace {

cepstra::FeatureTable random_table(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    cepstra::FeatureTable t;
    cepstra::Rng rng(seed);
    t.has_labels = true;
    for (std::size_t r = 0; r < rows; ++r) {
        t.ids.push_back("img_" + std::to_string(r));
        t.labels.push_back(static_cast<int>(r % 2));
    }
    for (std::size_t c = 0; c < cols; ++c) {
        std::vector<double> col(rows);
        for (std::size_t r = 0; r < rows; ++r)
            col[r] = rng.gaussian() + (c == 0 ? 0.8 * t.labels[r] : 0.0);
        t.add_column("f" + std::to_string(c), std::move(col));
    }
    return t;
}

void bm_train_gbm(benchmark::State& state) {
    const auto t = random_table(200, static_cast<std::size_t>(state.range(0)), 17);
    cepstra::GbmParams params;
    params.rounds = 50;
    for (auto _ : state) {
        auto model = cepstra::train_gbm(t, t.columns, params, 1);
        benchmark::DoNotOptimize(model.trees.data());
    }
}
BENCHMARK(bm_train_gbm)->Arg(10)->Arg(50)->Arg(200);

void bm_roc_auc(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    cepstra::Rng rng(23);
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        scores[i] = rng.uniform();
        labels[i] = static_cast<int>(i % 2);
    }
    for (auto _ : state) {
        double auc = cepstra::roc_auc(scores, labels);
        benchmark::DoNotOptimize(auc);
    }
}
BENCHMARK(bm_roc_auc)->Arg(1000)->Arg(100000);

} // namespace
