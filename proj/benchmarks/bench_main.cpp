#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "drowsy/attention.hpp"
#include "drowsy/forest.hpp"
#include "drowsy/kernel.hpp"
#include "drowsy/svm.hpp"

using namespace drowsy;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, size_t dim) {
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<double> v(dim);
    for (auto& x : v) x = noise(rng);
    return v;
}

void BM_KernelEval(benchmark::State& state) {
    std::mt19937_64 rng(1);
    size_t dim = static_cast<size_t>(state.range(0));
    auto a = random_vector(rng, dim);
    auto b = random_vector(rng, dim);
    KernelSpec spec;
    spec.kind = static_cast<KernelKind>(state.range(1));
    spec.gamma = 1.0 / static_cast<double>(dim);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel_eval(spec, a, b));
    }
}
BENCHMARK(BM_KernelEval)
    ->Args({35, static_cast<int>(KernelKind::Linear)})
    ->Args({35, static_cast<int>(KernelKind::Rbf)})
    ->Args({4499, static_cast<int>(KernelKind::Linear)})
    ->Args({4499, static_cast<int>(KernelKind::Polynomial)})
    ->Args({4499, static_cast<int>(KernelKind::Rbf)});

void BM_SvmDecision(benchmark::State& state) {
    std::mt19937_64 rng(2);
    size_t dim = static_cast<size_t>(state.range(0));
    int svs = static_cast<int>(state.range(1));
    BinarySvm model;
    model.kernel.kind = KernelKind::Rbf;
    model.kernel.gamma = 1.0 / static_cast<double>(dim);
    for (int i = 0; i < svs; ++i) {
        model.support_vectors.push_back(random_vector(rng, dim));
        model.dual_coefs.push_back(i % 2 == 0 ? 0.5 : -0.5);
    }
    auto x = random_vector(rng, dim);
    for (auto _ : state) {
        benchmark::DoNotOptimize(decision_function(model, x));
    }
}
BENCHMARK(BM_SvmDecision)->Args({35, 100})->Args({4499, 100})->Args({4499, 500});

void BM_ForestPredict(benchmark::State& state) {
    std::mt19937_64 rng(3);
    int trees = static_cast<int>(state.range(0));
    std::vector<std::vector<double>> points;
    std::vector<int> labels;
    for (int i = 0; i < 300; ++i) {
        auto v = random_vector(rng, 35);
        v[0] += (i % 3) * 4.0;
        points.push_back(std::move(v));
        labels.push_back(i % 3);
    }
    ForestParams params;
    params.trees = trees;
    params.seed = 4;
    auto forest = train_random_forest(points, labels, params);
    auto x = random_vector(rng, 35);
    for (auto _ : state) {
        benchmark::DoNotOptimize(predict_forest(forest, x));
    }
}
BENCHMARK(BM_ForestPredict)->Arg(10)->Arg(100);

void BM_Perclos(benchmark::State& state) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ClosureSeries series;
    series.fps = 30.0;
    for (int i = 0; i < state.range(0); ++i) series.values.push_back(u(rng));
    for (auto _ : state) {
        benchmark::DoNotOptimize(perclos(series, 60.0, 60.0));
    }
}
BENCHMARK(BM_Perclos)->Arg(1800)->Arg(18000);

}  // namespace

BENCHMARK_MAIN();
