#include <benchmark/benchmark.h>

#include <random>

#include "fgc/gcgmc.hpp"
#include "fgc/numerics.hpp"
#include "fgc/nw.hpp"
#include "fgc/simulate.hpp"

namespace {

fgc::CurveSeries make_series(std::size_t n, std::size_t p, std::uint64_t seed) {
    fgc::SimConfig cfg;
    cfg.n = n;
    cfg.p = p;
    cfg.seed = seed;
    cfg.burn_in = 10;
    std::mt19937_64 rng(seed);
    return fgc::simulate_far1_x(cfg, rng);
}

void BM_SemiMetric(benchmark::State& state) {
    const auto s = make_series(10, state.range(0), 1);
    const fgc::SemiMetricSpec spec{2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(fgc::semi_metric(s[0], s[1], spec));
    }
}
BENCHMARK(BM_SemiMetric)->Arg(50)->Arg(200)->Arg(400);

void BM_DistanceMatrix(benchmark::State& state) {
    const auto s = make_series(state.range(0), 50, 2);
    const fgc::SemiMetricSpec spec{2};
    for (auto _ : state) {
        fgc::DistanceMatrix dm(s, spec);
        benchmark::DoNotOptimize(dm(0, s.size() - 1));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DistanceMatrix)->Arg(64)->Arg(128)->Arg(256)->Complexity();

void BM_NwPredict(benchmark::State& state) {
    fgc::NwModel model;
    model.predictors = make_series(state.range(0), 50, 3);
    model.responses = make_series(state.range(0), 50, 4);
    model.semimetric.derivative_order = 0;
    model.bandwidth = 1.0;
    std::mt19937_64 rng(5);
    const fgc::Curve x_new = fgc::brownian_path(50, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fgc::nw_predict(model, x_new));
    }
}
BENCHMARK(BM_NwPredict)->Arg(100)->Arg(250);

void BM_SelectBandwidth(benchmark::State& state) {
    const auto pred = make_series(state.range(0), 50, 6);
    const auto resp = make_series(state.range(0), 50, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fgc::select_bandwidth(
            pred, resp, fgc::BandwidthSearch{}, fgc::SemiMetricSpec{0},
            fgc::KernelSpec{}));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SelectBandwidth)->Arg(50)->Arg(100)->Arg(200)->Complexity();

void BM_ExpandingWindow(benchmark::State& state) {
    fgc::SimConfig cfg;
    cfg.n = state.range(0);
    cfg.p = 50;
    cfg.seed = 8;
    auto [x, y] = fgc::simulate_pair(cfg);
    fgc::WindowPlan plan{cfg.n, static_cast<std::size_t>(0.8 * cfg.n)};
    fgc::EwConfig ew;
    ew.semimetric.derivative_order = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fgc::run_expanding_window(x, y, plan, ew));
    }
}
BENCHMARK(BM_ExpandingWindow)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
