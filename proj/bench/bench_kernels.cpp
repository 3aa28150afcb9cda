#include <benchmark/benchmark.h>

#include <vector>

#include "mesoent/entanglement.hpp"

using namespace mesoent;

namespace {

const BathParams kBath = BathParams::from_temperature(0.1, 1.0, 0.9);

void BM_CurveSerial(benchmark::State& state) {
    const auto grid = uniform_grid(static_cast<double>(state.range(0)) * 0.01, 0.01);
    for (auto _ : state) {
        auto curve = serial::entanglement_curve(kBath, 1.0, grid);
        benchmark::DoNotOptimize(curve.samples.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}

void BM_CurveParallel(benchmark::State& state) {
    const auto grid = uniform_grid(static_cast<double>(state.range(0)) * 0.01, 0.01);
    for (auto _ : state) {
        auto curve = entanglement_curve(kBath, 1.0, grid);
        benchmark::DoNotOptimize(curve.samples.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}

const std::vector<double> kKs{0.25, 0.5, 1.0, 2.0};

void BM_PhaseSerial(benchmark::State& state) {
    for (auto _ : state) {
        auto rows = serial::phase_boundary(kKs);
        benchmark::DoNotOptimize(rows.data());
    }
}

void BM_PhaseParallel(benchmark::State& state) {
    for (auto _ : state) {
        auto rows = phase_boundary(kKs);
        benchmark::DoNotOptimize(rows.data());
    }
}

void BM_Expm(benchmark::State& state) {
    const RealMatrix l = generator(kBath).matrix();
    double t = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(expm(l, t));
        t += 1e-6;
    }
}

}  // namespace

BENCHMARK(BM_CurveSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CurveParallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PhaseSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PhaseParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Expm);

BENCHMARK_MAIN();
