// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include "pseudospec/oscillator.hpp"
#include "pseudospec/pseudospectra.hpp"

using namespace pseudospec;

namespace {

const DiscretizedOperator& op100() {
    static const auto op = discretize(OscillatorParams(Complex(1.0, 5.0)), 100, 6.0);
    return op;
}

const ComplexWindow kWindow{0.0, 60.0, 0.0, 60.0, 24, 24};

void BM_FieldSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(compute_field_serial(op100().matrix, kWindow));
}

void BM_FieldParallel(benchmark::State& state) {
    const int workers = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(compute_field(op100(), kWindow, workers));
}

void BM_Perturbation(benchmark::State& state) {
    const int workers = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(perturbation_check(op100().matrix, 1e-2, 8, 42, workers));
}

}  // namespace

BENCHMARK(BM_FieldSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FieldParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Perturbation)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
