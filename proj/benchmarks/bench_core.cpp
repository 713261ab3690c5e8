#include <benchmark/benchmark.h>

#include <random>

#include "centro/baselines.hpp"
#include "centro/decomposition.hpp"
#include "centro/signal.hpp"
#include "centro/synth.hpp"

namespace {

centro::Trace conditioned_trace(double dur_s, std::uint64_t seed) {
    centro::SynthConfig cfg;
    cfg.duration_s = dur_s;
    cfg.n_events = static_cast<int>(dur_s / 30.0);
    cfg.seed = seed;
    auto [trace, truth] = centro::synth_trace(cfg);
    return centro::zscore_normalize(centro::bandpass_fir(trace, 11.0, 16.0, 401));
}

void BM_CorrentropyMatrix(benchmark::State& state) {
    const centro::Trace t = conditioned_trace(static_cast<double>(state.range(0)), 7);
    const centro::WindowMatrix xm = centro::windowize(t, 150);
    const centro::KernelConfig k = centro::kernel_from_trace(t);
    for (auto _ : state) {
        benchmark::DoNotOptimize(centro::correntropy_matrix(xm, k.sigma));
    }
    state.SetLabel(std::to_string(xm.n_cols) + " cols");
}
BENCHMARK(BM_CorrentropyMatrix)->Arg(60)->Arg(150)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_Decompose(benchmark::State& state) {
    const centro::Trace t = conditioned_trace(300.0, 11);
    const centro::WindowMatrix xm = centro::windowize(t, 150);
    const centro::KernelConfig k = centro::kernel_from_trace(t);
    for (auto _ : state) {
        benchmark::DoNotOptimize(centro::decompose(xm, k.sigma, 99));
    }
}
BENCHMARK(BM_Decompose)->Unit(benchmark::kMillisecond);

void BM_BandpassFir(benchmark::State& state) {
    centro::SynthConfig cfg;
    cfg.duration_s = 300.0;
    cfg.n_events = 0;
    cfg.seed = 13;
    auto [trace, truth] = centro::synth_trace(cfg);
    for (auto _ : state) {
        benchmark::DoNotOptimize(centro::bandpass_fir(trace, 11.0, 16.0, 401));
    }
}
BENCHMARK(BM_BandpassFir)->Unit(benchmark::kMillisecond);

void BM_EmbeddingTransform(benchmark::State& state) {
    const centro::Trace t = conditioned_trace(300.0, 17);
    for (auto _ : state) {
        benchmark::DoNotOptimize(centro::embedding_transform(t, 150, 99));
    }
}
BENCHMARK(BM_EmbeddingTransform)->Unit(benchmark::kMillisecond);

void BM_RpcaIalm(benchmark::State& state) {
    std::mt19937_64 rng(19);
    std::normal_distribution<double> g;
    const int n = static_cast<int>(state.range(0));
    Eigen::MatrixXd a(n, 5);
    Eigen::MatrixXd b(n, 5);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < 5; ++j) {
            a(i, j) = g(rng);
            b(i, j) = g(rng);
        }
    Eigen::MatrixXd x = a * b.transpose();
    for (int i = 0; i < n * n / 20; ++i)
        x(std::uniform_int_distribution<int>(0, n - 1)(rng),
          std::uniform_int_distribution<int>(0, n - 1)(rng)) += 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(centro::rpca_ialm(x, {}));
    }
}
BENCHMARK(BM_RpcaIalm)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
