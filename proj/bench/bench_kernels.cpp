// Serial vs OpenMP timings for the hot loops.

#include "angelesco/kernels.hpp"
#include "angelesco/mop.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

using namespace angelesco;

static KernelMode mode_of(const benchmark::State& st) { return st.range(1) ? KernelMode::Parallel : KernelMode::Serial; }

static void BM_householder(benchmark::State& st)
{
    const std::size_t n = st.range(0);
    std::mt19937 rng(7);
    std::normal_distribution<double> g;
    std::vector<double> a0(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) a0[i * n + j] = a0[j * n + i] = g(rng);
    std::vector<double> a, d, e;
    for (auto _ : st) {
        a = a0;
        householder_tridiagonalize(n, a, d, e, false, mode_of(st));
        benchmark::DoNotOptimize(d.data());
    }
}
BENCHMARK(BM_householder)->ArgsProduct({{256, 1024}, {0, 1}})->Unit(benchmark::kMillisecond);

static void BM_log_gas_hessian(benchmark::State& st)
{
    const int n = st.range(0);
    LogGas lg;
    for (int k = 0; k < n; ++k) {
        const double t = std::cos(M_PI * (k + 0.5) / n);
        lg.x.push_back(k % 2 ? 1.5 + 0.5 * t : -1.5 + 0.5 * t);
        lg.q.push_back(1.0 / n);
        lg.group.push_back(k % 2);
    }
    std::vector<double> grad, hess;
    for (auto _ : st) {
        log_gas_derivatives(lg, &grad, &hess, mode_of(st));
        benchmark::DoNotOptimize(hess.data());
    }
}
BENCHMARK(BM_log_gas_hessian)->ArgsProduct({{400, 1600}, {0, 1}})->Unit(benchmark::kMillisecond);

static void BM_nnrr_sweep(benchmark::State& st)
{
    PrecisionContext ctx(256);
    MopEngine e(Geometry::reference(), {WeightSpec::constant(), WeightSpec::constant()}, ctx);
    for (auto _ : st) {
        NnrrTable t = nnrr_table(e, st.range(0), mode_of(st));
        benchmark::DoNotOptimize(t.entries.data());
    }
}
BENCHMARK(BM_nnrr_sweep)->ArgsProduct({{10}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
