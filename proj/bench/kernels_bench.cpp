// Serial reference against the OpenMP version of each kernel.

#include <benchmark/benchmark.h>

#include <random>

#include "quadmod/gleason.hpp"
#include "quadmod/kernels.hpp"
#include "quadmod/modarith.hpp"
#include "quadmod/modpoly.hpp"

using namespace quadmod;

namespace {

constexpr u64 kP = 2305843009213693951ULL;

std::vector<u64> random_vec(std::size_t n, u64 p, u64 seed) {
    std::mt19937_64 rng(seed);
    std::vector<u64> v(n);
    for (auto& x : v) x = rng() % p;
    return v;
}

template <bool Parallel>
void BM_matvec(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    const auto a = random_vec(n * n, kP, 1), x = random_vec(n, kP, 2);
    std::vector<u64> y(n);
    for (auto _ : st) {
        if constexpr (Parallel) kernels::matvec_mod(a, n, n, x, y, kP);
        else kernels::serial::matvec_mod(a, n, n, x, y, kP);
        benchmark::DoNotOptimize(y.data());
    }
}

template <bool Parallel>
void BM_convolve(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    const auto a = random_vec(n, kP, 3), b = random_vec(n, kP, 4);
    for (auto _ : st) {
        auto r = Parallel ? kernels::convolve_mod(a, b, kP) : kernels::serial::convolve_mod(a, b, kP);
        benchmark::DoNotOptimize(r.data());
    }
}

template <bool Parallel>
void BM_frobenius(benchmark::State& st) {
    const ModPoly f = mod_reduce(gleason(static_cast<int>(st.range(0))), random_prime(60, 5));
    for (auto _ : st) {
        auto m = Parallel ? kernels::frobenius_matrix_t(f) : kernels::serial::frobenius_matrix_t(f);
        benchmark::DoNotOptimize(m.data());
    }
}

template <bool Parallel>
void BM_critical_periods(benchmark::State& st) {
    const u64 p = random_prime(40, 6);
    std::mt19937_64 rng(7);
    std::vector<std::pair<u64, u64>> pts(static_cast<std::size_t>(st.range(0)));
    for (auto& [a, b] : pts) a = rng() % p, b = rng() % p;
    for (auto _ : st) {
        auto r = Parallel ? kernels::critical_periods(pts, 16, p) : kernels::serial::critical_periods(pts, 16, p);
        benchmark::DoNotOptimize(r.data());
    }
}

}  // namespace

BENCHMARK(BM_matvec<false>)->Arg(256)->Arg(1024);
BENCHMARK(BM_matvec<true>)->Arg(256)->Arg(1024);
BENCHMARK(BM_convolve<false>)->Arg(1024)->Arg(4096);
BENCHMARK(BM_convolve<true>)->Arg(1024)->Arg(4096);
BENCHMARK(BM_frobenius<false>)->Arg(8)->Arg(10);
BENCHMARK(BM_frobenius<true>)->Arg(8)->Arg(10);
BENCHMARK(BM_critical_periods<false>)->Arg(10000);
BENCHMARK(BM_critical_periods<true>)->Arg(10000);

BENCHMARK_MAIN();
