// Serial reference kernels against their OpenMP counterparts.

#include "padic/carry.hpp"
#include "padic/skew.hpp"
#include "padic/zeta.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace padic;

namespace {

SkewLaurentSeries dense_op(unsigned seed, long lo, long hi) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> c(-9, 9), den(1, 4);
    SkewLaurentSeries s(lo, hi);
    for (long k = lo; k <= hi; ++k) {
        std::vector<Q> cs(4);
        for (auto& q : cs) q = Q(c(rng)) / Q(den(rng));
        s.set(k, RationalFunction(Poly(cs)));
    }
    return s;
}

void BM_SumEstimate(benchmark::State& st, bool parallel) {
    auto idx = special_index(3, 1, 1, static_cast<long>(st.range(0)));
    for (auto _ : st) {
        auto e = parallel ? sum_estimate(idx, 60) : sum_estimate_serial(idx, 60);
        benchmark::DoNotOptimize(e.v_sum);
    }
    st.counters["terms"] = static_cast<double>(idx.n + 1);
}

void BM_StarProduct(benchmark::State& st, bool parallel) {
    long w = st.range(0);
    auto u = dense_op(1, -w, w), v = dense_op(2, -w, w);
    for (auto _ : st) {
        auto r = parallel ? star_product(u, v) : star_product_serial(u, v);
        benchmark::DoNotOptimize(r);
    }
}

void BM_PhiProfile(benchmark::State& st, bool parallel) {
    std::vector<long> Ns{6, 8, 10};
    for (auto _ : st) {
        auto rows = parallel ? phi_valuation_profile(3, 1, 4, Ns, 60, 0) : phi_valuation_profile_serial(3, 1, 4, Ns, 60, 0);
        benchmark::DoNotOptimize(rows);
    }
}

}  // namespace

BENCHMARK_CAPTURE(BM_SumEstimate, serial, false)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_SumEstimate, parallel, true)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_StarProduct, serial, false)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_StarProduct, parallel, true)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_PhiProfile, serial, false)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_PhiProfile, parallel, true)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
