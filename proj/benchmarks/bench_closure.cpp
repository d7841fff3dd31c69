#include <benchmark/benchmark.h>

#include <random>

#include "oct/octagon.hpp"

namespace {

using namespace oct;

CoherentDbm dense_instance(std::size_t n_vars, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    CoherentDbm m(n_vars);
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) {
            if (i == j) continue;
            if (std::make_pair(bar(j), bar(i)) < std::make_pair(i, j)) continue;
            Bound b = Bound::finite(static_cast<long>(1 + rng() % 16));
            m.at(i, j) = b;
            m.at(bar(j), bar(i)) = b;
        }
    }
    return m;
}

void BM_StrongClosure(benchmark::State& state) {
    CoherentDbm m = dense_instance(static_cast<std::size_t>(state.range(0)), 42);
    for (auto _ : state) {
        Octagon c = strong_closure(m);
        benchmark::DoNotOptimize(c);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_StrongClosure)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_EmptinessTest(benchmark::State& state) {
    CoherentDbm m = dense_instance(static_cast<std::size_t>(state.range(0)), 43);
    for (auto _ : state) {
        benchmark::DoNotOptimize(is_empty(m));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EmptinessTest)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_Join(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Octagon a = strong_closure(dense_instance(n, 44));
    Octagon b = strong_closure(dense_instance(n, 45));
    for (auto _ : state) {
        Octagon j = join(a, b);
        benchmark::DoNotOptimize(j);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Join)->RangeMultiplier(2)->Range(8, 64)->Complexity();

}  // namespace

BENCHMARK_MAIN();
