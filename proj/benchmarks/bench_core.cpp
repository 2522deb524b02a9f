#include <benchmark/benchmark.h>

#include <random>

#include "coxhom/complex.hpp"
#include "coxhom/group.hpp"
#include "coxhom/homology.hpp"
#include "coxhom/plocal.hpp"
#include "coxhom/snf.hpp"

using namespace coxhom;

namespace {

const char* const kGroups[] = {"A5", "B5", "D5", "F4", "H3", "H4", "E6"};

void BM_CosetEnumerationRegular(benchmark::State& state) {
    const auto m = catalog(kGroups[state.range(0)]);
    std::size_t rows = 0;
    for (auto _ : state) {
        rows = coset_enumerate(m, ParabolicSubset()).rows();
        benchmark::DoNotOptimize(rows);
    }
    state.SetLabel(kGroups[state.range(0)]);
    state.counters["cosets"] = static_cast<double>(rows);
}
BENCHMARK(BM_CosetEnumerationRegular)->DenseRange(0, 6)->Unit(benchmark::kMillisecond);

void BM_ElementEnumeration(benchmark::State& state) {
    const auto m = catalog(kGroups[state.range(0)]);
    for (auto _ : state) {
        auto r = realize(m);
        benchmark::DoNotOptimize(r.store.size());
    }
    state.SetLabel(kGroups[state.range(0)]);
}
BENCHMARK(BM_ElementEnumeration)->DenseRange(0, 6)->Unit(benchmark::kMillisecond);

void BM_CyclicSylowScan(benchmark::State& state) {
    const auto store = realize(catalog("E6")).store;
    for (auto _ : state) benchmark::DoNotOptimize(find_cyclic_sylow(store, 5).e);
}
BENCHMARK(BM_CyclicSylowScan)->Unit(benchmark::kMillisecond);

void BM_ComplexHomology(benchmark::State& state) {
    const char* name = kGroups[state.range(0)];
    const auto m = catalog(name);
    for (auto _ : state) {
        const auto X = build_complex(m);
        benchmark::DoNotOptimize(chain_homology(boundary_matrices(X)));
    }
    state.SetLabel(name);
    state.counters["simplices"] = static_cast<double>(simplex_count(m));
}
BENCHMARK(BM_ComplexHomology)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_SnfRandomSparse(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937 rng(5);
    IntMatrix m(n, n);
    for (std::size_t c = 0; c < n; ++c)
        for (int k = 0; k < 4; ++k) m.set(rng() % n, c, static_cast<long long>(rng() % 7) - 3);
    for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m).rank);
}
BENCHMARK(BM_SnfRandomSparse)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_DeriveCorpusPair(benchmark::State& state) {
    const auto m = catalog("E6xA1");
    for (auto _ : state) {
        Engine engine;
        benchmark::DoNotOptimize(engine.derive(m, 5, 7).result().complete());
    }
}
BENCHMARK(BM_DeriveCorpusPair)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
