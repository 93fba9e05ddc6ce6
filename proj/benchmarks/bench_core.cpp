// bench_core.cpp — Microbenchmarks for the hot paths: classification,
// domination, intertwiner construction, slot evolution, Choi assembly

#include "cocycle/endo.hpp"
#include "cocycle/focksim.hpp"
#include "cocycle/subordination.hpp"
#include "../tests/test_support.hpp"

#include <benchmark/benchmark.h>

using namespace cocycle;
using testsupport::random_intertwiner_inputs;
using testsupport::random_partition;
using testsupport::random_projection_generator;
using testsupport::random_unitary;

namespace {

void BM_ClassifyProjectionGenerator(benchmark::State& state) {
    std::mt19937_64 rng(1);
    const Index n = state.range(0), d = state.range(1);
    const BlockPartition part = random_partition(n, rng);
    const auto f = random_projection_generator(part, d, rng);
    for (auto _ : state) {
        auto cls = gen::classify_projection_generator(f, part);
        benchmark::DoNotOptimize(cls.ok);
    }
}
BENCHMARK(BM_ClassifyProjectionGenerator)->Args({1, 2})->Args({2, 4})->Args({4, 4});

void BM_Dominates(benchmark::State& state) {
    std::mt19937_64 rng(2);
    const auto triple = testsupport::nested_generator_triple(state.range(0), state.range(1), rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sub::dominates(triple[1], triple[0]));
    }
}
BENCHMARK(BM_Dominates)->Args({1, 2})->Args({2, 4});

void BM_ConstructIntertwiner(benchmark::State& state) {
    std::mt19937_64 rng(3);
    const auto fx = random_intertwiner_inputs(state.range(0), state.range(1), rng);
    for (auto _ : state) {
        auto h = sub::construct_intertwiner(fx.f, fx.g, fx.d_iso, fx.e_col, fx.k_herm);
        benchmark::DoNotOptimize(h.A);
    }
}
BENCHMARK(BM_ConstructIntertwiner)->Args({1, 2})->Args({2, 4});

void BM_Evolve(benchmark::State& state) {
    std::mt19937_64 rng(4);
    const Index d = state.range(0), slices = state.range(1);
    const auto f = random_projection_generator(BlockPartition::trivial(1), d, rng);
    const auto c = sim::make_cocycle(f, 1.0 / 64, slices);
    const auto v = sim::random_vector(1, d, slices, 11);
    for (auto _ : state) {
        auto w = sim::evolve(c, v, slices);
        benchmark::DoNotOptimize(w.data);
    }
    state.SetComplexityN(v.data.size());
}
BENCHMARK(BM_Evolve)->Args({1, 10})->Args({2, 8})->Args({2, 10})->Complexity();

void BM_ChoiMatrix(benchmark::State& state) {
    std::mt19937_64 rng(5);
    const Index m = state.range(0), j = state.range(1);
    endo::NormalHom hom;
    hom.m = m;
    hom.j = j;
    hom.n = m * j + 1;
    hom.V = random_unitary(hom.n, rng).leftCols(m * j);
    for (auto _ : state) {
        auto choi = endo::choi_matrix(hom);
        benchmark::DoNotOptimize(choi);
    }
}
BENCHMARK(BM_ChoiMatrix)->Args({2, 2})->Args({3, 3});

} // namespace

BENCHMARK_MAIN();
