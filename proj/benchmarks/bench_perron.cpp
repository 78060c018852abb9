// Copyright 2026 The perron Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>

#include "perron/construct.hpp"
#include "perron/semigroup.hpp"
#include "perron/spectral.hpp"
#include "perron/variational.hpp"
#include "support/fixtures.hpp"

namespace {

perron::MarkovModel fixed_model(int n) {
    std::mt19937 rng(1234u + static_cast<unsigned>(n));
    return testutil::random_irreducible(n, rng);
}

void bm_kernel(benchmark::State& state) {
    const perron::MarkovModel m = fixed_model(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(perron::kernel(m, 1.0));
    }
}
BENCHMARK(bm_kernel)->Arg(8)->Arg(32)->Arg(96);

void bm_principal(benchmark::State& state) {
    const perron::MarkovModel m = fixed_model(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(perron::principal(m));
    }
}
BENCHMARK(bm_principal)->Arg(8)->Arg(32)->Arg(96);

void bm_rate(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const perron::MarkovModel m = fixed_model(n);
    std::mt19937 rng(99);
    const perron::ProbMeasure mu = testutil::random_measure(n, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(perron::rate_I(m, mu));
    }
}
BENCHMARK(bm_rate)->Arg(4)->Arg(8)->Arg(16);

void bm_dv_supremum(benchmark::State& state) {
    const perron::MarkovModel m = fixed_model(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(perron::dv_supremum(m));
    }
}
BENCHMARK(bm_dv_supremum)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void bm_construct(benchmark::State& state) {
    const perron::MarkovModel m = testutil::chain2();
    const perron::SpectralResult sr = perron::principal(m);
    const perron::ProbMeasure mu = perron::eigen_equilibrium(sr);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            perron::construct_ground_measure(m, mu, sr.lambda0, 50.0, 20));
    }
}
BENCHMARK(bm_construct)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
