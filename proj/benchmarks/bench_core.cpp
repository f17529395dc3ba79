// Copyright 2026 The TraceLab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "tracelab/certify.hpp"
#include "tracelab/functionals.hpp"
#include "tracelab/linalg.hpp"
#include "tracelab/metrics.hpp"
#include "tracelab/random.hpp"
#include "tracelab/variational.hpp"

namespace {

using namespace tracelab;

void BM_HermitianEig(benchmark::State& state) {
    Rng rng = make_rng(1);
    const HermitianMatrix h(random_hermitian(state.range(0), rng));
    for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(h));
}
BENCHMARK(BM_HermitianEig)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_Svd(benchmark::State& state) {
    Rng rng = make_rng(2);
    const Matrix x = ginibre(state.range(0), state.range(0), rng);
    for (auto _ : state) benchmark::DoNotOptimize(svd(x));
}
BENCHMARK(BM_Svd)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_PsiPqs(benchmark::State& state) {
    Rng rng = make_rng(3);
    const Index n = state.range(0);
    const Matrix a = ginibre(n, n, rng);
    const PsdMatrix b = random_psd(n, rng), c = random_psd(n, rng);
    const TripleParams params;
    for (auto _ : state) benchmark::DoNotOptimize(psi_pqs(a, b, c, params));
}
BENCHMARK(BM_PsiPqs)->Arg(2)->Arg(3)->Arg(4)->Arg(8);

void BM_VariationalMaxCheck(benchmark::State& state) {
    Rng rng = make_rng(4);
    const Index n = state.range(0);
    const Matrix b = random_invertible(n, rng), x = random_invertible(n, rng), y = random_invertible(n, rng);
    const ExponentQuad quad = ExponentQuad::from_triple(0.25, 0.25, 2.0);
    ProbeOptions probes;
    probes.count = 10;
    for (auto _ : state) benchmark::DoNotOptimize(variational_max_check(b, x, y, quad, probes));
}
BENCHMARK(BM_VariationalMaxCheck)->Arg(2)->Arg(3)->Arg(4);

void BM_JointConvexityTrials(benchmark::State& state) {
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(certify_joint_convexity(TripleParams{}, 3, state.range(0), seed++));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_JointConvexityTrials)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_JfKronecker(benchmark::State& state) {
    Rng rng = make_rng(5);
    const Index n = state.range(0);
    const PsdMatrix a = random_psd(n, rng), b = random_psd(n, rng);
    const ScalarFunction h = scalar_function("h");
    for (auto _ : state) benchmark::DoNotOptimize(j_f(a, b, h));
}
BENCHMARK(BM_JfKronecker)->Arg(2)->Arg(3)->Arg(4);

void BM_QfSpectral(benchmark::State& state) {
    Rng rng = make_rng(6);
    const Index n = state.range(0);
    const PsdMatrix a = random_psd(n, rng), b = random_psd(n, rng);
    const Kernel k = ratio_kernel(scalar_function("h"));
    for (auto _ : state) benchmark::DoNotOptimize(q_f(a, b, k));
}
BENCHMARK(BM_QfSpectral)->Arg(2)->Arg(3)->Arg(4);

void BM_PetzMonotonicity(benchmark::State& state) {
    Rng rng = make_rng(7);
    const PsdMatrix a = random_psd(3, rng), b = random_psd(3, rng);
    const KrausChannel ch = random_mixed_unitary(3, rng);
    const ScalarFunction h = scalar_function("h");
    for (auto _ : state) benchmark::DoNotOptimize(petz_monotonicity_check(h, ch, a, b));
}
BENCHMARK(BM_PetzMonotonicity);

}  // namespace

BENCHMARK_MAIN();
