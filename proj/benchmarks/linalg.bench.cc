// Copyright 2026 The QRP Lab Authors
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


#include <vector>

#include "benchmark/benchmark.h"
#include "qrp/ensembles.h"
#include "qrp/linalg.h"
#include "qrp/rng.h"

using namespace qrp;

namespace {

DensityMatrix random_state(int n, std::uint64_t seed) {
    CounterRng rng(SeedPath{seed, 0, "bench"});
    return sample_haar_pure_state(n, rng);
}

}  // namespace

static void BM_kron(benchmark::State &state) {
    int n = static_cast<int>(state.range(0));
    DensityMatrix a = random_state(1, 1);
    DensityMatrix b = random_state(n - 1, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kron(a, b));
    }
    state.SetLabel("n=" + std::to_string(n));
}
BENCHMARK(BM_kron)->DenseRange(4, 10, 2);

static void BM_trace_leading(benchmark::State &state) {
    int n = static_cast<int>(state.range(0));
    DensityMatrix rho = random_state(n, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(trace_leading(rho, 1));
    }
}
BENCHMARK(BM_trace_leading)->DenseRange(4, 10, 2);

static void BM_partial_trace_general(benchmark::State &state) {
    int n = static_cast<int>(state.range(0));
    DensityMatrix rho = random_state(n, 4);
    std::vector<int> keep;
    for (int q = 0; q < n; q += 2) {
        keep.push_back(q);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(partial_trace(rho, keep));
    }
}
BENCHMARK(BM_partial_trace_general)->DenseRange(4, 10, 2);

static void BM_conjugate(benchmark::State &state) {
    int n = static_cast<int>(state.range(0));
    UnitaryMatrix u = sample_haar_unitary(Eigen::Index{1} << n, SeedPath{5, 0, "bench"});
    DensityMatrix rho = random_state(n, 6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(conjugate(u, rho));
    }
}
BENCHMARK(BM_conjugate)->DenseRange(2, 8, 2);

static void BM_haar_unitary(benchmark::State &state) {
    Eigen::Index dim = Eigen::Index{1} << state.range(0);
    std::uint64_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_haar_unitary(dim, SeedPath{7, i++, "bench"}));
    }
}
BENCHMARK(BM_haar_unitary)->DenseRange(2, 8, 2);

static void BM_ising_unitary(benchmark::State &state) {
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ising_unitary(n, -1.0, 0.7, 1.5, 1.0));
    }
}
BENCHMARK(BM_ising_unitary)->DenseRange(2, 8, 2);

static void BM_expectation(benchmark::State &state) {
    int n = static_cast<int>(state.range(0));
    DensityMatrix rho = random_state(n, 8);
    std::string letters(static_cast<size_t>(n), 'X');
    letters[0] = 'Z';
    PauliString obs = PauliString::from_str(letters);
    for (auto _ : state) {
        benchmark::DoNotOptimize(expectation(obs, rho));
    }
}
BENCHMARK(BM_expectation)->DenseRange(4, 10, 2);
