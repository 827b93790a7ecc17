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
#include "qrp/channels.h"
#include "qrp/engine.h"
#include "qrp/ensembles.h"
#include "qrp/metrics.h"

using namespace qrp;

static void BM_qrp_step_haar(benchmark::State &state) {
    int n_h = static_cast<int>(state.range(0));
    QrpConfig cfg;
    cfg.reservoir = ReservoirSpec{HaarGlobal{}, 1, n_h};
    ReservoirChannel ch = materialize(cfg.reservoir, SeedPath{1, 0, "bench"});
    QrpState s = qrp_init(DensityMatrix::zero_state(n_h));
    DensityMatrix in = encode_exponential(0.3, 1);
    for (auto _ : state) {
        s = qrp_step(s, in, cfg, ch);
        benchmark::DoNotOptimize(s.hidden);
    }
}
BENCHMARK(BM_qrp_step_haar)->DenseRange(1, 7, 2);

static void BM_qrp_step_noisy_layered(benchmark::State &state) {
    int n_h = static_cast<int>(state.range(0));
    QrpConfig cfg;
    cfg.reservoir = ReservoirSpec{
        NoiseInterleaved{AlternatingLayered{4}, SingleQubitChannel::amplitude_damping(0.1), NoisePlacement::BeforeEachLayer},
        1, n_h};
    ReservoirChannel ch = materialize(cfg.reservoir, SeedPath{2, 0, "bench"});
    QrpState s = qrp_init(DensityMatrix::zero_state(n_h));
    DensityMatrix in = encode_exponential(0.3, 1);
    for (auto _ : state) {
        s = qrp_step(s, in, cfg, ch);
        benchmark::DoNotOptimize(s.hidden);
    }
}
BENCHMARK(BM_qrp_step_noisy_layered)->DenseRange(1, 7, 2);

static void BM_pauli_noise_all(benchmark::State &state) {
    int n = static_cast<int>(state.range(0));
    DensityMatrix rho = DensityMatrix::maximally_mixed(n);
    PauliNoise noise(0.9, 0.8, 0.85);
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_pauli_noise_all(noise, rho));
    }
}
BENCHMARK(BM_pauli_noise_all)->DenseRange(2, 8, 2);

static void BM_sandwiched_renyi2(benchmark::State &state) {
    int n = static_cast<int>(state.range(0));
    CounterRng rng(SeedPath{3, 0, "bench"});
    DensityMatrix rho = sample_full_rank_state(n, rng);
    DensityMatrix sigma = sample_full_rank_state(n, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sandwiched_renyi2(rho, sigma));
    }
}
BENCHMARK(BM_sandwiched_renyi2)->DenseRange(2, 6, 2);

static void BM_readout_shots(benchmark::State &state) {
    QrpConfig cfg;
    cfg.reservoir = ReservoirSpec{HaarGlobal{}, 1, 3};
    ReservoirChannel ch = materialize(cfg.reservoir, SeedPath{4, 0, "bench"});
    QrpState s = qrp_step(qrp_init(DensityMatrix::zero_state(3)), encode_exponential(0.5, 1), cfg, ch);
    PauliString z = PauliString::single(4, 0, 'Z');
    int shots = static_cast<int>(state.range(0));
    std::uint64_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(readout_shots(s, z, shots, SeedPath{5, i++, "bench"}));
    }
}
BENCHMARK(BM_readout_shots)->RangeMultiplier(10)->Range(10, 100000);

BENCHMARK_MAIN();
