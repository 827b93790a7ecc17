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

#include "qrp/engine.h"

#include <algorithm>
#include <cmath>

namespace qrp {

void QrpConfig::validate() const {
    reservoir.validate();
    for (const auto &o : observables) {
        if (o.qubit_count() != reservoir.n()) {
            throw std::invalid_argument("QrpConfig: observable " + o.str() + " does not match the register size");
        }
    }
    if (shots && *shots < 1) {
        throw std::invalid_argument("QrpConfig: shots must be positive");
    }
}

QrpState qrp_init(const DensityMatrix &rho_h0, std::optional<int> expected_n_h) {
    if (expected_n_h && rho_h0.qubit_count() != *expected_n_h) {
        throw DimensionError("qrp_init: hidden state has the wrong number of qubits");
    }
    if (rho_h0.qubit_count() < 1) {
        throw DimensionError("qrp_init: hidden register must have at least one qubit");
    }
    const Matrix &m = rho_h0.matrix();
    if (std::abs(m.trace() - cplx(1.0)) > kTraceTol || !is_hermitian(m)) {
        throw std::invalid_argument("qrp_init: hidden state must be Hermitian with unit trace");
    }
    return QrpState{rho_h0, 0, std::nullopt};
}

QrpState qrp_init(const Matrix &rho_h0, std::optional<int> expected_n_h) {
    return qrp_init(DensityMatrix::from_matrix(rho_h0), expected_n_h);
}

QrpState qrp_step(const QrpState &state, const DensityMatrix &input, const QrpConfig &cfg,
                  const ReservoirChannel &channel) {
    int n_a = cfg.reservoir.n_a;
    if (input.qubit_count() != n_a) {
        throw DimensionError("qrp_step: input does not match the accessible register");
    }
    if (state.hidden.qubit_count() != cfg.reservoir.n_h || channel.qubit_count() != cfg.reservoir.n()) {
        throw DimensionError("qrp_step: state or channel does not match the configured register");
    }
    Matrix full = channel.apply(kron(input.matrix(), state.hidden.matrix()));
    if (cfg.inter_step_noise && !cfg.inter_step_noise->is_identity()) {
        full = apply_local_superoperator(SingleQubitChannel::from_pauli(*cfg.inter_step_noise).superoperator(), full,
                                         cfg.reservoir.n(), all_qubits(cfg.reservoir.n()));
    }
    QrpState next;
    next.hidden = DensityMatrix::unchecked(trace_leading(full, n_a));
    next.step = state.step + 1;
    next.full_last = DensityMatrix::unchecked(std::move(full));
    return next;
}

Readout readout_exact(const QrpState &state, const std::vector<PauliString> &observables) {
    if (!state.full_last) {
        throw std::logic_error("readout_exact: no step has been taken yet");
    }
    Readout r;
    r.reserve(observables.size());
    for (const auto &o : observables) {
        r.push_back(expectation(o, *state.full_last));
    }
    return r;
}

double sample_pauli_mean(double expectation, int shots, CounterRng &rng) {
    if (shots < 1) {
        throw std::invalid_argument("readout_shots: shots must be positive");
    }
    double p_plus = std::clamp((1.0 + expectation) / 2.0, 0.0, 1.0);
    long long plus = 0;
    for (int i = 0; i < shots; i++) {
        if (rng.uniform() < p_plus) {
            plus++;
        }
    }
    return static_cast<double>(2 * plus - shots) / shots;
}

double readout_shots(const QrpState &state, const PauliString &obs, int shots, const SeedPath &seed) {
    if (!state.full_last) {
        throw std::logic_error("readout_shots: no step has been taken yet");
    }
    CounterRng rng(seed);
    return sample_pauli_mean(expectation(obs, *state.full_last), shots, rng);
}

std::vector<Readout> run_sequence(const ReservoirChannel &channel, const DensityMatrix &rho_h0,
                                  const std::vector<DensityMatrix> &inputs, const QrpConfig &cfg, const SeedPath &seed) {
    cfg.validate();
    QrpState state = qrp_init(rho_h0, cfg.reservoir.n_h);
    std::vector<Readout> out;
    out.reserve(inputs.size());
    for (const auto &in : inputs) {
        state = qrp_step(state, in, cfg, channel);
        if (cfg.shots) {
            SeedPath step_seed = seed.child(static_cast<std::uint64_t>(state.step), "shots");
            Readout r;
            r.reserve(cfg.observables.size());
            for (size_t k = 0; k < cfg.observables.size(); k++) {
                r.push_back(readout_shots(state, cfg.observables[k], *cfg.shots, step_seed.with(k, "observable")));
            }
            out.push_back(std::move(r));
        } else {
            out.push_back(readout_exact(state, cfg.observables));
        }
    }
    return out;
}

std::vector<Readout> run_sequence(const DensityMatrix &rho_h0, const std::vector<DensityMatrix> &inputs,
                                  const QrpConfig &cfg, const SeedPath &seed) {
    cfg.validate();
    ReservoirChannel channel = materialize(cfg.reservoir, seed);
    return run_sequence(channel, rho_h0, inputs, cfg, seed);
}

}  // namespace qrp
