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

#ifndef QRP_ENGINE_H
#define QRP_ENGINE_H

#include <optional>
#include <vector>

#include "qrp/channels.h"
#include "qrp/ensembles.h"
#include "qrp/linalg.h"
#include "qrp/rng.h"

namespace qrp {

using Readout = std::vector<double>;

struct QrpConfig {
    ReservoirSpec reservoir;
    std::optional<PauliNoise> inter_step_noise;
    std::vector<PauliString> observables;
    std::optional<int> shots;

    void validate() const;
};

struct QrpState {
    DensityMatrix hidden;
    int step = 0;
    /// rho(step) over all n_a + n_h qubits; absent before the first step.
    std::optional<DensityMatrix> full_last;

    int n_h() const {
        return hidden.qubit_count();
    }
};

/// Throws DimensionError when expected_n_h is given and differs.
QrpState qrp_init(const DensityMatrix &rho_h0, std::optional<int> expected_n_h = std::nullopt);
/// Validates an arbitrary matrix as the initial hidden state; throws std::invalid_argument.
QrpState qrp_init(const Matrix &rho_h0, std::optional<int> expected_n_h = std::nullopt);

/// full_last = N_step(channel(input (x) hidden)); hidden = Tr_a[full_last].
QrpState qrp_step(const QrpState &state, const DensityMatrix &input, const QrpConfig &cfg,
                  const ReservoirChannel &channel);

/// Throws std::logic_error before the first step.
Readout readout_exact(const QrpState &state, const std::vector<PauliString> &observables);

/// Mean of N draws of +-1 with P(+1) = (1 + <obs>)/2.
double readout_shots(const QrpState &state, const PauliString &obs, int shots, const SeedPath &seed);
double sample_pauli_mean(double expectation, int shots, CounterRng &rng);

/// Materializes the reservoir once from `seed` and returns one readout per input.
std::vector<Readout> run_sequence(const DensityMatrix &rho_h0, const std::vector<DensityMatrix> &inputs,
                                  const QrpConfig &cfg, const SeedPath &seed);
/// As above with an already materialized channel; `seed` then only drives shot noise.
std::vector<Readout> run_sequence(const ReservoirChannel &channel, const DensityMatrix &rho_h0,
                                  const std::vector<DensityMatrix> &inputs, const QrpConfig &cfg, const SeedPath &seed);

}  // namespace qrp

#endif
