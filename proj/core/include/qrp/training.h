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

#ifndef QRP_TRAINING_H
#define QRP_TRAINING_H

#include <optional>
#include <vector>

#include "qrp/engine.h"
#include "qrp/linalg.h"

namespace qrp {

struct ReadoutWeights {
    RealVector eta;
};

struct TrainConfig {
    int washout = 0;
    /// Absent means default_ridge(R).
    std::optional<double> lambda;
};

struct FeatureSet {
    RealMatrix R;
    RealVector y;
};

/// A readout sequence with one label per time step.
struct LabeledRun {
    std::vector<Readout> readouts;
    std::vector<double> labels;
};

/// One row per (run, tau) with tau >= washout, tau counted from 0.
FeatureSet build_feature_matrix(const std::vector<LabeledRun> &runs, const TrainConfig &cfg);

/// 1e-8 trace(R^T R) / M.
double default_ridge(const RealMatrix &R);

/// (R^T R + lambda I)^{-1} R^T y; lambda = 0 gives the minimum-norm least-squares solution.
ReadoutWeights fit_readout(const RealMatrix &R, const RealVector &y, double lambda);
ReadoutWeights fit_readout(const FeatureSet &features, const TrainConfig &cfg);

double predict(const ReadoutWeights &w, const Readout &readout);
std::vector<double> predict_all(const ReadoutWeights &w, const RealMatrix &R);

double mse_loss(const std::vector<double> &predictions, const std::vector<double> &targets);

/// Every Pauli string on n qubits, identity first.
std::vector<PauliString> all_pauli_strings(int n);
/// Identity plus X_i and Z_i on each qubit.
std::vector<PauliString> local_pauli_features(int n);

struct DelayTaskConfig {
    int washout = 20;
    int train_steps = 600;
    int test_steps = 300;
    /// Target y_tau = s_{tau - delay}; must not exceed washout.
    int delay = 1;
    std::optional<double> lambda;
};

struct DelayTaskResult {
    double test_mse = 0;
    /// Standard error of the mean squared test error.
    double test_mse_se = 0;
    /// Population variance of the test targets.
    double baseline = 0;
    int test_points = 0;
};

/// Drives the reservoir with s ~ U[0, 1] (exponential encoding), fits the delayed-input target on
/// the training window and scores the held-out tail.
DelayTaskResult run_delay_task(const QrpConfig &cfg, const DelayTaskConfig &task, std::uint64_t seed);

}  // namespace qrp

#endif
