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

#include "qrp/training.h"

#include <cmath>

#include "qrp/encoding.h"
#include "qrp/rng.h"

namespace qrp {

FeatureSet build_feature_matrix(const std::vector<LabeledRun> &runs, const TrainConfig &cfg) {
    if (cfg.washout < 0) {
        throw std::invalid_argument("build_feature_matrix: washout must be non-negative");
    }
    Eigen::Index rows = 0;
    Eigen::Index m = -1;
    for (const auto &run : runs) {
        if (run.readouts.size() != run.labels.size()) {
            throw std::invalid_argument("build_feature_matrix: labels are not aligned with readouts");
        }
        if (static_cast<size_t>(cfg.washout) >= run.readouts.size()) {
            throw std::invalid_argument("build_feature_matrix: washout must be shorter than every sequence");
        }
        for (const auto &r : run.readouts) {
            if (m < 0) {
                m = static_cast<Eigen::Index>(r.size());
            } else if (static_cast<Eigen::Index>(r.size()) != m) {
                throw std::invalid_argument("build_feature_matrix: runs disagree on the number of observables");
            }
        }
        rows += static_cast<Eigen::Index>(run.readouts.size()) - cfg.washout;
    }
    if (rows == 0 || m <= 0) {
        throw std::invalid_argument("build_feature_matrix: empty training window");
    }
    FeatureSet f{RealMatrix(rows, m), RealVector(rows)};
    Eigen::Index row = 0;
    for (const auto &run : runs) {
        for (size_t tau = static_cast<size_t>(cfg.washout); tau < run.readouts.size(); tau++) {
            for (Eigen::Index k = 0; k < m; k++) {
                f.R(row, k) = run.readouts[tau][k];
            }
            f.y[row] = run.labels[tau];
            row++;
        }
    }
    return f;
}

double default_ridge(const RealMatrix &R) {
    if (R.cols() == 0) {
        return 0.0;
    }
    return 1e-8 * R.squaredNorm() / static_cast<double>(R.cols());
}

ReadoutWeights fit_readout(const RealMatrix &R, const RealVector &y, double lambda) {
    if (R.rows() < 1 || R.cols() < 1) {
        throw std::invalid_argument("fit_readout: empty feature matrix");
    }
    if (y.size() != R.rows()) {
        throw DimensionError("fit_readout: target length differs from the number of rows");
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("fit_readout: ridge parameter must be finite and non-negative");
    }
    ReadoutWeights w;
    if (lambda == 0.0) {
        Eigen::CompleteOrthogonalDecomposition<RealMatrix> cod(R);
        w.eta = cod.solve(y);
    } else {
        RealMatrix g = R.transpose() * R;
        g.diagonal().array() += lambda;
        w.eta = g.ldlt().solve(R.transpose() * y);
    }
    if (!w.eta.allFinite()) {
        throw NumericalError("fit_readout: non-finite weights");
    }
    return w;
}

ReadoutWeights fit_readout(const FeatureSet &features, const TrainConfig &cfg) {
    double lambda = cfg.lambda ? *cfg.lambda : default_ridge(features.R);
    return fit_readout(features.R, features.y, lambda);
}

double predict(const ReadoutWeights &w, const Readout &readout) {
    if (static_cast<Eigen::Index>(readout.size()) != w.eta.size()) {
        throw DimensionError("predict: readout length differs from the weight vector");
    }
    double acc = 0;
    for (size_t k = 0; k < readout.size(); k++) {
        acc += w.eta[static_cast<Eigen::Index>(k)] * readout[k];
    }
    return acc;
}

std::vector<double> predict_all(const ReadoutWeights &w, const RealMatrix &R) {
    if (R.cols() != w.eta.size()) {
        throw DimensionError("predict_all: feature width differs from the weight vector");
    }
    RealVector p = R * w.eta;
    return std::vector<double>(p.data(), p.data() + p.size());
}

double mse_loss(const std::vector<double> &predictions, const std::vector<double> &targets) {
    if (predictions.size() != targets.size()) {
        throw DimensionError("mse_loss: length mismatch");
    }
    if (predictions.empty()) {
        throw std::invalid_argument("mse_loss: empty input");
    }
    double acc = 0;
    for (size_t i = 0; i < predictions.size(); i++) {
        double e = predictions[i] - targets[i];
        acc += e * e;
    }
    return acc / static_cast<double>(predictions.size());
}

std::vector<PauliString> all_pauli_strings(int n) {
    if (n < 1 || n > 6) {
        throw std::invalid_argument("all_pauli_strings: n must lie in [1, 6]");
    }
    const char kLetters[4] = {'I', 'X', 'Y', 'Z'};
    std::vector<PauliString> out;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (2 * n)); code++) {
        std::string str(static_cast<size_t>(n), 'I');
        for (int q = 0; q < n; q++) {
            str[q] = kLetters[(code >> (2 * q)) & 3];
        }
        out.push_back(PauliString::from_str(str));
    }
    return out;
}

std::vector<PauliString> local_pauli_features(int n) {
    std::vector<PauliString> out{PauliString::identity(n)};
    for (int q = 0; q < n; q++) {
        out.push_back(PauliString::single(n, q, 'Z'));
        out.push_back(PauliString::single(n, q, 'X'));
    }
    return out;
}

DelayTaskResult run_delay_task(const QrpConfig &cfg, const DelayTaskConfig &task, std::uint64_t seed) {
    if (task.delay < 0 || task.delay > task.washout || task.train_steps < 1 || task.test_steps < 1) {
        throw std::invalid_argument("run_delay_task: need 0 <= delay <= washout and positive window lengths");
    }
    int total = task.washout + task.train_steps + task.test_steps;
    CounterRng rng(SeedPath{seed, 0, "signal"});
    std::vector<double> s(static_cast<size_t>(total));
    for (auto &x : s) {
        x = rng.uniform();
    }
    std::vector<DensityMatrix> inputs;
    inputs.reserve(s.size());
    for (double x : s) {
        inputs.push_back(encode_exponential(x, cfg.reservoir.n_a));
    }
    std::vector<Readout> readouts =
        run_sequence(DensityMatrix::zero_state(cfg.reservoir.n_h), inputs, cfg, SeedPath{seed, 0, "reservoir"});
    std::vector<double> labels(s.size(), 0.0);
    for (int k = task.delay; k < total; k++) {
        labels[k] = s[k - task.delay];
    }
    int fit_end = task.washout + task.train_steps;
    LabeledRun train{{readouts.begin(), readouts.begin() + fit_end}, {labels.begin(), labels.begin() + fit_end}};
    TrainConfig tc{task.washout, task.lambda};
    ReadoutWeights w = fit_readout(build_feature_matrix({train}, tc), tc);

    std::vector<double> pred;
    std::vector<double> target;
    for (int k = fit_end; k < total; k++) {
        pred.push_back(predict(w, readouts[k]));
        target.push_back(labels[k]);
    }
    double m = static_cast<double>(target.size());
    double mean = 0;
    for (double y : target) {
        mean += y / m;
    }
    double var = 0;
    for (double y : target) {
        var += (y - mean) * (y - mean) / m;
    }
    DelayTaskResult r;
    r.test_mse = mse_loss(pred, target);
    double sq = 0;
    for (size_t i = 0; i < pred.size(); i++) {
        double e = (pred[i] - target[i]) * (pred[i] - target[i]) - r.test_mse;
        sq += e * e;
    }
    r.test_mse_se = pred.size() > 1 ? std::sqrt(sq / (m - 1) / m) : 0.0;
    r.baseline = var;
    r.test_points = static_cast<int>(target.size());
    return r;
}

}  // namespace qrp
