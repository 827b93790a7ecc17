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

#ifndef QRP_LAB_CONFIG_H
#define QRP_LAB_CONFIG_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrp_lab {

/// Unreadable or invalid configuration (exit status 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Format {
    Csv,
    Json,
};

/// Flat experiment configuration. Every list-valued key also accepts a scalar.
struct ExperimentConfig {
    std::string experiment;

    std::vector<int> n_a{1};
    std::vector<int> n_h{2};
    int t_max = 10;
    int tau = 1;
    int reservoir_samples = 200;
    int inner_samples = 32;
    /// Instance pairs (erasure) or instances (encoding-noise).
    int pairs = 50;

    /// "haar", "layered" or "ising".
    std::string reservoir = "haar";
    /// Empty means 2 for variance-style runs, 2n for erasure-nonunital and {1, 2, 4} for encoding-noise.
    std::vector<int> layers;
    double J = -1.0;
    double Bx = 0.7;
    double Bz = 1.5;
    std::vector<double> dt{1.0};

    /// Depolarizing strengths; overridden per-axis by qx/qy/qz when all three are given.
    std::vector<double> q{0.9};
    std::optional<double> qx;
    std::optional<double> qy;
    std::optional<double> qz;
    std::vector<double> gamma{0.1};
    /// Pauli noise applied to every qubit after each step (variance / memory experiments).
    std::optional<double> inter_step_q;

    /// Observable as a Pauli string; empty means Z on qubit 0.
    std::string observable;
    /// "haar" or "classical".
    std::string inputs = "haar";
    /// "zero" or "haar".
    std::string hidden = "zero";
    bool include_pairwise = false;

    std::optional<int> shots;
    std::vector<int> hypothesis_n{1};
    double eps = 0.5;
    double p0 = 0.5;
    long long trials = 100000;

    int washout = 20;
    int train_steps = 600;
    int test_steps = 300;
    int delay = 1;
    std::optional<double> lambda;
    /// "all" (every Pauli string) or "local" (identity plus single-qubit X and Z).
    std::string features = "all";

    std::uint64_t master_seed = 1;
    std::string out;
    Format format = Format::Csv;
    std::optional<int> threads;

    /// Throws ConfigError.
    void validate() const;
};

/// Parses a JSON object with flat keys. Unknown keys are rejected. Throws ConfigError.
ExperimentConfig parse_config(const std::string &text);
ExperimentConfig load_config(const std::string &path);

Format parse_format(const std::string &s);

const std::vector<std::string> &experiment_names();

}  // namespace qrp_lab

#endif
