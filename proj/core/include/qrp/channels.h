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

#ifndef QRP_CHANNELS_H
#define QRP_CHANNELS_H

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "qrp/linalg.h"

namespace qrp {

/// Pauli channel scaling the Bloch components by (qX, qY, qZ).
class PauliNoise {
   public:
    /// Identity channel.
    PauliNoise() = default;
    /// Throws std::invalid_argument unless the induced Pauli probabilities are non-negative.
    PauliNoise(double qx, double qy, double qz);
    static PauliNoise depolarizing(double q);

    double qx() const {
        return q_[0];
    }
    double qy() const {
        return q_[1];
    }
    double qz() const {
        return q_[2];
    }
    const std::array<double, 3> &coefficients() const {
        return q_;
    }
    /// max(|qX|, |qY|, |qZ|).
    double q() const;
    /// (p_I, p_X, p_Y, p_Z).
    std::array<double, 4> probabilities() const;
    bool is_identity() const;

    bool operator==(const PauliNoise &) const = default;

   private:
    std::array<double, 3> q_{1.0, 1.0, 1.0};
};

/// Single-qubit channel in normal form: post o M_{D,t} o pre.
///
/// M maps (I + r.sigma)/2 to (I + (D*r + t).sigma)/2.
class SingleQubitChannel {
   public:
    /// Identity channel.
    SingleQubitChannel();
    /// Throws std::invalid_argument if the Choi matrix has an eigenvalue below -1e-9.
    SingleQubitChannel(std::array<double, 3> d, std::array<double, 3> t, std::optional<Matrix> pre = std::nullopt,
                       std::optional<Matrix> post = std::nullopt);

    static SingleQubitChannel from_pauli(const PauliNoise &noise);
    static SingleQubitChannel amplitude_damping(double gamma);

    const std::array<double, 3> &d() const {
        return d_;
    }
    const std::array<double, 3> &t() const {
        return t_;
    }
    const std::optional<Matrix> &pre_unitary() const {
        return pre_;
    }
    const std::optional<Matrix> &post_unitary() const {
        return post_;
    }

    /// 4x4 map on row-major vec(B) of a 2x2 operator B.
    const Eigen::Matrix4cd &superoperator() const {
        return super_;
    }
    /// Sum_{rc} |r><c| (x) N(|r><c|).
    Eigen::Matrix4cd choi() const;
    Matrix apply(const Matrix &op2) const;
    bool is_identity() const;

   private:
    std::array<double, 3> d_{1.0, 1.0, 1.0};
    std::array<double, 3> t_{0.0, 0.0, 0.0};
    std::optional<Matrix> pre_;
    std::optional<Matrix> post_;
    Eigen::Matrix4cd super_;
};

/// Applies a 4x4 single-qubit superoperator to each qubit in `targets`.
Matrix apply_local_superoperator(const Eigen::Matrix4cd &super, const Matrix &op, int n, std::span<const int> targets);

DensityMatrix apply_pauli_noise(const PauliNoise &noise, const DensityMatrix &rho, std::span<const int> targets);
DensityMatrix apply_pauli_noise_all(const PauliNoise &noise, const DensityMatrix &rho);
DensityMatrix apply_normal_form(const SingleQubitChannel &ch, const DensityMatrix &rho, std::span<const int> targets);
DensityMatrix apply_normal_form_all(const SingleQubitChannel &ch, const DensityMatrix &rho);

/// sqrt((|D|^2 + |t|^2) / 3).
double contraction_chi(const SingleQubitChannel &ch);

/// ln Tr[(sigma^{-1/4} rho sigma^{-1/4})^2] in nats.
///
/// Without `regularize`, a rho with weight outside supp(sigma) raises SupportError.
/// With it, sigma's eigenvalues are floored at 1e-12.
double sandwiched_renyi2(const DensityMatrix &rho, const DensityMatrix &sigma, bool regularize = false);

std::vector<int> all_qubits(int n);
std::vector<int> qubit_range(int first, int count);

}  // namespace qrp

#endif
