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

#include "qrp/channels.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qrp {

PauliNoise::PauliNoise(double qx, double qy, double qz) : q_{qx, qy, qz} {
    for (double v : q_) {
        if (!std::isfinite(v) || v < -1.0 - 1e-12 || v > 1.0 + 1e-12) {
            throw std::invalid_argument("PauliNoise: coefficients must lie in [-1, 1]");
        }
    }
    for (double p : probabilities()) {
        if (p < -1e-12) {
            throw std::invalid_argument("PauliNoise: coefficients do not define a valid Pauli channel");
        }
    }
}

PauliNoise PauliNoise::depolarizing(double q) {
    return PauliNoise(q, q, q);
}

double PauliNoise::q() const {
    return std::max({std::abs(q_[0]), std::abs(q_[1]), std::abs(q_[2])});
}

std::array<double, 4> PauliNoise::probabilities() const {
    double x = q_[0];
    double y = q_[1];
    double z = q_[2];
    return {
        (1 + x + y + z) / 4,
        (1 + x - y - z) / 4,
        (1 - x + y - z) / 4,
        (1 - x - y + z) / 4,
    };
}

bool PauliNoise::is_identity() const {
    return q_[0] == 1.0 && q_[1] == 1.0 && q_[2] == 1.0;
}

namespace {

Matrix bloch_map(const std::array<double, 3> &d, const std::array<double, 3> &t, const Matrix &b) {
    static const Matrix kP[3] = {pauli::X(), pauli::Y(), pauli::Z()};
    cplx bi = b.trace();
    Matrix out = bi * pauli::I();
    for (int k = 0; k < 3; k++) {
        cplx bp = (b * kP[k]).trace();
        out += (bi * t[k] + d[k] * bp) * kP[k];
    }
    return out * 0.5;
}

Eigen::Matrix4cd build_superoperator(const std::array<double, 3> &d, const std::array<double, 3> &t,
                                     const std::optional<Matrix> &pre, const std::optional<Matrix> &post) {
    Eigen::Matrix4cd s;
    for (int r = 0; r < 2; r++) {
        for (int c = 0; c < 2; c++) {
            Matrix e = Matrix::Zero(2, 2);
            e(r, c) = 1.0;
            if (pre) {
                e = (*pre) * e * pre->adjoint();
            }
            Matrix out = bloch_map(d, t, e);
            if (post) {
                out = (*post) * out * post->adjoint();
            }
            for (int r2 = 0; r2 < 2; r2++) {
                for (int c2 = 0; c2 < 2; c2++) {
                    s(r2 * 2 + c2, r * 2 + c) = out(r2, c2);
                }
            }
        }
    }
    return s;
}

}  // namespace

SingleQubitChannel::SingleQubitChannel() : super_(Eigen::Matrix4cd::Identity()) {
}

SingleQubitChannel::SingleQubitChannel(std::array<double, 3> d, std::array<double, 3> t, std::optional<Matrix> pre,
                                       std::optional<Matrix> post)
    : d_(d), t_(t), pre_(std::move(pre)), post_(std::move(post)) {
    for (const auto *u : {&pre_, &post_}) {
        if (u->has_value() && ((*u)->rows() != 2 || !is_unitary(**u))) {
            throw std::invalid_argument("SingleQubitChannel: pre/post must be 2x2 unitaries");
        }
    }
    super_ = build_superoperator(d_, t_, pre_, post_);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(choi(), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kEigenTol) {
        throw std::invalid_argument("SingleQubitChannel: parameters violate complete positivity");
    }
}

SingleQubitChannel SingleQubitChannel::from_pauli(const PauliNoise &noise) {
    return SingleQubitChannel(noise.coefficients(), {0.0, 0.0, 0.0});
}

SingleQubitChannel SingleQubitChannel::amplitude_damping(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("amplitude_damping: gamma must lie in [0, 1]");
    }
    double s = std::sqrt(1.0 - gamma);
    return SingleQubitChannel({s, s, 1.0 - gamma}, {0.0, 0.0, gamma});
}

Eigen::Matrix4cd SingleQubitChannel::choi() const {
    Eigen::Matrix4cd j = Eigen::Matrix4cd::Zero();
    for (int r = 0; r < 2; r++) {
        for (int c = 0; c < 2; c++) {
            for (int r2 = 0; r2 < 2; r2++) {
                for (int c2 = 0; c2 < 2; c2++) {
                    j(r * 2 + r2, c * 2 + c2) = super_(r2 * 2 + c2, r * 2 + c);
                }
            }
        }
    }
    return j;
}

Matrix SingleQubitChannel::apply(const Matrix &op2) const {
    if (op2.rows() != 2 || op2.cols() != 2) {
        throw DimensionError("SingleQubitChannel::apply expects a 2x2 operator");
    }
    Eigen::Vector4cd v(op2(0, 0), op2(0, 1), op2(1, 0), op2(1, 1));
    Eigen::Vector4cd w = super_ * v;
    Matrix out(2, 2);
    out << w[0], w[1], w[2], w[3];
    return out;
}

bool SingleQubitChannel::is_identity() const {
    return (super_ - Eigen::Matrix4cd::Identity()).norm() == 0.0;
}

Matrix apply_local_superoperator(const Eigen::Matrix4cd &super, const Matrix &op, int n, std::span<const int> targets) {
    if (op.rows() != op.cols() || qubits_for_dim(op.rows()) != n) {
        throw DimensionError("channel: operator does not match register size");
    }
    Matrix out = op;
    Eigen::Index d = out.rows();
    for (int q : targets) {
        if (q < 0 || q >= n) {
            throw std::out_of_range("channel: target qubit out of range");
        }
        Eigen::Index m = Eigen::Index{1} << (n - 1 - q);
        for (Eigen::Index j = 0; j < d; j++) {
            if (j & m) {
                continue;
            }
            for (Eigen::Index i = 0; i < d; i++) {
                if (i & m) {
                    continue;
                }
                Eigen::Vector4cd v(out(i, j), out(i, j | m), out(i | m, j), out(i | m, j | m));
                Eigen::Vector4cd w = super * v;
                out(i, j) = w[0];
                out(i, j | m) = w[1];
                out(i | m, j) = w[2];
                out(i | m, j | m) = w[3];
            }
        }
    }
    return out;
}

std::vector<int> all_qubits(int n) {
    return qubit_range(0, n);
}

std::vector<int> qubit_range(int first, int count) {
    std::vector<int> v(static_cast<size_t>(count));
    std::iota(v.begin(), v.end(), first);
    return v;
}

DensityMatrix apply_pauli_noise(const PauliNoise &noise, const DensityMatrix &rho, std::span<const int> targets) {
    return apply_normal_form(SingleQubitChannel::from_pauli(noise), rho, targets);
}

DensityMatrix apply_pauli_noise_all(const PauliNoise &noise, const DensityMatrix &rho) {
    return apply_pauli_noise(noise, rho, all_qubits(rho.qubit_count()));
}

DensityMatrix apply_normal_form(const SingleQubitChannel &ch, const DensityMatrix &rho, std::span<const int> targets) {
    return DensityMatrix::unchecked(apply_local_superoperator(ch.superoperator(), rho.matrix(), rho.qubit_count(), targets));
}

DensityMatrix apply_normal_form_all(const SingleQubitChannel &ch, const DensityMatrix &rho) {
    return apply_normal_form(ch, rho, all_qubits(rho.qubit_count()));
}

double contraction_chi(const SingleQubitChannel &ch) {
    double s = 0;
    for (int k = 0; k < 3; k++) {
        s += ch.d()[k] * ch.d()[k] + ch.t()[k] * ch.t()[k];
    }
    return std::sqrt(s / 3.0);
}

double sandwiched_renyi2(const DensityMatrix &rho, const DensityMatrix &sigma, bool regularize) {
    if (rho.dim() != sigma.dim()) {
        throw DimensionError("sandwiched_renyi2: dimension mismatch");
    }
    constexpr double kFloor = 1e-12;
    Eigen::SelfAdjointEigenSolver<Matrix> es(sigma.matrix());
    const Matrix &v = es.eigenvectors();
    RealVector lam = es.eigenvalues();
    Eigen::Index d = lam.size();
    RealVector inv_quarter(d);
    std::vector<Eigen::Index> kernel;
    for (Eigen::Index k = 0; k < d; k++) {
        if (lam[k] < kFloor) {
            if (regularize) {
                lam[k] = kFloor;
            } else {
                kernel.push_back(k);
                inv_quarter[k] = 0.0;
                continue;
            }
        }
        inv_quarter[k] = std::pow(lam[k], -0.25);
    }
    Matrix rho_e = v.adjoint() * rho.matrix() * v;
    for (Eigen::Index k : kernel) {
        if (std::abs(rho_e(k, k)) > 1e-10) {
            throw SupportError("sandwiched_renyi2: rho is not supported on supp(sigma)");
        }
    }
    Matrix a = inv_quarter.asDiagonal() * rho_e * inv_quarter.asDiagonal();
    double tr = a.squaredNorm();
    return std::max(0.0, std::log(tr));
}

}  // namespace qrp
