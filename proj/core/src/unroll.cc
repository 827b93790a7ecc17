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

#include "qrp/unroll.h"

#include <algorithm>
#include <cmath>

#include "qrp/engine.h"
#include "qrp/ensembles.h"
#include "qrp/rng.h"

namespace qrp {

OperatorBasis OperatorBasis::singleton(int n_h) {
    Eigen::Index d = Eigen::Index{1} << n_h;
    OperatorBasis b;
    for (Eigen::Index i = 0; i < d; i++) {
        for (Eigen::Index j = 0; j < d; j++) {
            Matrix e = Matrix::Zero(d, d);
            e(i, j) = 1.0;
            b.elements.push_back(std::move(e));
        }
    }
    return b;
}

OperatorBasis OperatorBasis::normalized_pauli(int n_h) {
    const char kLetters[4] = {'I', 'X', 'Y', 'Z'};
    std::uint64_t count = std::uint64_t{1} << (2 * n_h);
    double scale = 1.0 / std::sqrt(std::ldexp(1.0, n_h));
    OperatorBasis b;
    for (std::uint64_t code = 0; code < count; code++) {
        std::string s(static_cast<size_t>(n_h), 'I');
        for (int q = 0; q < n_h; q++) {
            s[q] = kLetters[(code >> (2 * q)) & 3];
        }
        b.elements.push_back(PauliString::from_str(s).matrix() * scale);
    }
    return b;
}

double OperatorBasis::orthonormality_error() const {
    double err = 0;
    for (size_t i = 0; i < elements.size(); i++) {
        for (size_t j = 0; j < elements.size(); j++) {
            cplx ip = (elements[i].adjoint() * elements[j]).trace();
            err = std::max(err, std::abs(ip - cplx(i == j ? 1.0 : 0.0)));
        }
    }
    return err;
}

namespace {

void check_unroll_args(const UnitaryMatrix &u, const DensityMatrix &rho_h0, const std::vector<DensityMatrix> &inputs,
                       const PauliString &obs, int t) {
    if (t < 1 || t > kMaxUnrollSteps) {
        throw std::invalid_argument("qrp_output_unrolled: t must lie in [1, 3]");
    }
    if (u.qubit_count() != 2 || rho_h0.qubit_count() != 1 || obs.qubit_count() != 2) {
        throw std::invalid_argument("qrp_output_unrolled: only n_a = n_h = 1 is supported");
    }
    if (static_cast<int>(inputs.size()) < t) {
        throw std::invalid_argument("qrp_output_unrolled: need one input per step");
    }
    for (const auto &in : inputs) {
        if (in.qubit_count() != 1) {
            throw DimensionError("qrp_output_unrolled: inputs must be single-qubit states");
        }
    }
}

}  // namespace

double qrp_output_unrolled(const UnitaryMatrix &u, const DensityMatrix &rho_h0, const std::vector<DensityMatrix> &inputs,
                           const PauliString &obs, int t, const OperatorBasis &basis) {
    check_unroll_args(u, rho_h0, inputs, obs, t);
    const Eigen::Index nb = static_cast<Eigen::Index>(basis.elements.size());
    Matrix u_ext = u.matrix();
    for (int k = 1; k < t; k++) {
        u_ext = kron(u_ext, u.matrix());
    }
    Matrix i_a = Matrix::Identity(2, 2);
    Matrix o = obs.matrix();

    // Odometer over the t-1 basis indices.
    std::vector<Eigen::Index> idx(static_cast<size_t>(t - 1), 0);
    cplx total = 0;
    while (true) {
        Matrix state = kron(inputs[0].matrix(), rho_h0.matrix());
        Matrix observable(1, 1);
        observable(0, 0) = 1.0;
        for (int k = 1; k < t; k++) {
            const Matrix &x = basis.elements[idx[k - 1]];
            observable = kron(observable, kron(i_a, x.adjoint()));
            state = kron(state, kron(inputs[k].matrix(), x));
        }
        observable = kron(observable, o);
        Matrix evolved = u_ext * state * u_ext.adjoint();
        total += (observable.transpose().cwiseProduct(evolved)).sum();

        int pos = 0;
        while (pos < t - 1) {
            if (++idx[pos] < nb) {
                break;
            }
            idx[pos] = 0;
            pos++;
        }
        if (pos == t - 1) {
            break;
        }
    }
    if (std::abs(total.imag()) > 1e-9) {
        throw NumericalError("qrp_output_unrolled: imaginary part exceeds 1e-9");
    }
    return total.real();
}

double qrp_output_unrolled(const UnitaryMatrix &u, const DensityMatrix &rho_h0, const std::vector<DensityMatrix> &inputs,
                           const PauliString &obs, int t) {
    return qrp_output_unrolled(u, rho_h0, inputs, obs, t, OperatorBasis::singleton(1));
}

double qrp_output_recursive(const UnitaryMatrix &u, const DensityMatrix &rho_h0, const std::vector<DensityMatrix> &inputs,
                            const PauliString &obs, int t) {
    check_unroll_args(u, rho_h0, inputs, obs, t);
    QrpConfig cfg;
    cfg.reservoir.n_a = 1;
    cfg.reservoir.n_h = 1;
    ReservoirChannel channel = ReservoirChannel::from_unitary(u);
    QrpState s = qrp_init(rho_h0, 1);
    for (int k = 0; k < t; k++) {
        s = qrp_step(s, inputs[k], cfg, channel);
    }
    return expectation(obs, *s.full_last);
}

double compare_direct_vs_unrolled(int trials, int t, std::uint64_t seed) {
    if (trials < 1) {
        throw std::invalid_argument("compare_direct_vs_unrolled: trials must be positive");
    }
    const char kLetters[4] = {'I', 'X', 'Y', 'Z'};
    double worst = 0;
    for (int i = 0; i < trials; i++) {
        CounterRng rng(SeedPath{seed, static_cast<std::uint64_t>(i), "unroll"});
        UnitaryMatrix u = sample_haar_unitary(4, rng);
        DensityMatrix h0 = sample_haar_pure_state(1, rng);
        std::vector<DensityMatrix> inputs;
        for (int k = 0; k < t; k++) {
            inputs.push_back(sample_haar_pure_state(1, rng));
        }
        std::uint64_t code = 1 + rng.below(15);
        std::string letters{kLetters[code >> 2], kLetters[code & 3]};
        PauliString obs = PauliString::from_str(letters);
        double a = qrp_output_unrolled(u, h0, inputs, obs, t);
        double b = qrp_output_recursive(u, h0, inputs, obs, t);
        worst = std::max(worst, std::abs(a - b));
    }
    return worst;
}

}  // namespace qrp
