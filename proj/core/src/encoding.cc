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

#include "qrp/encoding.h"

#include <cmath>
#include <numbers>

namespace qrp {

namespace {

void check_input(double s) {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw std::domain_error("encoding: input must lie in [0, 1]");
    }
}

void check_register(int n_a) {
    if (n_a < 1 || n_a > kMaxQubits) {
        throw std::invalid_argument("encoding: n_a out of range");
    }
}

Matrix ry_all(double theta, int n_a) {
    Matrix r = ry(theta);
    Matrix u = r;
    for (int j = 1; j < n_a; j++) {
        u = kron(u, r);
    }
    return u;
}

}  // namespace

EncodingSpec EncodingSpec::exponential(int n_a) {
    EncodingSpec e;
    e.scheme = Scheme::ExponentialProduct;
    e.n_a = n_a;
    return e;
}

EncodingSpec EncodingSpec::layered_noisy(int n_a, int layers, const PauliNoise &channel) {
    EncodingSpec e;
    e.scheme = Scheme::LayeredNoisy;
    e.n_a = n_a;
    e.layers = layers;
    e.channel = channel;
    return e;
}

void EncodingSpec::validate() const {
    check_register(n_a);
    if (scheme == Scheme::LayeredNoisy && layers < 1) {
        throw std::invalid_argument("EncodingSpec: layered encoding needs L >= 1");
    }
}

Matrix ry(double theta) {
    Matrix m(2, 2);
    double c = std::cos(theta / 2);
    double s = std::sin(theta / 2);
    m << c, -s, s, c;
    return m;
}

DensityMatrix encode_exponential(double s, int n_a) {
    check_input(s);
    check_register(n_a);
    Vector psi = Vector::Ones(1);
    double freq = 1.0;
    const double r = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < n_a; j++) {
        double theta = freq * std::numbers::pi * s;
        Vector q(2);
        q << std::polar(r, -theta / 2), std::polar(r, theta / 2);
        Vector next(psi.size() * 2);
        for (Eigen::Index k = 0; k < psi.size(); k++) {
            next[2 * k] = psi[k] * q[0];
            next[2 * k + 1] = psi[k] * q[1];
        }
        psi = std::move(next);
        freq *= 3.0;
    }
    return DensityMatrix::unchecked(psi * psi.adjoint());
}

DensityMatrix encode_layered_noisy(double s, const EncodingSpec &spec) {
    check_input(s);
    spec.validate();
    int n = spec.n_a;
    DensityMatrix rho = apply_pauli_noise_all(spec.channel, DensityMatrix::zero_state(n));
    double freq = 1.0;
    for (int i = 0; i < spec.layers; i++) {
        rho = DensityMatrix::unchecked(conjugate(ry_all(freq * std::numbers::pi * s, n), rho.matrix()));
        rho = apply_pauli_noise_all(spec.channel, rho);
        freq *= 3.0;
    }
    return rho;
}

DensityMatrix encode_layered_unitary(double s, int n_a, int layers) {
    check_input(s);
    check_register(n_a);
    DensityMatrix rho = DensityMatrix::zero_state(n_a);
    double freq = 1.0;
    for (int i = 0; i < layers; i++) {
        rho = DensityMatrix::unchecked(conjugate(ry_all(freq * std::numbers::pi * s, n_a), rho.matrix()));
        freq *= 3.0;
    }
    return rho;
}

DensityMatrix encode(double s, const EncodingSpec &spec) {
    if (spec.scheme == EncodingSpec::Scheme::ExponentialProduct) {
        return encode_exponential(s, spec.n_a);
    }
    return encode_layered_noisy(s, spec);
}

double noisy_encoding_bound(int t, double q, int layers, int n_a, double obs_norm) {
    double b = 1.0 / std::numbers::ln2;
    double s0 = n_a * std::numbers::ln2;
    return obs_norm * std::sqrt(static_cast<double>(t)) *
           std::sqrt(2.0 * std::numbers::ln2 * std::pow(q, (layers + 1) * b) * s0);
}

}  // namespace qrp
