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

#ifndef QRP_ENCODING_H
#define QRP_ENCODING_H

#include "qrp/channels.h"
#include "qrp/linalg.h"

namespace qrp {

struct EncodingSpec {
    enum class Scheme {
        ExponentialProduct,
        LayeredNoisy,
    };
    Scheme scheme = Scheme::ExponentialProduct;
    int n_a = 1;
    int layers = 1;
    PauliNoise channel;

    static EncodingSpec exponential(int n_a);
    static EncodingSpec layered_noisy(int n_a, int layers, const PauliNoise &channel);
    void validate() const;
};

/// Tensor product over j = 1..n_a of exp(-i 3^{j-1} pi s Z / 2) H |0>.
DensityMatrix encode_exponential(double s, int n_a);

/// N o U_L(s) o N o ... o U_1(s) o N applied to |0...0>.
///
/// U_i(s) applies RY(3^{i-1} pi s) to every accessible qubit and N applies
/// `spec.channel` to every accessible qubit.
DensityMatrix encode_layered_noisy(double s, const EncodingSpec &spec);

/// Noiseless counterpart U_L(s) ... U_1(s)|0...0>.
DensityMatrix encode_layered_unitary(double s, int n_a, int layers);

/// Dispatches on spec.scheme.
DensityMatrix encode(double s, const EncodingSpec &spec);

/// RY(theta) = exp(-i theta Y / 2).
Matrix ry(double theta);

/// ||O|| sqrt(t) [2 ln2 q^{(L+1)/ln2} S2(rho0 || I/2^{n_a})]^{1/2} with S2(rho0||I) = n_a ln 2 for pure rho0.
double noisy_encoding_bound(int t, double q, int layers, int n_a, double obs_norm);

}  // namespace qrp

#endif
