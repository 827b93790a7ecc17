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

#ifndef QRP_UNROLL_H
#define QRP_UNROLL_H

#include <cstdint>
#include <vector>

#include "qrp/linalg.h"

namespace qrp {

/// Hilbert-Schmidt orthonormal basis of the hidden operator space.
struct OperatorBasis {
    std::vector<Matrix> elements;

    /// |i><j| for i, j < 2^n_h.
    static OperatorBasis singleton(int n_h);
    /// P / sqrt(2^n_h) over all Pauli strings.
    static OperatorBasis normalized_pauli(int n_h);

    /// Max |Tr[X_i^dagger X_j] - delta_ij|.
    double orthonormality_error() const;
};

constexpr int kMaxUnrollSteps = 3;

/// <O>_t as a sum over basis tuples of traces on t copies of the (a (x) h) register.
///
/// Copy k carries the state rho_a(k) (x) X_{k-1} (with X_0 = rho_h(0)) and the
/// observable I_a (x) X_k^dagger, except the last copy which carries O.
/// Restricted to n_a = n_h = 1 and t <= 3.
double qrp_output_unrolled(const UnitaryMatrix &u, const DensityMatrix &rho_h0, const std::vector<DensityMatrix> &inputs,
                           const PauliString &obs, int t, const OperatorBasis &basis);
double qrp_output_unrolled(const UnitaryMatrix &u, const DensityMatrix &rho_h0, const std::vector<DensityMatrix> &inputs,
                           const PauliString &obs, int t);

/// <O>_t from the step-by-step recursion.
double qrp_output_recursive(const UnitaryMatrix &u, const DensityMatrix &rho_h0, const std::vector<DensityMatrix> &inputs,
                            const PauliString &obs, int t);

/// Max |unrolled - recursive| over random Haar U, Haar-pure states and non-identity Pauli O.
double compare_direct_vs_unrolled(int trials, int t, std::uint64_t seed);

}  // namespace qrp

#endif
