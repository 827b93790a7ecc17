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

#ifndef QRP_LINALG_H
#define QRP_LINALG_H

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace qrp {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Largest register handled by the dense simulator.
constexpr int kMaxQubits = 12;

constexpr double kHermitianTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kEigenTol = 1e-9;
constexpr double kUnitaryTol = 1e-10;

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SupportError : std::domain_error {
    using std::domain_error::domain_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Number of qubits of a power-of-two dimension, or -1.
int qubits_for_dim(Eigen::Index dim);

/// Positive unit-trace Hermitian matrix over a qubit register.
///
/// Qubit 0 is the most significant tensor factor.
class DensityMatrix {
   public:
    DensityMatrix();

    /// Validates Hermiticity, trace and positivity; throws std::invalid_argument.
    static DensityMatrix from_matrix(Matrix m);
    /// Skips validation outside debug builds.
    static DensityMatrix unchecked(Matrix m);

    static DensityMatrix basis_state(int n, std::uint64_t index);
    static DensityMatrix zero_state(int n);
    static DensityMatrix maximally_mixed(int n);
    static DensityMatrix from_pure(const Vector &psi);

    int qubit_count() const {
        return n_;
    }
    Eigen::Index dim() const {
        return m_.rows();
    }
    const Matrix &matrix() const {
        return m_;
    }
    cplx operator()(Eigen::Index r, Eigen::Index c) const {
        return m_(r, c);
    }
    double trace() const;
    double purity() const;

   private:
    DensityMatrix(Matrix m, int n);
    Matrix m_;
    int n_ = 0;
};

/// Square matrix with U^dagger U = I.
class UnitaryMatrix {
   public:
    UnitaryMatrix();

    static UnitaryMatrix from_matrix(Matrix m);
    static UnitaryMatrix unchecked(Matrix m);
    static UnitaryMatrix identity(int n);

    int qubit_count() const {
        return n_;
    }
    Eigen::Index dim() const {
        return m_.rows();
    }
    const Matrix &matrix() const {
        return m_;
    }
    UnitaryMatrix adjoint() const;
    UnitaryMatrix operator*(const UnitaryMatrix &other) const;

   private:
    explicit UnitaryMatrix(Matrix m, int n);
    Matrix m_;
    int n_ = 0;
};

/// Tensor product of single-qubit Paulis; letter 0 acts on qubit 0.
class PauliString {
   public:
    PauliString() = default;
    /// Accepts letters from "IXYZ" (or '_' for I).
    static PauliString from_str(std::string_view letters);
    /// Single non-identity letter on `qubit` of an n-qubit register.
    static PauliString single(int n, int qubit, char letter);
    static PauliString identity(int n);

    int qubit_count() const {
        return static_cast<int>(letters_.size());
    }
    const std::string &str() const {
        return letters_;
    }
    char operator[](int q) const {
        return letters_[q];
    }
    /// Bit b of the index for qubit q is (n-1-q).
    std::uint64_t x_mask() const;
    std::uint64_t z_mask() const;
    int y_count() const;
    bool is_identity() const;
    Matrix matrix() const;

    bool operator==(const PauliString &other) const = default;

   private:
    std::string letters_;
};

namespace pauli {
Matrix I();
Matrix X();
Matrix Y();
Matrix Z();
Matrix H();
}  // namespace pauli

Matrix kron(const Matrix &a, const Matrix &b);
DensityMatrix kron(const DensityMatrix &a, const DensityMatrix &b);
UnitaryMatrix kron(const UnitaryMatrix &a, const UnitaryMatrix &b);

/// Reduced operator on the sorted set `keep`; throws std::out_of_range on bad indices.
Matrix partial_trace(const Matrix &op, int n, std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const int> keep);

/// Trace over the leading `lead_qubits` factors.
Matrix trace_leading(const Matrix &op, int lead_qubits);
DensityMatrix trace_leading(const DensityMatrix &rho, int lead_qubits);

double expectation(const PauliString &obs, const DensityMatrix &rho);
double expectation(const Matrix &obs, const DensityMatrix &rho);
/// Complex trace Tr[P op] for arbitrary (possibly non-Hermitian) op.
cplx pauli_trace(const PauliString &obs, const Matrix &op);

/// Sum of absolute eigenvalues of rho - sigma.
double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma);

/// exp(-i angle h) via spectral decomposition; throws std::invalid_argument if h is not Hermitian.
UnitaryMatrix herm_exp(const Matrix &h, double angle);

/// U rho U^dagger.
DensityMatrix conjugate(const UnitaryMatrix &u, const DensityMatrix &rho);
Matrix conjugate(const Matrix &u, const Matrix &op);

/// I_{2^first} (x) op (x) I on an n-qubit register; op acts on k consecutive qubits.
Matrix embed(const Matrix &op, int first, int n);

/// Largest absolute eigenvalue of a Hermitian matrix.
double operator_norm(const Matrix &herm);
double operator_norm(const PauliString &obs);

bool is_hermitian(const Matrix &m, double tol = kHermitianTol);
bool is_unitary(const Matrix &m, double tol = kUnitaryTol);
/// Empty string if m is a valid density matrix, otherwise the reason.
std::string density_violation(const Matrix &m);

}  // namespace qrp

#endif
