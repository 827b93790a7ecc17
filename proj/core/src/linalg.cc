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

#include "qrp/linalg.h"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

namespace qrp {

int qubits_for_dim(Eigen::Index dim) {
    if (dim <= 0) {
        return -1;
    }
    auto u = static_cast<std::uint64_t>(dim);
    if (!std::has_single_bit(u)) {
        return -1;
    }
    return std::countr_zero(u);
}

bool is_hermitian(const Matrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Matrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).norm() <= tol;
}

std::string density_violation(const Matrix &m) {
    if (m.rows() != m.cols()) {
        return "matrix is not square";
    }
    if (qubits_for_dim(m.rows()) < 0) {
        return "dimension is not a power of two";
    }
    if (!is_hermitian(m)) {
        return "matrix is not Hermitian";
    }
    if (std::abs(m.trace() - cplx(1.0)) > kTraceTol) {
        return "trace differs from 1";
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kEigenTol) {
        return "matrix has a negative eigenvalue";
    }
    return {};
}

DensityMatrix::DensityMatrix() : m_(Matrix::Ones(1, 1)), n_(0) {
}

DensityMatrix::DensityMatrix(Matrix m, int n) : m_(std::move(m)), n_(n) {
}

DensityMatrix DensityMatrix::from_matrix(Matrix m) {
    std::string why = density_violation(m);
    if (!why.empty()) {
        throw std::invalid_argument("invalid density matrix: " + why);
    }
    int n = qubits_for_dim(m.rows());
    return DensityMatrix(std::move(m), n);
}

DensityMatrix DensityMatrix::unchecked(Matrix m) {
    assert(density_violation(m).empty());
    int n = qubits_for_dim(m.rows());
    if (n < 0 || m.rows() != m.cols()) {
        throw DimensionError("density matrix dimension must be a power of two");
    }
    return DensityMatrix(std::move(m), n);
}

DensityMatrix DensityMatrix::basis_state(int n, std::uint64_t index) {
    if (n < 0 || n > 2 * kMaxQubits) {
        throw DimensionError("qubit count out of range");
    }
    Eigen::Index d = Eigen::Index{1} << n;
    if (index >= static_cast<std::uint64_t>(d)) {
        throw std::out_of_range("basis index out of range");
    }
    Matrix m = Matrix::Zero(d, d);
    m(index, index) = 1.0;
    return DensityMatrix(std::move(m), n);
}

DensityMatrix DensityMatrix::zero_state(int n) {
    return basis_state(n, 0);
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
    if (n < 0 || n > 2 * kMaxQubits) {
        throw DimensionError("qubit count out of range");
    }
    Eigen::Index d = Eigen::Index{1} << n;
    return DensityMatrix(Matrix::Identity(d, d) / static_cast<double>(d), n);
}

DensityMatrix DensityMatrix::from_pure(const Vector &psi) {
    int n = qubits_for_dim(psi.size());
    if (n < 0) {
        throw DimensionError("state vector dimension must be a power of two");
    }
    double norm = psi.norm();
    if (std::abs(norm - 1.0) > 1e-10) {
        throw std::invalid_argument("state vector is not normalized");
    }
    return DensityMatrix(psi * psi.adjoint(), n);
}

double DensityMatrix::trace() const {
    return m_.trace().real();
}

double DensityMatrix::purity() const {
    // Tr[rho^2] = sum |rho_ij|^2 for Hermitian rho.
    return m_.squaredNorm();
}

UnitaryMatrix::UnitaryMatrix() : m_(Matrix::Ones(1, 1)), n_(0) {
}

UnitaryMatrix::UnitaryMatrix(Matrix m, int n) : m_(std::move(m)), n_(n) {
}

UnitaryMatrix UnitaryMatrix::from_matrix(Matrix m) {
    int n = qubits_for_dim(m.rows());
    if (n < 0 || m.rows() != m.cols()) {
        throw DimensionError("unitary dimension must be a power of two");
    }
    if (!is_unitary(m)) {
        throw std::invalid_argument("matrix is not unitary");
    }
    return UnitaryMatrix(std::move(m), n);
}

UnitaryMatrix UnitaryMatrix::unchecked(Matrix m) {
    int n = qubits_for_dim(m.rows());
    if (n < 0 || m.rows() != m.cols()) {
        throw DimensionError("unitary dimension must be a power of two");
    }
    assert(is_unitary(m));
    return UnitaryMatrix(std::move(m), n);
}

UnitaryMatrix UnitaryMatrix::identity(int n) {
    Eigen::Index d = Eigen::Index{1} << n;
    return UnitaryMatrix(Matrix::Identity(d, d), n);
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
    return UnitaryMatrix(m_.adjoint(), n_);
}

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix &other) const {
    if (other.dim() != dim()) {
        throw DimensionError("unitary product dimension mismatch");
    }
    return UnitaryMatrix(m_ * other.m_, n_);
}

PauliString PauliString::from_str(std::string_view letters) {
    if (letters.empty() || letters.size() > 63) {
        throw std::invalid_argument("Pauli string length must be in [1, 63]");
    }
    PauliString p;
    p.letters_.reserve(letters.size());
    for (char c : letters) {
        switch (c) {
            case 'I':
            case '_':
                p.letters_.push_back('I');
                break;
            case 'X':
            case 'Y':
            case 'Z':
                p.letters_.push_back(c);
                break;
            default:
                throw std::invalid_argument(std::string("invalid Pauli letter '") + c + "'");
        }
    }
    return p;
}

PauliString PauliString::single(int n, int qubit, char letter) {
    if (qubit < 0 || qubit >= n) {
        throw std::out_of_range("Pauli target qubit out of range");
    }
    std::string s(static_cast<size_t>(n), 'I');
    s[qubit] = letter;
    return from_str(s);
}

PauliString PauliString::identity(int n) {
    return from_str(std::string(static_cast<size_t>(n), 'I'));
}

std::uint64_t PauliString::x_mask() const {
    std::uint64_t mask = 0;
    int n = qubit_count();
    for (int q = 0; q < n; q++) {
        if (letters_[q] == 'X' || letters_[q] == 'Y') {
            mask |= std::uint64_t{1} << (n - 1 - q);
        }
    }
    return mask;
}

std::uint64_t PauliString::z_mask() const {
    std::uint64_t mask = 0;
    int n = qubit_count();
    for (int q = 0; q < n; q++) {
        if (letters_[q] == 'Z' || letters_[q] == 'Y') {
            mask |= std::uint64_t{1} << (n - 1 - q);
        }
    }
    return mask;
}

int PauliString::y_count() const {
    return static_cast<int>(std::count(letters_.begin(), letters_.end(), 'Y'));
}

bool PauliString::is_identity() const {
    return std::all_of(letters_.begin(), letters_.end(), [](char c) {
        return c == 'I';
    });
}

Matrix PauliString::matrix() const {
    Matrix m = Matrix::Ones(1, 1);
    for (char c : letters_) {
        switch (c) {
            case 'X':
                m = kron(m, pauli::X());
                break;
            case 'Y':
                m = kron(m, pauli::Y());
                break;
            case 'Z':
                m = kron(m, pauli::Z());
                break;
            default:
                m = kron(m, pauli::I());
        }
    }
    return m;
}

namespace pauli {
Matrix I() {
    return Matrix::Identity(2, 2);
}
Matrix X() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
Matrix Y() {
    Matrix m(2, 2);
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}
Matrix Z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}
Matrix H() {
    Matrix m(2, 2);
    double s = 1.0 / std::sqrt(2.0);
    m << s, s, s, -s;
    return m;
}
}  // namespace pauli

Matrix kron(const Matrix &a, const Matrix &b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

DensityMatrix kron(const DensityMatrix &a, const DensityMatrix &b) {
    return DensityMatrix::unchecked(kron(a.matrix(), b.matrix()));
}

UnitaryMatrix kron(const UnitaryMatrix &a, const UnitaryMatrix &b) {
    return UnitaryMatrix::unchecked(kron(a.matrix(), b.matrix()));
}

namespace {

// Scatters the bits of `value` into the index positions listed in `bits` (LSB first).
std::uint64_t deposit(std::uint64_t value, const std::vector<int> &bits) {
    std::uint64_t out = 0;
    for (size_t k = 0; k < bits.size(); k++) {
        if ((value >> k) & 1) {
            out |= std::uint64_t{1} << bits[k];
        }
    }
    return out;
}

}  // namespace

Matrix partial_trace(const Matrix &op, int n, std::span<const int> keep) {
    if (op.rows() != op.cols() || qubits_for_dim(op.rows()) != n) {
        throw DimensionError("partial_trace: operator does not match register size");
    }
    std::vector<bool> kept(static_cast<size_t>(n), false);
    for (int q : keep) {
        if (q < 0 || q >= n) {
            throw std::out_of_range("partial_trace: qubit index out of range");
        }
        if (kept[q]) {
            throw std::invalid_argument("partial_trace: duplicate qubit index");
        }
        kept[q] = true;
    }
    // Index bit positions, least significant first, for kept and traced qubits.
    std::vector<int> keep_bits;
    std::vector<int> trace_bits;
    for (int q = n - 1; q >= 0; q--) {
        (kept[q] ? keep_bits : trace_bits).push_back(n - 1 - q);
    }
    std::uint64_t dk = std::uint64_t{1} << keep_bits.size();
    std::uint64_t dt = std::uint64_t{1} << trace_bits.size();
    std::vector<std::uint64_t> keep_off(dk);
    std::vector<std::uint64_t> trace_off(dt);
    for (std::uint64_t i = 0; i < dk; i++) {
        keep_off[i] = deposit(i, keep_bits);
    }
    for (std::uint64_t k = 0; k < dt; k++) {
        trace_off[k] = deposit(k, trace_bits);
    }
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
    for (std::uint64_t j = 0; j < dk; j++) {
        for (std::uint64_t i = 0; i < dk; i++) {
            cplx acc = 0;
            for (std::uint64_t k = 0; k < dt; k++) {
                acc += op(keep_off[i] | trace_off[k], keep_off[j] | trace_off[k]);
            }
            out(i, j) = acc;
        }
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const int> keep) {
    return DensityMatrix::unchecked(partial_trace(rho.matrix(), rho.qubit_count(), keep));
}

Matrix trace_leading(const Matrix &op, int lead_qubits) {
    int n = qubits_for_dim(op.rows());
    if (op.rows() != op.cols() || n < 0 || lead_qubits < 0 || lead_qubits > n) {
        throw DimensionError("trace_leading: invalid operator or qubit count");
    }
    Eigen::Index dl = Eigen::Index{1} << lead_qubits;
    Eigen::Index dr = op.rows() / dl;
    Matrix out = Matrix::Zero(dr, dr);
    for (Eigen::Index a = 0; a < dl; a++) {
        out += op.block(a * dr, a * dr, dr, dr);
    }
    return out;
}

DensityMatrix trace_leading(const DensityMatrix &rho, int lead_qubits) {
    return DensityMatrix::unchecked(trace_leading(rho.matrix(), lead_qubits));
}

cplx pauli_trace(const PauliString &obs, const Matrix &op) {
    if (op.rows() != op.cols() || qubits_for_dim(op.rows()) != obs.qubit_count()) {
        throw DimensionError("expectation: observable and state dimensions differ");
    }
    // P|b> = i^{#Y} (-1)^{|b & z|} |b ^ x>, so Tr[P op] = sum_b P_{b^x,b} op_{b,b^x}.
    std::uint64_t x = obs.x_mask();
    std::uint64_t z = obs.z_mask();
    static const cplx kIPow[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
    cplx global = kIPow[obs.y_count() % 4];
    auto d = static_cast<std::uint64_t>(op.rows());
    cplx acc = 0;
    for (std::uint64_t b = 0; b < d; b++) {
        cplx v = op(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b ^ x));
        if (std::popcount(b & z) & 1) {
            acc -= v;
        } else {
            acc += v;
        }
    }
    return global * acc;
}

double expectation(const PauliString &obs, const DensityMatrix &rho) {
    cplx v = pauli_trace(obs, rho.matrix());
    assert(std::abs(v.imag()) < 1e-10);
    return v.real();
}

double expectation(const Matrix &obs, const DensityMatrix &rho) {
    if (obs.rows() != rho.dim() || obs.cols() != rho.dim()) {
        throw DimensionError("expectation: observable and state dimensions differ");
    }
    // Tr[O rho] = sum_ij O_ij rho_ji.
    cplx v = (obs.transpose().cwiseProduct(rho.matrix())).sum();
    assert(std::abs(v.imag()) < 1e-10);
    return v.real();
}

double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw DimensionError("trace_distance: dimension mismatch");
    }
    Matrix diff = rho.matrix() - sigma.matrix();
    diff = (diff + diff.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

UnitaryMatrix herm_exp(const Matrix &h, double angle) {
    if (!is_hermitian(h)) {
        throw std::invalid_argument("herm_exp: generator is not Hermitian");
    }
    if (qubits_for_dim(h.rows()) < 0) {
        throw DimensionError("herm_exp: dimension must be a power of two");
    }
    Matrix hs = (h + h.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Matrix> es(hs);
    const Matrix &v = es.eigenvectors();
    Vector phases(v.cols());
    for (Eigen::Index k = 0; k < v.cols(); k++) {
        phases[k] = std::polar(1.0, -angle * es.eigenvalues()[k]);
    }
    return UnitaryMatrix::unchecked(v * phases.asDiagonal() * v.adjoint());
}

Matrix conjugate(const Matrix &u, const Matrix &op) {
    if (u.cols() != op.rows() || op.rows() != op.cols()) {
        throw DimensionError("conjugate: dimension mismatch");
    }
    Matrix tmp = u * op;
    return tmp * u.adjoint();
}

DensityMatrix conjugate(const UnitaryMatrix &u, const DensityMatrix &rho) {
    return DensityMatrix::unchecked(conjugate(u.matrix(), rho.matrix()));
}

Matrix embed(const Matrix &op, int first, int n) {
    int k = qubits_for_dim(op.rows());
    if (k < 0 || op.rows() != op.cols() || first < 0 || first + k > n) {
        throw DimensionError("embed: operator does not fit the register");
    }
    Matrix left = Matrix::Identity(Eigen::Index{1} << first, Eigen::Index{1} << first);
    int rest = n - first - k;
    Matrix right = Matrix::Identity(Eigen::Index{1} << rest, Eigen::Index{1} << rest);
    return kron(kron(left, op), right);
}

double operator_norm(const Matrix &herm) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

double operator_norm(const PauliString &) {
    return 1.0;
}

}  // namespace qrp
