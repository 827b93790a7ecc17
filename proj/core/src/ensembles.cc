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

#include "qrp/ensembles.h"

#include <cmath>
#include <sstream>

namespace qrp {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void validate_unitary_kind(const UnitaryReservoir &kind) {
    std::visit(overloaded{
                   [](const HaarGlobal &) {},
                   [](const AlternatingLayered &l) {
                       if (l.layers < 1) {
                           throw std::invalid_argument("ReservoirSpec: layered reservoir needs L >= 1");
                       }
                   },
                   [](const Ising &i) {
                       if (!std::isfinite(i.J) || !std::isfinite(i.Bx) || !std::isfinite(i.Bz) || !std::isfinite(i.dt)) {
                           throw std::invalid_argument("ReservoirSpec: Ising parameters must be finite");
                       }
                   },
               },
               kind);
}

std::string describe_unitary_kind(const UnitaryReservoir &kind) {
    std::ostringstream out;
    std::visit(overloaded{
                   [&](const HaarGlobal &) {
                       out << "haar";
                   },
                   [&](const AlternatingLayered &l) {
                       out << "layered(L=" << l.layers << ")";
                   },
                   [&](const Ising &i) {
                       out << "ising(J=" << i.J << ",Bx=" << i.Bx << ",Bz=" << i.Bz << ",dt=" << i.dt << ")";
                   },
               },
               kind);
    return out.str();
}

// Unitary stages for one application of the inner dynamics.
std::vector<Matrix> unitary_stages(const UnitaryReservoir &kind, int n, const SeedPath &seed) {
    std::vector<Matrix> out;
    std::visit(overloaded{
                   [&](const HaarGlobal &) {
                       out.push_back(sample_haar_unitary(Eigen::Index{1} << n, seed.with(seed.sample_index, "haar")).matrix());
                   },
                   [&](const AlternatingLayered &l) {
                       for (auto &u : alternating_layers(n, l.layers, seed.with(seed.sample_index, "layered"))) {
                           out.push_back(u.matrix());
                       }
                   },
                   [&](const Ising &i) {
                       out.push_back(ising_unitary(n, i.J, i.Bx, i.Bz, i.dt).matrix());
                   },
               },
               kind);
    return out;
}

}  // namespace

void ReservoirSpec::validate() const {
    if (n_a < 1 || n_h < 1) {
        throw std::invalid_argument("ReservoirSpec: n_a and n_h must be at least 1");
    }
    if (n_a + n_h > kMaxQubits) {
        throw std::invalid_argument("ReservoirSpec: n_a + n_h exceeds the register cap");
    }
    std::visit(overloaded{
                   [](const NoiseInterleaved &ni) {
                       validate_unitary_kind(ni.inner);
                   },
                   [](const auto &k) {
                       validate_unitary_kind(UnitaryReservoir(k));
                   },
               },
               kind);
}

std::string ReservoirSpec::describe() const {
    std::ostringstream out;
    std::visit(overloaded{
                   [&](const NoiseInterleaved &ni) {
                       out << "noisy[" << describe_unitary_kind(ni.inner) << "]";
                   },
                   [&](const auto &k) {
                       out << describe_unitary_kind(UnitaryReservoir(k));
                   },
               },
               kind);
    out << " n_a=" << n_a << " n_h=" << n_h;
    return out.str();
}

ReservoirChannel ReservoirChannel::from_unitary(const UnitaryMatrix &u) {
    ReservoirChannel ch;
    ch.n_ = u.qubit_count();
    ch.stages_.push_back(Stage{false, u.matrix(), Eigen::Matrix4cd::Identity()});
    return ch;
}

ReservoirChannel ReservoirChannel::from_stages(int n, std::vector<Stage> stages) {
    ReservoirChannel ch;
    ch.n_ = n;
    Eigen::Index d = Eigen::Index{1} << n;
    for (const auto &s : stages) {
        if (!s.local && (s.unitary.rows() != d || s.unitary.cols() != d)) {
            throw DimensionError("ReservoirChannel: stage dimension mismatch");
        }
    }
    ch.stages_ = std::move(stages);
    return ch;
}

bool ReservoirChannel::is_unitary() const {
    for (const auto &s : stages_) {
        if (s.local) {
            return false;
        }
    }
    return true;
}

UnitaryMatrix ReservoirChannel::unitary() const {
    if (!is_unitary()) {
        throw std::logic_error("ReservoirChannel::unitary: channel contains noise stages");
    }
    Eigen::Index d = Eigen::Index{1} << n_;
    Matrix u = Matrix::Identity(d, d);
    for (const auto &s : stages_) {
        u = s.unitary * u;
    }
    return UnitaryMatrix::unchecked(std::move(u));
}

Matrix ReservoirChannel::apply(const Matrix &op) const {
    if (op.rows() != (Eigen::Index{1} << n_) || op.cols() != op.rows()) {
        throw DimensionError("ReservoirChannel::apply: operator does not match register size");
    }
    Matrix out = op;
    std::vector<int> targets = all_qubits(n_);
    for (const auto &s : stages_) {
        if (s.local) {
            out = apply_local_superoperator(s.super, out, n_, targets);
        } else {
            out = conjugate(s.unitary, out);
        }
    }
    return out;
}

DensityMatrix ReservoirChannel::apply(const DensityMatrix &rho) const {
    return DensityMatrix::unchecked(apply(rho.matrix()));
}

UnitaryMatrix sample_haar_unitary(Eigen::Index dim, CounterRng &rng) {
    if (qubits_for_dim(dim) < 1) {
        throw DimensionError("sample_haar_unitary: dim must be a power of two, at least 2");
    }
    Matrix z(dim, dim);
    const double s = 1.0 / std::sqrt(2.0);
    for (Eigen::Index j = 0; j < dim; j++) {
        for (Eigen::Index i = 0; i < dim; i++) {
            double re = rng.normal();
            double im = rng.normal();
            z(i, j) = cplx(re * s, im * s);
        }
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    const Matrix &r = qr.matrixQR();
    for (Eigen::Index k = 0; k < dim; k++) {
        cplx rkk = r(k, k);
        double a = std::abs(rkk);
        cplx ph = a > 0 ? rkk / a : cplx(1.0);
        q.col(k) *= ph;
    }
    return UnitaryMatrix::unchecked(std::move(q));
}

UnitaryMatrix sample_haar_unitary(Eigen::Index dim, const SeedPath &seed) {
    CounterRng rng(seed);
    return sample_haar_unitary(dim, rng);
}

Vector sample_haar_vector(Eigen::Index dim, CounterRng &rng) {
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; i++) {
        double re = rng.normal();
        double im = rng.normal();
        v[i] = cplx(re, im);
    }
    return v / v.norm();
}

DensityMatrix sample_haar_pure_state(int n, CounterRng &rng) {
    return DensityMatrix::from_pure(sample_haar_vector(Eigen::Index{1} << n, rng));
}

std::vector<UnitaryMatrix> alternating_layers(int n, int layers, const SeedPath &seed) {
    if (n < 2) {
        throw std::invalid_argument("build_alternating_layered: need at least two qubits");
    }
    if (layers < 0) {
        throw std::invalid_argument("build_alternating_layered: negative layer count");
    }
    CounterRng rng(seed);
    std::vector<UnitaryMatrix> out;
    for (int l = 1; l <= layers; l++) {
        int start = (l % 2 == 1) ? 0 : 1;
        Matrix u = Matrix::Identity(Eigen::Index{1} << start, Eigen::Index{1} << start);
        int q = start;
        for (; q + 1 < n; q += 2) {
            u = kron(u, sample_haar_unitary(4, rng).matrix());
        }
        if (q < n) {
            u = kron(u, pauli::I());
        }
        out.push_back(UnitaryMatrix::unchecked(std::move(u)));
    }
    return out;
}

UnitaryMatrix build_alternating_layered(int n, int layers, const SeedPath &seed) {
    UnitaryMatrix u = UnitaryMatrix::identity(n);
    for (const auto &layer : alternating_layers(n, layers, seed)) {
        u = layer * u;
    }
    return u;
}

Matrix ising_hamiltonian(int n, double J, double Bx, double Bz) {
    if (n < 1) {
        throw std::invalid_argument("ising_hamiltonian: need at least one qubit");
    }
    Eigen::Index d = Eigen::Index{1} << n;
    Matrix h = Matrix::Zero(d, d);
    for (int i = 0; i + 1 < n; i++) {
        h += J * embed(kron(pauli::Z(), pauli::Z()), i, n);
    }
    for (int i = 0; i < n; i++) {
        h += Bz * embed(pauli::Z(), i, n);
        h += Bx * embed(pauli::X(), i, n);
    }
    return h;
}

UnitaryMatrix ising_unitary(int n, double J, double Bx, double Bz, double dt) {
    return herm_exp(ising_hamiltonian(n, J, Bx, Bz), dt);
}

ReservoirChannel materialize(const ReservoirSpec &spec, const SeedPath &seed) {
    spec.validate();
    int n = spec.n();
    return std::visit(overloaded{
                          [&](const NoiseInterleaved &ni) {
                              std::vector<ReservoirChannel::Stage> stages;
                              ReservoirChannel::Stage noise{true, Matrix(), ni.channel.superoperator()};
                              for (auto &u : unitary_stages(ni.inner, n, seed)) {
                                  if (ni.placement == NoisePlacement::BeforeEachLayer) {
                                      stages.push_back(noise);
                                  }
                                  stages.push_back(ReservoirChannel::Stage{false, std::move(u), Eigen::Matrix4cd::Identity()});
                                  if (ni.placement == NoisePlacement::AfterEachLayer) {
                                      stages.push_back(noise);
                                  }
                              }
                              return ReservoirChannel::from_stages(n, std::move(stages));
                          },
                          [&](const auto &k) {
                              std::vector<ReservoirChannel::Stage> stages;
                              Eigen::Index d = Eigen::Index{1} << n;
                              Matrix u = Matrix::Identity(d, d);
                              for (auto &s : unitary_stages(UnitaryReservoir(k), n, seed)) {
                                  u = s * u;
                              }
                              stages.push_back(ReservoirChannel::Stage{false, std::move(u), Eigen::Matrix4cd::Identity()});
                              return ReservoirChannel::from_stages(n, std::move(stages));
                          },
                      },
                      spec.kind);
}

}  // namespace qrp
