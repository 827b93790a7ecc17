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

#ifndef QRP_ENSEMBLES_H
#define QRP_ENSEMBLES_H

#include <string>
#include <variant>
#include <vector>

#include "qrp/channels.h"
#include "qrp/linalg.h"
#include "qrp/rng.h"

namespace qrp {

struct HaarGlobal {};

struct AlternatingLayered {
    int layers = 1;
};

struct Ising {
    double J = -1.0;
    double Bx = 0.7;
    double Bz = 1.5;
    double dt = 1.0;
};

using UnitaryReservoir = std::variant<HaarGlobal, AlternatingLayered, Ising>;

enum class NoisePlacement {
    /// U_L o N o ... o U_1 o N
    BeforeEachLayer,
    /// N o U_L o ... o N o U_1
    AfterEachLayer,
};

struct NoiseInterleaved {
    UnitaryReservoir inner;
    SingleQubitChannel channel;
    NoisePlacement placement = NoisePlacement::BeforeEachLayer;
};

struct ReservoirSpec {
    std::variant<HaarGlobal, AlternatingLayered, Ising, NoiseInterleaved> kind;
    int n_a = 1;
    int n_h = 1;

    int n() const {
        return n_a + n_h;
    }
    /// Throws std::invalid_argument on a malformed spec.
    void validate() const;
    std::string describe() const;
};

/// One step of reservoir dynamics, reused unchanged at every time step.
class ReservoirChannel {
   public:
    struct Stage {
        bool local = false;
        Matrix unitary;
        Eigen::Matrix4cd super;
    };

    ReservoirChannel() = default;
    static ReservoirChannel from_unitary(const UnitaryMatrix &u);
    static ReservoirChannel from_stages(int n, std::vector<Stage> stages);

    int qubit_count() const {
        return n_;
    }
    const std::vector<Stage> &stages() const {
        return stages_;
    }
    /// True when the channel is a single unitary conjugation.
    bool is_unitary() const;
    /// Product of all unitary stages; throws std::logic_error if any stage is noisy.
    UnitaryMatrix unitary() const;

    Matrix apply(const Matrix &op) const;
    DensityMatrix apply(const DensityMatrix &rho) const;

   private:
    int n_ = 0;
    std::vector<Stage> stages_;
};

UnitaryMatrix sample_haar_unitary(Eigen::Index dim, const SeedPath &seed);
UnitaryMatrix sample_haar_unitary(Eigen::Index dim, CounterRng &rng);

/// Pure state U|0> with Haar-random U.
Vector sample_haar_vector(Eigen::Index dim, CounterRng &rng);
DensityMatrix sample_haar_pure_state(int n, CounterRng &rng);

/// Individual brickwork layers; layer l (1-based) pairs (0,1),(2,3),... when l is odd and (1,2),(3,4),... when even.
std::vector<UnitaryMatrix> alternating_layers(int n, int layers, const SeedPath &seed);
/// Product U_L ... U_1 of the layers above; L = 0 gives the identity.
UnitaryMatrix build_alternating_layered(int n, int layers, const SeedPath &seed);

/// J sum_{i<n} Z_i Z_{i+1} + Bz sum Z_i + Bx sum X_i on an open chain.
Matrix ising_hamiltonian(int n, double J, double Bx, double Bz);
UnitaryMatrix ising_unitary(int n, double J, double Bx, double Bz, double dt);

ReservoirChannel materialize(const ReservoirSpec &spec, const SeedPath &seed);

}  // namespace qrp

#endif
