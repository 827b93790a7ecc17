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

#ifndef QRP_METRICS_H
#define QRP_METRICS_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qrp/channels.h"
#include "qrp/encoding.h"
#include "qrp/engine.h"
#include "qrp/ensembles.h"
#include "qrp/linalg.h"
#include "qrp/rng.h"

namespace qrp {

struct MetricsRow {
    std::string experiment;
    int n_a = 0;
    int n_h = 0;
    int t = 0;
    std::optional<double> param;
    double estimate = 0;
    double std_error = 0;
    long long n_samples = 0;
    std::optional<double> analytic_ref;
    std::uint64_t seed = 0;

    /// Throws NumericalError on non-finite values, negative std_error or n_samples < min_samples.
    void validate(long long min_samples = 2) const;
};

struct InputEnsemble {
    enum class Kind {
        /// Haar-random pure state on the whole accessible register.
        HaarPure,
        /// Uniform draw from `states`.
        FixedList,
        /// s ~ U[0, 1] passed through `encoding`.
        ClassicalUniform,
    };
    Kind kind = Kind::HaarPure;
    std::vector<DensityMatrix> states;
    EncodingSpec encoding;

    static InputEnsemble haar();
    static InputEnsemble fixed(std::vector<DensityMatrix> states);
    static InputEnsemble classical(const EncodingSpec &encoding);
};

struct HiddenEnsemble {
    enum class Kind {
        HaarPure,
        /// Uniform draw from `states`; a single state gives a fixed initial condition.
        Fixed,
    };
    Kind kind = Kind::Fixed;
    std::vector<DensityMatrix> states;

    static HiddenEnsemble haar();
    static HiddenEnsemble fixed(DensityMatrix state);
    static HiddenEnsemble fixed_list(std::vector<DensityMatrix> states);
    /// |0...0> on n_h qubits.
    static HiddenEnsemble zero(int n_h);
};

struct EnsembleSpec {
    ReservoirSpec reservoir;
    int reservoir_samples = 200;
    /// Draws per reservoir sample for the varied slot.
    int inner_samples = 32;
    InputEnsemble inputs;
    HiddenEnsemble hidden;
    std::optional<PauliNoise> inter_step_noise;
    int threads = 1;

    void validate() const;
};

DensityMatrix draw_input(const InputEnsemble &ens, int n_a, CounterRng &rng);
DensityMatrix draw_hidden(const HiddenEnsemble &ens, int n_h, CounterRng &rng);
/// Hilbert-Schmidt random mixed state G G^dagger / Tr, full rank almost surely.
DensityMatrix sample_full_rank_state(int n, CounterRng &rng);

/// 1/(d_a d_h^2) for a traceless Pauli observable; absent for the identity.
std::optional<double> variance_reference(int n_a, int n_h, const PauliString &obs);
/// Tr[O^2] / (d_a^{t+1} d_h^2).
double delta_temp(int t, int n_a, int n_h, const PauliString &obs);
/// Delta_temp(t) / (1/(d_a d_h^2)) = d_h / d_a^{t-1}.
double saturation_ratio(int t, int n_a, int n_h);
/// 1/(d_h d_a^t).
double memory_reference(int t, int n_a, int n_h);

/// Mean and unbiased variance with its standard error.
struct SampleStats {
    long long n = 0;
    double mean = 0;
    double variance = 0;
    double variance_se = 0;
    double mean_se = 0;
};
SampleStats sample_stats(const std::vector<double> &values);

/// Rows t = 1..t_max of Var_U[<O>_t] with one input sequence and one rho_h(0) shared by all reservoirs.
std::vector<MetricsRow> variance_curve(const EnsembleSpec &spec, int t_max, const PauliString &obs, std::uint64_t seed);
MetricsRow variance_over_reservoirs(const EnsembleSpec &spec, int t, const PauliString &obs, std::uint64_t seed);

struct MemoryCurve {
    std::vector<MetricsRow> rows;
    /// per_reservoir[r][t-1] is the inner variance for reservoir sample r.
    std::vector<std::vector<double>> per_reservoir;
};

/// Varies the input injected at step tau (1-based) and reads out at step tau + t - 1, t = 1..t_max.
MemoryCurve memory_indicator_input_curve(const EnsembleSpec &spec, int tau, int t_max, const PauliString &obs,
                                         std::uint64_t seed);
MetricsRow memory_indicator_input(const EnsembleSpec &spec, int tau, int t, const PauliString &obs, std::uint64_t seed);

/// Varies rho_h(0) and reads out at step t = 1..t_max.
MemoryCurve memory_indicator_hidden_curve(const EnsembleSpec &spec, int t_max, const PauliString &obs,
                                          std::uint64_t seed);
MetricsRow memory_indicator_hidden(const EnsembleSpec &spec, int t, const PauliString &obs, std::uint64_t seed);

/// Mean of (<O>^rho - <O>^sigma)^2 over i.i.d. pairs in the slot-tau ensemble.
///
/// Uses the same reservoirs and fixed inputs as memory_indicator_input_curve for equal seeds.
std::vector<MetricsRow> pairwise_deviation_curve(const EnsembleSpec &spec, int tau, int t_max, const PauliString &obs,
                                                 std::uint64_t seed);
MetricsRow pairwise_deviation(const EnsembleSpec &spec, int tau, int t, const PauliString &obs, std::uint64_t seed);

struct InitialCondition {
    DensityMatrix rho_h0;
    DensityMatrix rho_a1;
};

struct ErasurePoint {
    int t = 0;
    double delta_o = 0;
    double bound = 0;
};

/// ||O|| sqrt(2 ln2 q^{(t-1)/ln2}) (S2(rho_a||sigma_a) + S2(rho_h||sigma_h))^{1/2}.
double unital_erasure_bound(int t, double q, double obs_norm, double s2_sum);

/// Two trajectories that differ only in (rho_h(0), rho_a(1)); later inputs are shared Haar-pure states.
///
/// Pauli noise acts on every qubit after each reservoir application.
std::vector<ErasurePoint> unital_erasure(int t_max, const PauliNoise &noise, const ReservoirSpec &reservoir,
                                         const InitialCondition &rho, const InitialCondition &sigma,
                                         const PauliString &obs, const SeedPath &seed);

/// ||rho(t) - sigma(t)||_1 for t = 1..t_max under a noise-interleaved layered reservoir.
///
/// Throws std::invalid_argument unless chi < 1 and L >= 2 (n_a + n_h).
std::vector<double> nonunital_erasure_trajectory(int t_max, const ReservoirSpec &reservoir, const InitialCondition &rho,
                                                 const InitialCondition &sigma, const SeedPath &seed);

/// Least-squares slope of ln(values[k]) against k; values are floored at 1e-300.
double fit_log_slope(const std::vector<double> &values);

struct HypothesisResult {
    double empirical_success = 0;
    double bound = 0;
};

/// Optimal equal-prior test between Bernoulli(p0) and Bernoulli(p0 + eps) from N samples.
HypothesisResult hypothesis_power(double p0, double eps, int n, long long trials, std::uint64_t seed);
/// 1/2 + N|eps|/2.
double hypothesis_bound(double eps, int n);

/// min(1, var / delta^2).
double chebyshev_tail(double var, double delta);

struct NoisyEncodingPoint {
    int t = 0;
    double output = 0;
    double mean = 0;
    double bound = 0;
};

/// mu_t = Tr[O Omega(t)] with Omega(t) = U(I/2^{n_a} (x) Tr_a[Omega(t-1)]) and Tr_a[Omega(0)] = rho_h(0).
std::vector<double> omega_mean_outputs(const ReservoirChannel &channel, int n_a, const DensityMatrix &rho_h0,
                                       int t_max, const PauliString &obs);

/// Output under layered-noisy encoded inputs s_1..s_T, with its mean mu_t and the concentration bound.
std::vector<NoisyEncodingPoint> noisy_encoding_trace(const ReservoirChannel &channel, const EncodingSpec &encoding,
                                                     const std::vector<double> &inputs, const DensityMatrix &rho_h0,
                                                     const PauliString &obs);

}  // namespace qrp

#endif
