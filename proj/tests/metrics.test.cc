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

#include "qrp/metrics.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "test_util.h"

using namespace qrp;
using namespace qrp::testing;

namespace {

EnsembleSpec identity_reservoir(int n_a, int n_h) {
    EnsembleSpec spec;
    spec.reservoir = ReservoirSpec{Ising{-1, 0.7, 1.5, 0.0}, n_a, n_h};
    spec.reservoir_samples = 40;
    spec.inner_samples = 64;
    spec.hidden = HiddenEnsemble::zero(n_h);
    return spec;
}

}  // namespace

TEST(references, examples) {
    PauliString z3 = PauliString::from_str("ZII");
    EXPECT_DOUBLE_EQ(*variance_reference(1, 2, z3), 1.0 / 32);
    EXPECT_DOUBLE_EQ(*variance_reference(1, 1, PauliString::from_str("ZI")), 1.0 / 8);
    EXPECT_FALSE(variance_reference(1, 2, PauliString::from_str("III")).has_value());
    EXPECT_DOUBLE_EQ(memory_reference(1, 1, 1), 1.0 / 4);
    EXPECT_DOUBLE_EQ(memory_reference(2, 1, 1), 1.0 / 8);
    EXPECT_DOUBLE_EQ(memory_reference(3, 2, 1), 1.0 / 128);
    // For a Pauli string the temporal term reduces to 1 / (d_a^t d_h).
    PauliString z4 = PauliString::from_str("ZIII");
    for (int t = 1; t <= 4; t++) {
        EXPECT_NEAR(delta_temp(t, 1, 3, z4), 1.0 / (std::pow(2.0, t) * 8), 1e-15);
    }
    EXPECT_DOUBLE_EQ(saturation_ratio(1, 1, 3), 8.0);
    EXPECT_DOUBLE_EQ(saturation_ratio(4, 1, 3), 1.0);
    EXPECT_THROW(memory_reference(0, 1, 1), std::invalid_argument);
}

TEST(sample_stats, known_values) {
    SampleStats s = sample_stats({1, 2, 3, 4});
    EXPECT_EQ(s.n, 4);
    EXPECT_DOUBLE_EQ(s.mean, 2.5);
    EXPECT_DOUBLE_EQ(s.variance, 5.0 / 3);
    EXPECT_NEAR(s.mean_se, std::sqrt(5.0 / 12), 1e-15);
    SampleStats one = sample_stats({7});
    EXPECT_EQ(one.variance, 0.0);
    EXPECT_EQ(one.mean, 7.0);
    EXPECT_EQ(sample_stats({}).n, 0);
}

TEST(sample_stats, reorder_invariance_and_scaling) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n01;
    std::vector<double> v(4000);
    for (auto &x : v) {
        x = n01(rng);
    }
    SampleStats a = sample_stats(v);
    std::vector<double> w = v;
    std::shuffle(w.begin(), w.end(), rng);
    SampleStats b = sample_stats(w);
    EXPECT_NEAR(a.mean, b.mean, 1e-14);
    EXPECT_NEAR(a.variance, b.variance, 1e-12);
    EXPECT_NEAR(a.variance_se, b.variance_se, 1e-12);
    // Normal data: SE of the variance is about sqrt(2/n).
    EXPECT_NEAR(a.variance_se, std::sqrt(2.0 / 4000), 0.2 * std::sqrt(2.0 / 4000));
    std::vector<double> quarter(v.begin(), v.begin() + 1000);
    SampleStats c = sample_stats(quarter);
    EXPECT_NEAR(c.mean_se / a.mean_se, 2.0, 0.2);
}

TEST(variance_curve, single_step_pure_state_oracle) {
    // At t = 1 with pure inputs and hidden state, the output is <P> on a Haar-random pure
    // state of dimension d, whose variance is 1 / (d + 1).
    EnsembleSpec spec;
    spec.reservoir = ReservoirSpec{HaarGlobal{}, 1, 1};
    spec.reservoir_samples = 4000;
    spec.hidden = HiddenEnsemble::zero(1);
    MetricsRow row = variance_over_reservoirs(spec, 1, PauliString::from_str("XZ"), 31);
    EXPECT_EQ(row.experiment, "variance");
    EXPECT_EQ(row.n_samples, 4000);
    EXPECT_NEAR(row.estimate, 0.2, 3 * row.std_error);
    EXPECT_DOUBLE_EQ(*row.analytic_ref, 1.0 / 8);
    EXPECT_NO_THROW(row.validate());
}

TEST(variance_curve, deterministic_reservoir_has_zero_variance) {
    EnsembleSpec spec = identity_reservoir(1, 2);
    spec.reservoir = ReservoirSpec{Ising{}, 1, 2};
    for (const auto &row : variance_curve(spec, 4, PauliString::from_str("ZZI"), 3)) {
        EXPECT_NEAR(row.estimate, 0.0, 1e-24);
    }
}

TEST(variance_curve, thread_count_determinism) {
    EnsembleSpec spec;
    spec.reservoir = ReservoirSpec{HaarGlobal{}, 1, 2};
    spec.reservoir_samples = 30;
    spec.hidden = HiddenEnsemble::haar();
    auto a = variance_curve(spec, 5, PauliString::from_str("IZI"), 9);
    spec.threads = 3;
    auto b = variance_curve(spec, 5, PauliString::from_str("IZI"), 9);
    ASSERT_EQ(a.size(), b.size());
    for (size_t i = 0; i < a.size(); i++) {
        EXPECT_EQ(a[i].estimate, b[i].estimate);
        EXPECT_EQ(a[i].std_error, b[i].std_error);
    }
}

TEST(variance_curve, validation) {
    EnsembleSpec spec;
    spec.reservoir = ReservoirSpec{HaarGlobal{}, 1, 2};
    spec.hidden = HiddenEnsemble::zero(2);
    EXPECT_THROW(variance_curve(spec, 3, PauliString::from_str("ZI"), 1), DimensionError);
    EXPECT_THROW(variance_curve(spec, 0, PauliString::from_str("ZII"), 1), std::invalid_argument);
    spec.reservoir_samples = 1;
    EXPECT_THROW(variance_curve(spec, 3, PauliString::from_str("ZII"), 1), std::invalid_argument);
    spec.reservoir_samples = 10;
    spec.hidden = HiddenEnsemble::zero(1);
    EXPECT_THROW(variance_curve(spec, 3, PauliString::from_str("ZII"), 1), DimensionError);
}

TEST(memory_indicator_input, identity_reservoir_oracle) {
    // Without dynamics the varied input is read at t = 1 (variance 1/3 for a Haar qubit) and is
    // discarded afterwards.
    EnsembleSpec spec = identity_reservoir(1, 1);
    MemoryCurve c = memory_indicator_input_curve(spec, 2, 3, PauliString::from_str("ZI"), 4);
    ASSERT_EQ(c.rows.size(), 3u);
    EXPECT_NEAR(c.rows[0].estimate, 1.0 / 3, 3 * c.rows[0].std_error + 0.01);
    EXPECT_NEAR(c.rows[1].estimate, 0.0, 1e-24);
    EXPECT_NEAR(c.rows[2].estimate, 0.0, 1e-24);
    EXPECT_EQ(c.rows[0].experiment, "memory-input");
    EXPECT_DOUBLE_EQ(*c.rows[0].analytic_ref, 0.25);
    EXPECT_EQ(c.per_reservoir.size(), 40u);
}

TEST(memory_indicator_input, single_member_ensemble_is_zero) {
    EnsembleSpec spec;
    spec.reservoir = ReservoirSpec{HaarGlobal{}, 1, 2};
    spec.reservoir_samples = 5;
    spec.inner_samples = 4;
    spec.inputs = InputEnsemble::fixed({DensityMatrix::zero_state(1)});
    spec.hidden = HiddenEnsemble::zero(2);
    for (const auto &row : memory_indicator_input_curve(spec, 1, 3, PauliString::from_str("ZZZ"), 1).rows) {
        EXPECT_NEAR(row.estimate, 0.0, 1e-24);
    }
}

TEST(memory_indicator_input, bounded_by_haar_reference) {
    EnsembleSpec spec;
    spec.reservoir = ReservoirSpec{HaarGlobal{}, 1, 1};
    spec.reservoir_samples = 150;
    spec.inner_samples = 16;
    spec.hidden = HiddenEnsemble::zero(1);
    auto rows = memory_indicator_input_curve(spec, 3, 4, PauliString::from_str("ZZ"), 12).rows;
    for (const auto &row : rows) {
        EXPECT_LE(row.estimate, 3 * *row.analytic_ref) << row.t;
        EXPECT_GT(row.estimate, 0.0);
    }
    EXPECT_GT(rows[0].estimate, rows[3].estimate);
}

TEST(memory_indicator_hidden, identity_reservoir_oracle) {
    // The hidden qubit is never touched, so its Haar-random initial state stays readable.
    EnsembleSpec spec = identity_reservoir(1, 1);
    spec.hidden = HiddenEnsemble::haar();
    MemoryCurve c = memory_indicator_hidden_curve(spec, 3, PauliString::from_str("IZ"), 6);
    for (const auto &row : c.rows) {
        EXPECT_NEAR(row.estimate, 1.0 / 3, 3 * row.std_error + 0.01);
        EXPECT_EQ(row.experiment, "memory-hidden");
    }
    MemoryCurve acc = memory_indicator_hidden_curve(spec, 3, PauliString::from_str("ZI"), 6);
    for (const auto &row : acc.rows) {
        EXPECT_NEAR(row.estimate, 0.0, 1e-24);
    }
}

TEST(pairwise_deviation, identity_reservoir_oracle) {
    EnsembleSpec spec = identity_reservoir(1, 1);
    auto rows = pairwise_deviation_curve(spec, 1, 2, PauliString::from_str("ZI"), 8);
    // E[(a - b)^2] = 2 Var over independent draws.
    EXPECT_NEAR(rows[0].estimate, 2.0 / 3, 3 * rows[0].std_error + 0.02);
    EXPECT_NEAR(rows[1].estimate, 0.0, 1e-24);
    EXPECT_EQ(rows[0].experiment, "pairwise");
    EXPECT_DOUBLE_EQ(*rows[0].analytic_ref, 1.0);
}

TEST(pairwise_deviation, single_member_ensemble_is_zero) {
    EnsembleSpec spec;
    spec.reservoir = ReservoirSpec{HaarGlobal{}, 1, 1};
    spec.reservoir_samples = 4;
    spec.inner_samples = 4;
    spec.inputs = InputEnsemble::fixed({encode_exponential(0.4, 1)});
    spec.hidden = HiddenEnsemble::zero(1);
    EXPECT_NEAR(pairwise_deviation(spec, 2, 2, PauliString::from_str("XY"), 3).estimate, 0.0, 1e-24);
}

TEST(pairwise_deviation, at_most_four_times_memory) {
    EnsembleSpec spec;
    spec.reservoir = ReservoirSpec{HaarGlobal{}, 1, 1};
    spec.reservoir_samples = 120;
    spec.inner_samples = 16;
    spec.hidden = HiddenEnsemble::zero(1);
    PauliString obs = PauliString::from_str("ZX");
    auto pw = pairwise_deviation_curve(spec, 2, 3, obs, 21);
    auto mem = memory_indicator_input_curve(spec, 2, 3, obs, 21).rows;
    for (size_t i = 0; i < pw.size(); i++) {
        EXPECT_LE(pw[i].estimate, 4 * mem[i].estimate + 3 * std::hypot(pw[i].std_error, 4 * mem[i].std_error));
    }
}

TEST(draw_input, classical_and_fixed) {
    CounterRng rng(SeedPath{1, 0, "draw"});
    InputEnsemble cls = InputEnsemble::classical(EncodingSpec::exponential(2));
    DensityMatrix s = draw_input(cls, 2, rng);
    EXPECT_NEAR(s.purity(), 1.0, 1e-12);
    std::vector<DensityMatrix> states{DensityMatrix::basis_state(1, 0), DensityMatrix::basis_state(1, 1)};
    InputEnsemble fixed = InputEnsemble::fixed(states);
    int ones = 0;
    for (int i = 0; i < 2000; i++) {
        ones += draw_input(fixed, 1, rng).matrix()(1, 1).real() > 0.5;
    }
    EXPECT_NEAR(ones, 1000, 150);
}

TEST(sample_full_rank_state, full_rank) {
    CounterRng rng(SeedPath{2, 0, "fr"});
    DensityMatrix rho = sample_full_rank_state(3, rng);
    EXPECT_EQ(density_violation(rho.matrix()), "");
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
    EXPECT_GT(es.eigenvalues().minCoeff(), 1e-6);
}

TEST(unital_erasure, identical_conditions_have_zero_deviation) {
    CounterRng rng(SeedPath{3, 0, "ic"});
    InitialCondition ic{sample_full_rank_state(2, rng), sample_full_rank_state(2, rng)};
    auto pts = unital_erasure(4, PauliNoise::depolarizing(0.9), ReservoirSpec{HaarGlobal{}, 2, 2}, ic, ic,
                              PauliString::from_str("ZIII"), SeedPath{3, 0, "e"});
    for (const auto &p : pts) {
        EXPECT_NEAR(p.delta_o, 0.0, 1e-14);
        // The bound scales as sqrt(S2), so rounding in S2 near zero shows up at 1e-8.
        EXPECT_NEAR(p.bound, 0.0, 1e-7);
    }
}

TEST(unital_erasure, bound_holds_and_shrinks) {
    CounterRng rng(SeedPath{4, 0, "ic"});
    for (int trial = 0; trial < 5; trial++) {
        InitialCondition a{sample_full_rank_state(2, rng), sample_full_rank_state(2, rng)};
        InitialCondition b{sample_full_rank_state(2, rng), sample_full_rank_state(2, rng)};
        auto pts = unital_erasure(6, PauliNoise::depolarizing(0.8), ReservoirSpec{HaarGlobal{}, 2, 2}, a, b,
                                  PauliString::from_str("ZZII"), SeedPath{4, static_cast<std::uint64_t>(trial), "e"});
        for (size_t i = 0; i < pts.size(); i++) {
            EXPECT_EQ(pts[i].t, static_cast<int>(i) + 1);
            EXPECT_LE(pts[i].delta_o, pts[i].bound + 1e-12);
            if (i > 0) {
                EXPECT_LT(pts[i].bound, pts[i - 1].bound);
            }
        }
    }
}

TEST(unital_erasure_bound, examples) {
    // q = 1 leaves the bound constant in t.
    EXPECT_DOUBLE_EQ(unital_erasure_bound(1, 1.0, 1.0, 0.5), unital_erasure_bound(9, 1.0, 1.0, 0.5));
    EXPECT_NEAR(unital_erasure_bound(1, 0.5, 2.0, 0.25), 2.0 * std::sqrt(2 * std::log(2.0)) * 0.5, 1e-15);
    double q = 0.9;
    double ratio = unital_erasure_bound(3, q, 1, 1) / unital_erasure_bound(2, q, 1, 1);
    EXPECT_NEAR(std::log(ratio), 0.5 * std::log(q) / std::log(2.0), 1e-14);
}

TEST(nonunital_erasure_trajectory, preconditions) {
    CounterRng rng(SeedPath{5, 0, "ic"});
    InitialCondition a{sample_full_rank_state(1, rng), sample_full_rank_state(1, rng)};
    InitialCondition b{sample_full_rank_state(1, rng), sample_full_rank_state(1, rng)};
    SingleQubitChannel ad = SingleQubitChannel::amplitude_damping(0.1);
    EXPECT_THROW(nonunital_erasure_trajectory(3, ReservoirSpec{HaarGlobal{}, 1, 1}, a, b, SeedPath{}), std::invalid_argument);
    ReservoirSpec haar_inner{NoiseInterleaved{HaarGlobal{}, ad, NoisePlacement::BeforeEachLayer}, 1, 1};
    EXPECT_THROW(nonunital_erasure_trajectory(3, haar_inner, a, b, SeedPath{}), std::invalid_argument);
    ReservoirSpec shallow{NoiseInterleaved{AlternatingLayered{3}, ad, NoisePlacement::BeforeEachLayer}, 1, 1};
    EXPECT_THROW(nonunital_erasure_trajectory(3, shallow, a, b, SeedPath{}), std::invalid_argument);
    ReservoirSpec unitary{NoiseInterleaved{AlternatingLayered{4}, SingleQubitChannel(), NoisePlacement::BeforeEachLayer}, 1, 1};
    EXPECT_THROW(nonunital_erasure_trajectory(3, unitary, a, b, SeedPath{}), std::invalid_argument);
    ReservoirSpec ok{NoiseInterleaved{AlternatingLayered{4}, ad, NoisePlacement::BeforeEachLayer}, 1, 1};
    auto traj = nonunital_erasure_trajectory(8, ok, a, b, SeedPath{5, 0, "t"});
    ASSERT_EQ(traj.size(), 8u);
    EXPECT_LT(traj.back(), traj.front());
    for (double d : nonunital_erasure_trajectory(3, ok, a, a, SeedPath{5, 0, "t"})) {
        EXPECT_NEAR(d, 0.0, 1e-14);
    }
}

TEST(fit_log_slope, exact_exponential) {
    std::vector<double> v;
    for (int k = 0; k < 6; k++) {
        v.push_back(3.0 * std::exp(-0.7 * k));
    }
    EXPECT_NEAR(fit_log_slope(v), -0.7, 1e-13);
    EXPECT_THROW(fit_log_slope({1.0}), std::invalid_argument);
}

TEST(hypothesis_power, tight_single_shot_case) {
    HypothesisResult r = hypothesis_power(0.5, 0.5, 1, 100000, 7);
    EXPECT_NEAR(r.empirical_success, 0.75, 0.005);
    EXPECT_DOUBLE_EQ(r.bound, 0.75);
    EXPECT_LE(r.empirical_success, r.bound + 4 / std::sqrt(100000.0));
}

TEST(hypothesis_power, weak_signal_near_chance) {
    HypothesisResult r = hypothesis_power(0.5, 0.001, 100, 20000, 8);
    EXPECT_DOUBLE_EQ(r.bound, 0.55);
    EXPECT_NEAR(r.empirical_success, 0.5, 0.03);
    EXPECT_EQ(hypothesis_power(0.5, 0.001, 100, 20000, 8).empirical_success, r.empirical_success);
}

TEST(hypothesis_power, validation) {
    EXPECT_THROW(hypothesis_power(0.9, 0.2, 1, 10, 1), std::invalid_argument);
    EXPECT_THROW(hypothesis_power(0.5, 0.1, 0, 10, 1), std::invalid_argument);
    EXPECT_THROW(hypothesis_power(0.5, 0.1, 1, 0, 1), std::invalid_argument);
}

TEST(chebyshev_tail, examples) {
    EXPECT_DOUBLE_EQ(chebyshev_tail(0.01, 0.5), 0.04);
    EXPECT_DOUBLE_EQ(chebyshev_tail(1.0, 0.5), 1.0);
    EXPECT_THROW(chebyshev_tail(1.0, 0.0), std::invalid_argument);
}

TEST(omega_mean_outputs, identity_channel) {
    auto &rng = test_rng();
    DensityMatrix h = random_density(1, rng);
    ReservoirChannel id = ReservoirChannel::from_unitary(UnitaryMatrix::identity(2));
    auto mu = omega_mean_outputs(id, 1, h, 3, PauliString::from_str("IZ"));
    for (double m : mu) {
        EXPECT_NEAR(m, expectation(PauliString::from_str("Z"), h), 1e-14);
    }
    auto mu_a = omega_mean_outputs(id, 1, h, 2, PauliString::from_str("ZI"));
    EXPECT_NEAR(mu_a[0], 0.0, 1e-15);
}

TEST(noisy_encoding_trace, full_depolarization_hits_mean) {
    ReservoirChannel ch = materialize(ReservoirSpec{HaarGlobal{}, 1, 2}, SeedPath{6, 0, "r"});
    EncodingSpec enc = EncodingSpec::layered_noisy(1, 2, PauliNoise::depolarizing(0));
    auto pts = noisy_encoding_trace(ch, enc, {0.1, 0.5, 0.9}, DensityMatrix::zero_state(2), PauliString::from_str("ZIZ"));
    ASSERT_EQ(pts.size(), 3u);
    for (const auto &p : pts) {
        EXPECT_NEAR(p.output, p.mean, 1e-13);
        EXPECT_DOUBLE_EQ(p.bound, 0.0);
    }
    EXPECT_THROW(noisy_encoding_trace(ch, EncodingSpec::exponential(1), {0.1}, DensityMatrix::zero_state(2),
                                      PauliString::from_str("ZIZ")),
                 std::invalid_argument);
}

TEST(noisy_encoding_trace, bound_holds) {
    ReservoirChannel ch = materialize(ReservoirSpec{HaarGlobal{}, 1, 2}, SeedPath{7, 0, "r"});
    EncodingSpec enc = EncodingSpec::layered_noisy(1, 1, PauliNoise::depolarizing(0.9));
    auto pts = noisy_encoding_trace(ch, enc, {0.3, 0.7, 0.2, 0.9}, DensityMatrix::zero_state(2), PauliString::from_str("ZII"));
    for (const auto &p : pts) {
        EXPECT_LE(std::abs(p.output - p.mean), p.bound);
    }
}

TEST(MetricsRow, validate) {
    MetricsRow row;
    row.experiment = "variance";
    row.n_samples = 10;
    EXPECT_NO_THROW(row.validate());
    row.estimate = NAN;
    EXPECT_THROW(row.validate(), NumericalError);
    row.estimate = 0;
    row.std_error = -1;
    EXPECT_THROW(row.validate(), NumericalError);
    row.std_error = 0;
    row.n_samples = 1;
    EXPECT_THROW(row.validate(), NumericalError);
    EXPECT_NO_THROW(row.validate(1));
}
