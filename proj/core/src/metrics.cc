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

#include <cmath>
#include <limits>
#include <numbers>

#include "qrp/parallel.h"

namespace qrp {

namespace {

QrpConfig engine_config(const ReservoirSpec &reservoir, const std::optional<PauliNoise> &noise) {
    QrpConfig cfg;
    cfg.reservoir = reservoir;
    cfg.inter_step_noise = noise;
    return cfg;
}

double dim_of(int n) {
    return std::ldexp(1.0, n);
}

double output(const QrpState &s, const PauliString &obs) {
    return expectation(obs, *s.full_last);
}

void check_obs(const PauliString &obs, int n) {
    if (obs.qubit_count() != n) {
        throw DimensionError("observable " + obs.str() + " does not match the register size");
    }
}

void check_t(int t) {
    if (t < 1) {
        throw std::invalid_argument("metrics: t must be at least 1");
    }
}

double unbiased_variance(const std::vector<double> &v) {
    return sample_stats(v).variance;
}

MetricsRow base_row(const std::string &experiment, const ReservoirSpec &r, int t, std::uint64_t seed) {
    MetricsRow row;
    row.experiment = experiment;
    row.n_a = r.n_a;
    row.n_h = r.n_h;
    row.t = t;
    row.seed = seed;
    return row;
}

std::optional<double> memory_ref_for(int t, int n_a, int n_h, const PauliString &obs) {
    if (obs.is_identity()) {
        return std::nullopt;
    }
    return memory_reference(t, n_a, n_h);
}

// Samples of the per-reservoir inner quantity, reduced into mean rows.
std::vector<MetricsRow> reduce_outer(const std::string &experiment, const EnsembleSpec &spec,
                                     const std::vector<std::vector<double>> &per_r, int t_max, std::uint64_t seed) {
    std::vector<MetricsRow> rows;
    for (int t = 1; t <= t_max; t++) {
        std::vector<double> col;
        col.reserve(per_r.size());
        for (const auto &v : per_r) {
            col.push_back(v[t - 1]);
        }
        SampleStats st = sample_stats(col);
        MetricsRow row = base_row(experiment, spec.reservoir, t, seed);
        row.estimate = st.mean;
        row.std_error = st.mean_se;
        row.n_samples = st.n;
        rows.push_back(row);
    }
    return rows;
}

// Fixed inputs for steps 1..count drawn from the ensemble.
std::vector<DensityMatrix> draw_inputs(const InputEnsemble &ens, int n_a, int count, CounterRng &rng) {
    std::vector<DensityMatrix> v;
    v.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; i++) {
        v.push_back(draw_input(ens, n_a, rng));
    }
    return v;
}

}  // namespace

void MetricsRow::validate(long long min_samples) const {
    auto fail = [&](const std::string &why) {
        throw NumericalError("invalid metrics row (" + experiment + ", n_a=" + std::to_string(n_a) +
                             ", n_h=" + std::to_string(n_h) + ", t=" + std::to_string(t) + "): " + why);
    };
    if (!std::isfinite(estimate)) {
        fail("non-finite estimate");
    }
    if (!std::isfinite(std_error) || std_error < 0) {
        fail("std_error must be finite and non-negative");
    }
    if (n_samples < min_samples) {
        fail("too few samples");
    }
    if (analytic_ref && !std::isfinite(*analytic_ref)) {
        fail("non-finite analytic reference");
    }
    if (param && !std::isfinite(*param)) {
        fail("non-finite sweep parameter");
    }
}

InputEnsemble InputEnsemble::haar() {
    return InputEnsemble{};
}

InputEnsemble InputEnsemble::fixed(std::vector<DensityMatrix> states) {
    InputEnsemble e;
    e.kind = Kind::FixedList;
    e.states = std::move(states);
    return e;
}

InputEnsemble InputEnsemble::classical(const EncodingSpec &encoding) {
    InputEnsemble e;
    e.kind = Kind::ClassicalUniform;
    e.encoding = encoding;
    return e;
}

HiddenEnsemble HiddenEnsemble::haar() {
    HiddenEnsemble e;
    e.kind = Kind::HaarPure;
    return e;
}

HiddenEnsemble HiddenEnsemble::fixed(DensityMatrix state) {
    return fixed_list({std::move(state)});
}

HiddenEnsemble HiddenEnsemble::fixed_list(std::vector<DensityMatrix> states) {
    HiddenEnsemble e;
    e.kind = Kind::Fixed;
    e.states = std::move(states);
    return e;
}

HiddenEnsemble HiddenEnsemble::zero(int n_h) {
    return fixed(DensityMatrix::zero_state(n_h));
}

void EnsembleSpec::validate() const {
    reservoir.validate();
    if (reservoir_samples < 2 || inner_samples < 2) {
        throw std::invalid_argument("EnsembleSpec: sample counts must be at least 2");
    }
    if (threads < 1) {
        throw std::invalid_argument("EnsembleSpec: threads must be at least 1");
    }
    if (inputs.kind == InputEnsemble::Kind::FixedList) {
        if (inputs.states.empty()) {
            throw std::invalid_argument("EnsembleSpec: empty input list");
        }
        for (const auto &s : inputs.states) {
            if (s.qubit_count() != reservoir.n_a) {
                throw DimensionError("EnsembleSpec: input state does not match n_a");
            }
        }
    }
    if (inputs.kind == InputEnsemble::Kind::ClassicalUniform && inputs.encoding.n_a != reservoir.n_a) {
        throw DimensionError("EnsembleSpec: encoding register does not match n_a");
    }
    if (hidden.kind == HiddenEnsemble::Kind::Fixed) {
        if (hidden.states.empty()) {
            throw std::invalid_argument("EnsembleSpec: empty hidden-state list");
        }
        for (const auto &s : hidden.states) {
            if (s.qubit_count() != reservoir.n_h) {
                throw DimensionError("EnsembleSpec: hidden state does not match n_h");
            }
        }
    }
}

DensityMatrix draw_input(const InputEnsemble &ens, int n_a, CounterRng &rng) {
    switch (ens.kind) {
        case InputEnsemble::Kind::HaarPure:
            return sample_haar_pure_state(n_a, rng);
        case InputEnsemble::Kind::FixedList:
            return ens.states[rng.below(ens.states.size())];
        case InputEnsemble::Kind::ClassicalUniform:
            return encode(rng.uniform(), ens.encoding);
    }
    throw std::logic_error("draw_input: unknown ensemble");
}

DensityMatrix draw_hidden(const HiddenEnsemble &ens, int n_h, CounterRng &rng) {
    if (ens.kind == HiddenEnsemble::Kind::HaarPure) {
        return sample_haar_pure_state(n_h, rng);
    }
    if (ens.states.size() == 1) {
        return ens.states[0];
    }
    return ens.states[rng.below(ens.states.size())];
}

DensityMatrix sample_full_rank_state(int n, CounterRng &rng) {
    Eigen::Index d = Eigen::Index{1} << n;
    Matrix g(d, d);
    for (Eigen::Index j = 0; j < d; j++) {
        for (Eigen::Index i = 0; i < d; i++) {
            double re = rng.normal();
            double im = rng.normal();
            g(i, j) = cplx(re, im);
        }
    }
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho = (rho + rho.adjoint()) * 0.5;
    return DensityMatrix::unchecked(std::move(rho));
}

std::optional<double> variance_reference(int n_a, int n_h, const PauliString &obs) {
    if (obs.is_identity()) {
        return std::nullopt;
    }
    return 1.0 / (dim_of(n_a) * dim_of(n_h) * dim_of(n_h));
}

double delta_temp(int t, int n_a, int n_h, const PauliString &obs) {
    check_t(t);
    double d_a = dim_of(n_a);
    double d_h = dim_of(n_h);
    double tr_o2 = dim_of(obs.qubit_count());
    return tr_o2 / (std::pow(d_a, t + 1) * d_h * d_h);
}

double saturation_ratio(int t, int n_a, int n_h) {
    check_t(t);
    return dim_of(n_h) / std::pow(dim_of(n_a), t - 1);
}

double memory_reference(int t, int n_a, int n_h) {
    check_t(t);
    return 1.0 / (dim_of(n_h) * std::pow(dim_of(n_a), t));
}

SampleStats sample_stats(const std::vector<double> &values) {
    SampleStats s;
    s.n = static_cast<long long>(values.size());
    if (s.n == 0) {
        return s;
    }
    double sum = 0;
    for (double v : values) {
        sum += v;
    }
    s.mean = sum / s.n;
    if (s.n < 2) {
        return s;
    }
    double m2 = 0;
    double m4 = 0;
    for (double v : values) {
        double d = v - s.mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    double n = static_cast<double>(s.n);
    s.variance = m2 / (n - 1);
    m4 /= n;
    double var_of_var = (m4 - s.variance * s.variance * (n - 3) / (n - 1)) / n;
    s.variance_se = std::sqrt(std::max(0.0, var_of_var));
    s.mean_se = std::sqrt(s.variance / n);
    return s;
}

std::vector<MetricsRow> variance_curve(const EnsembleSpec &spec, int t_max, const PauliString &obs, std::uint64_t seed) {
    spec.validate();
    check_t(t_max);
    check_obs(obs, spec.reservoir.n());
    const ReservoirSpec &res = spec.reservoir;
    QrpConfig cfg = engine_config(res, spec.inter_step_noise);

    CounterRng in_rng(SeedPath{seed, 0, "inputs"});
    std::vector<DensityMatrix> inputs = draw_inputs(spec.inputs, res.n_a, t_max, in_rng);
    CounterRng h_rng(SeedPath{seed, 0, "hidden"});
    DensityMatrix rho_h0 = draw_hidden(spec.hidden, res.n_h, h_rng);

    auto n_r = static_cast<size_t>(spec.reservoir_samples);
    std::vector<std::vector<double>> out(n_r, std::vector<double>(static_cast<size_t>(t_max)));
    parallel_for(n_r, spec.threads, [&](size_t r) {
        ReservoirChannel channel = materialize(res, SeedPath{seed, r, "reservoir"});
        QrpState state = qrp_init(rho_h0, res.n_h);
        for (int t = 1; t <= t_max; t++) {
            state = qrp_step(state, inputs[t - 1], cfg, channel);
            out[r][t - 1] = output(state, obs);
        }
    });

    std::vector<MetricsRow> rows;
    for (int t = 1; t <= t_max; t++) {
        std::vector<double> col;
        col.reserve(n_r);
        for (const auto &v : out) {
            col.push_back(v[t - 1]);
        }
        SampleStats st = sample_stats(col);
        MetricsRow row = base_row("variance", res, t, seed);
        row.estimate = st.variance;
        row.std_error = st.variance_se;
        row.n_samples = st.n;
        row.analytic_ref = variance_reference(res.n_a, res.n_h, obs);
        rows.push_back(row);
    }
    return rows;
}

MetricsRow variance_over_reservoirs(const EnsembleSpec &spec, int t, const PauliString &obs, std::uint64_t seed) {
    return variance_curve(spec, t, obs, seed).back();
}

MemoryCurve memory_indicator_input_curve(const EnsembleSpec &spec, int tau, int t_max, const PauliString &obs,
                                         std::uint64_t seed) {
    spec.validate();
    check_t(t_max);
    check_t(tau);
    check_obs(obs, spec.reservoir.n());
    const ReservoirSpec &res = spec.reservoir;
    QrpConfig cfg = engine_config(res, spec.inter_step_noise);
    int last = tau + t_max - 1;

    auto n_r = static_cast<size_t>(spec.reservoir_samples);
    auto n_k = static_cast<size_t>(spec.inner_samples);
    std::vector<std::vector<double>> per_r(n_r, std::vector<double>(static_cast<size_t>(t_max)));
    parallel_for(n_r, spec.threads, [&](size_t r) {
        ReservoirChannel channel = materialize(res, SeedPath{seed, r, "reservoir"});
        CounterRng in_rng(SeedPath{seed, r, "inputs"});
        std::vector<DensityMatrix> inputs = draw_inputs(spec.inputs, res.n_a, last, in_rng);
        CounterRng h_rng(SeedPath{seed, r, "hidden"});
        QrpState prefix = qrp_init(draw_hidden(spec.hidden, res.n_h, h_rng), res.n_h);
        for (int step = 1; step < tau; step++) {
            prefix = qrp_step(prefix, inputs[step - 1], cfg, channel);
        }
        CounterRng vary_rng(SeedPath{seed, r, "varied"});
        std::vector<std::vector<double>> vals(static_cast<size_t>(t_max), std::vector<double>(n_k));
        for (size_t k = 0; k < n_k; k++) {
            QrpState s = qrp_step(prefix, draw_input(spec.inputs, res.n_a, vary_rng), cfg, channel);
            vals[0][k] = output(s, obs);
            for (int t = 2; t <= t_max; t++) {
                s = qrp_step(s, inputs[tau + t - 2], cfg, channel);
                vals[t - 1][k] = output(s, obs);
            }
        }
        for (int t = 1; t <= t_max; t++) {
            per_r[r][t - 1] = unbiased_variance(vals[t - 1]);
        }
    });

    MemoryCurve curve;
    curve.rows = reduce_outer("memory-input", spec, per_r, t_max, seed);
    for (auto &row : curve.rows) {
        row.analytic_ref = memory_ref_for(row.t, res.n_a, res.n_h, obs);
    }
    curve.per_reservoir = std::move(per_r);
    return curve;
}

MetricsRow memory_indicator_input(const EnsembleSpec &spec, int tau, int t, const PauliString &obs, std::uint64_t seed) {
    return memory_indicator_input_curve(spec, tau, t, obs, seed).rows.back();
}

MemoryCurve memory_indicator_hidden_curve(const EnsembleSpec &spec, int t_max, const PauliString &obs,
                                          std::uint64_t seed) {
    spec.validate();
    check_t(t_max);
    check_obs(obs, spec.reservoir.n());
    const ReservoirSpec &res = spec.reservoir;
    QrpConfig cfg = engine_config(res, spec.inter_step_noise);

    auto n_r = static_cast<size_t>(spec.reservoir_samples);
    auto n_k = static_cast<size_t>(spec.inner_samples);
    std::vector<std::vector<double>> per_r(n_r, std::vector<double>(static_cast<size_t>(t_max)));
    parallel_for(n_r, spec.threads, [&](size_t r) {
        ReservoirChannel channel = materialize(res, SeedPath{seed, r, "reservoir"});
        CounterRng in_rng(SeedPath{seed, r, "inputs"});
        std::vector<DensityMatrix> inputs = draw_inputs(spec.inputs, res.n_a, t_max, in_rng);
        CounterRng vary_rng(SeedPath{seed, r, "varied-hidden"});
        std::vector<std::vector<double>> vals(static_cast<size_t>(t_max), std::vector<double>(n_k));
        for (size_t k = 0; k < n_k; k++) {
            QrpState s = qrp_init(draw_hidden(spec.hidden, res.n_h, vary_rng), res.n_h);
            for (int t = 1; t <= t_max; t++) {
                s = qrp_step(s, inputs[t - 1], cfg, channel);
                vals[t - 1][k] = output(s, obs);
            }
        }
        for (int t = 1; t <= t_max; t++) {
            per_r[r][t - 1] = unbiased_variance(vals[t - 1]);
        }
    });

    MemoryCurve curve;
    curve.rows = reduce_outer("memory-hidden", spec, per_r, t_max, seed);
    for (auto &row : curve.rows) {
        row.analytic_ref = memory_ref_for(row.t, res.n_a, res.n_h, obs);
    }
    curve.per_reservoir = std::move(per_r);
    return curve;
}

MetricsRow memory_indicator_hidden(const EnsembleSpec &spec, int t, const PauliString &obs, std::uint64_t seed) {
    return memory_indicator_hidden_curve(spec, t, obs, seed).rows.back();
}

std::vector<MetricsRow> pairwise_deviation_curve(const EnsembleSpec &spec, int tau, int t_max, const PauliString &obs,
                                                 std::uint64_t seed) {
    spec.validate();
    check_t(t_max);
    check_t(tau);
    check_obs(obs, spec.reservoir.n());
    const ReservoirSpec &res = spec.reservoir;
    QrpConfig cfg = engine_config(res, spec.inter_step_noise);
    int last = tau + t_max - 1;

    auto n_r = static_cast<size_t>(spec.reservoir_samples);
    auto n_k = static_cast<size_t>(spec.inner_samples);
    std::vector<std::vector<double>> per_r(n_r, std::vector<double>(static_cast<size_t>(t_max), 0.0));
    parallel_for(n_r, spec.threads, [&](size_t r) {
        ReservoirChannel channel = materialize(res, SeedPath{seed, r, "reservoir"});
        CounterRng in_rng(SeedPath{seed, r, "inputs"});
        std::vector<DensityMatrix> inputs = draw_inputs(spec.inputs, res.n_a, last, in_rng);
        CounterRng h_rng(SeedPath{seed, r, "hidden"});
        QrpState prefix = qrp_init(draw_hidden(spec.hidden, res.n_h, h_rng), res.n_h);
        for (int step = 1; step < tau; step++) {
            prefix = qrp_step(prefix, inputs[step - 1], cfg, channel);
        }
        CounterRng pair_rng(SeedPath{seed, r, "pairs"});
        for (size_t k = 0; k < n_k; k++) {
            DensityMatrix a = draw_input(spec.inputs, res.n_a, pair_rng);
            DensityMatrix b = draw_input(spec.inputs, res.n_a, pair_rng);
            QrpState sa = qrp_step(prefix, a, cfg, channel);
            QrpState sb = qrp_step(prefix, b, cfg, channel);
            for (int t = 1; t <= t_max; t++) {
                if (t > 1) {
                    sa = qrp_step(sa, inputs[tau + t - 2], cfg, channel);
                    sb = qrp_step(sb, inputs[tau + t - 2], cfg, channel);
                }
                double d = output(sa, obs) - output(sb, obs);
                per_r[r][t - 1] += d * d;
            }
        }
        for (auto &v : per_r[r]) {
            v /= static_cast<double>(n_k);
        }
    });

    std::vector<MetricsRow> rows = reduce_outer("pairwise", spec, per_r, t_max, seed);
    for (auto &row : rows) {
        auto ref = memory_ref_for(row.t, res.n_a, res.n_h, obs);
        if (ref) {
            row.analytic_ref = 4.0 * *ref;
        }
    }
    return rows;
}

MetricsRow pairwise_deviation(const EnsembleSpec &spec, int tau, int t, const PauliString &obs, std::uint64_t seed) {
    return pairwise_deviation_curve(spec, tau, t, obs, seed).back();
}

double unital_erasure_bound(int t, double q, double obs_norm, double s2_sum) {
    check_t(t);
    double b = 1.0 / std::numbers::ln2;
    return obs_norm * std::sqrt(2.0 * std::numbers::ln2 * std::pow(q, (t - 1) * b)) * std::sqrt(std::max(0.0, s2_sum));
}

std::vector<ErasurePoint> unital_erasure(int t_max, const PauliNoise &noise, const ReservoirSpec &reservoir,
                                         const InitialCondition &rho, const InitialCondition &sigma,
                                         const PauliString &obs, const SeedPath &seed) {
    check_t(t_max);
    reservoir.validate();
    check_obs(obs, reservoir.n());
    if (noise.q() > 1.0) {
        throw std::invalid_argument("unital_erasure: q must not exceed 1");
    }
    for (const auto *ic : {&rho, &sigma}) {
        if (ic->rho_a1.qubit_count() != reservoir.n_a || ic->rho_h0.qubit_count() != reservoir.n_h) {
            throw DimensionError("unital_erasure: initial condition does not match the register");
        }
    }
    double s2 = sandwiched_renyi2(rho.rho_a1, sigma.rho_a1) + sandwiched_renyi2(rho.rho_h0, sigma.rho_h0);
    ReservoirChannel channel = materialize(reservoir, seed.with(seed.sample_index, "reservoir"));
    CounterRng in_rng(seed.with(seed.sample_index, "inputs"));
    QrpConfig cfg = engine_config(reservoir, noise);

    QrpState a = qrp_step(qrp_init(rho.rho_h0, reservoir.n_h), rho.rho_a1, cfg, channel);
    QrpState b = qrp_step(qrp_init(sigma.rho_h0, reservoir.n_h), sigma.rho_a1, cfg, channel);
    double norm = operator_norm(obs);
    std::vector<ErasurePoint> out;
    for (int t = 1; t <= t_max; t++) {
        if (t > 1) {
            DensityMatrix in = sample_haar_pure_state(reservoir.n_a, in_rng);
            a = qrp_step(a, in, cfg, channel);
            b = qrp_step(b, in, cfg, channel);
        }
        out.push_back(ErasurePoint{t, std::abs(output(a, obs) - output(b, obs)), unital_erasure_bound(t, noise.q(), norm, s2)});
    }
    return out;
}

std::vector<double> nonunital_erasure_trajectory(int t_max, const ReservoirSpec &reservoir, const InitialCondition &rho,
                                                 const InitialCondition &sigma, const SeedPath &seed) {
    check_t(t_max);
    reservoir.validate();
    const auto *ni = std::get_if<NoiseInterleaved>(&reservoir.kind);
    if (ni == nullptr) {
        throw std::invalid_argument("nonunital_erasure_trajectory: reservoir must be noise-interleaved");
    }
    const auto *layered = std::get_if<AlternatingLayered>(&ni->inner);
    if (layered == nullptr) {
        throw std::invalid_argument("nonunital_erasure_trajectory: inner dynamics must be alternating layers");
    }
    if (!(contraction_chi(ni->channel) < 1.0 - 1e-12)) {
        throw std::invalid_argument("nonunital_erasure_trajectory: channel must be non-unitary (chi < 1)");
    }
    if (layered->layers < 2 * reservoir.n()) {
        throw std::invalid_argument("nonunital_erasure_trajectory: need L >= 2 (n_a + n_h)");
    }
    for (const auto *ic : {&rho, &sigma}) {
        if (ic->rho_a1.qubit_count() != reservoir.n_a || ic->rho_h0.qubit_count() != reservoir.n_h) {
            throw DimensionError("nonunital_erasure_trajectory: initial condition does not match the register");
        }
    }
    ReservoirChannel channel = materialize(reservoir, seed.with(seed.sample_index, "reservoir"));
    CounterRng in_rng(seed.with(seed.sample_index, "inputs"));
    QrpConfig cfg = engine_config(reservoir, std::nullopt);

    QrpState a = qrp_step(qrp_init(rho.rho_h0, reservoir.n_h), rho.rho_a1, cfg, channel);
    QrpState b = qrp_step(qrp_init(sigma.rho_h0, reservoir.n_h), sigma.rho_a1, cfg, channel);
    std::vector<double> out;
    for (int t = 1; t <= t_max; t++) {
        if (t > 1) {
            DensityMatrix in = sample_haar_pure_state(reservoir.n_a, in_rng);
            a = qrp_step(a, in, cfg, channel);
            b = qrp_step(b, in, cfg, channel);
        }
        out.push_back(trace_distance(*a.full_last, *b.full_last));
    }
    return out;
}

double fit_log_slope(const std::vector<double> &values) {
    if (values.size() < 2) {
        throw std::invalid_argument("fit_log_slope: need at least two points");
    }
    double n = static_cast<double>(values.size());
    double sx = 0;
    double sy = 0;
    for (size_t k = 0; k < values.size(); k++) {
        sx += static_cast<double>(k);
        sy += std::log(std::max(values[k], 1e-300));
    }
    double mx = sx / n;
    double my = sy / n;
    double sxy = 0;
    double sxx = 0;
    for (size_t k = 0; k < values.size(); k++) {
        double dx = static_cast<double>(k) - mx;
        sxy += dx * (std::log(std::max(values[k], 1e-300)) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

double hypothesis_bound(double eps, int n) {
    return 0.5 + n * std::abs(eps) / 2.0;
}

namespace {

double bernoulli_loglik(double p, long long k, long long n) {
    double ll = 0;
    if (k > 0) {
        if (p <= 0.0) {
            return -std::numeric_limits<double>::infinity();
        }
        ll += static_cast<double>(k) * std::log(p);
    }
    if (n - k > 0) {
        if (p >= 1.0) {
            return -std::numeric_limits<double>::infinity();
        }
        ll += static_cast<double>(n - k) * std::log1p(-p);
    }
    return ll;
}

}  // namespace

HypothesisResult hypothesis_power(double p0, double eps, int n, long long trials, std::uint64_t seed) {
    double p1 = p0 + eps;
    if (!(p0 >= 0.0 && p0 <= 1.0 && p1 >= 0.0 && p1 <= 1.0)) {
        throw std::invalid_argument("hypothesis_power: p0 and p0 + eps must lie in [0, 1]");
    }
    if (n < 1 || trials < 1) {
        throw std::invalid_argument("hypothesis_power: N and trials must be positive");
    }
    constexpr long long kBlock = 4096;
    long long blocks = (trials + kBlock - 1) / kBlock;
    std::vector<long long> wins(static_cast<size_t>(blocks), 0);
    parallel_for(static_cast<size_t>(blocks), 1, [&](size_t blk) {
        CounterRng rng(SeedPath{seed, blk, "hypothesis"});
        long long begin = static_cast<long long>(blk) * kBlock;
        long long end = std::min(trials, begin + kBlock);
        for (long long i = begin; i < end; i++) {
            bool h1 = rng.uniform() < 0.5;
            double p = h1 ? p1 : p0;
            long long k = 0;
            for (int j = 0; j < n; j++) {
                if (rng.uniform() < p) {
                    k++;
                }
            }
            double l0 = bernoulli_loglik(p0, k, n);
            double l1 = bernoulli_loglik(p1, k, n);
            bool guess1;
            if (l1 > l0) {
                guess1 = true;
            } else if (l1 < l0) {
                guess1 = false;
            } else {
                guess1 = rng.uniform() < 0.5;
            }
            if (guess1 == h1) {
                wins[blk]++;
            }
        }
    });
    long long total = 0;
    for (long long w : wins) {
        total += w;
    }
    return HypothesisResult{static_cast<double>(total) / static_cast<double>(trials), hypothesis_bound(eps, n)};
}

double chebyshev_tail(double var, double delta) {
    if (!(delta > 0.0)) {
        throw std::invalid_argument("chebyshev_tail: delta must be positive");
    }
    return std::min(1.0, var / (delta * delta));
}

std::vector<double> omega_mean_outputs(const ReservoirChannel &channel, int n_a, const DensityMatrix &rho_h0,
                                       int t_max, const PauliString &obs) {
    check_t(t_max);
    check_obs(obs, channel.qubit_count());
    if (rho_h0.qubit_count() + n_a != channel.qubit_count()) {
        throw DimensionError("omega_mean_outputs: register mismatch");
    }
    DensityMatrix mixed = DensityMatrix::maximally_mixed(n_a);
    Matrix omega_h = rho_h0.matrix();
    std::vector<double> mu;
    for (int t = 1; t <= t_max; t++) {
        Matrix omega = channel.apply(kron(mixed.matrix(), omega_h));
        mu.push_back(pauli_trace(obs, omega).real());
        omega_h = trace_leading(omega, n_a);
    }
    return mu;
}

std::vector<NoisyEncodingPoint> noisy_encoding_trace(const ReservoirChannel &channel, const EncodingSpec &encoding,
                                                     const std::vector<double> &inputs, const DensityMatrix &rho_h0,
                                                     const PauliString &obs) {
    encoding.validate();
    if (encoding.scheme != EncodingSpec::Scheme::LayeredNoisy) {
        throw std::invalid_argument("noisy_encoding_trace: encoding must be layered-noisy");
    }
    int n_a = encoding.n_a;
    int n_h = rho_h0.qubit_count();
    int t_max = static_cast<int>(inputs.size());
    std::vector<double> mu = omega_mean_outputs(channel, n_a, rho_h0, t_max, obs);
    ReservoirSpec shape;
    shape.n_a = n_a;
    shape.n_h = n_h;
    QrpConfig cfg = engine_config(shape, std::nullopt);
    QrpState s = qrp_init(rho_h0, n_h);
    double norm = operator_norm(obs);
    std::vector<NoisyEncodingPoint> out;
    for (int t = 1; t <= t_max; t++) {
        s = qrp_step(s, encode_layered_noisy(inputs[t - 1], encoding), cfg, channel);
        out.push_back(NoisyEncodingPoint{t, output(s, obs), mu[t - 1],
                                         noisy_encoding_bound(t, encoding.channel.q(), encoding.layers, n_a, norm)});
    }
    return out;
}

}  // namespace qrp
