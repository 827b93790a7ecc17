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

// Acceptance checks. One PASS/FAIL line per criterion; exit status 1 if any selected check fails.
//
//   qrp_acceptance [--only A1,A4,...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qrp/qrp.h"

using namespace qrp;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Check {
    std::string id;
    std::string title;
    double limit_seconds;
    std::function<Outcome()> run;
};

int worker_threads() {
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

PauliString z_on(int q, int n) {
    return PauliString::single(n, q, 'Z');
}

// A1.
Outcome unrolling_identity() {
    Outcome o{true, ""};
    for (int t : {2, 3}) {
        double worst = compare_direct_vs_unrolled(20, t, 1001);
        o.pass = o.pass && worst < 1e-9;
        o.detail += "t=" + std::to_string(t) + " max|diff|=" + fmt("%.3g", worst) + " ";
    }
    return o;
}

EnsembleSpec haar_spec(int n_a, int n_h, int samples) {
    EnsembleSpec spec;
    spec.reservoir = ReservoirSpec{HaarGlobal{}, n_a, n_h};
    spec.reservoir_samples = samples;
    spec.hidden = HiddenEnsemble::zero(n_h);
    spec.threads = worker_threads();
    return spec;
}

// A2.
Outcome variance_saturation() {
    Outcome o{true, ""};
    for (int n_h : {2, 3}) {
        EnsembleSpec spec = haar_spec(1, n_h, 500);
        PauliString obs = z_on(0, 1 + n_h);
        MetricsRow row = variance_over_reservoirs(spec, 10, obs, 2002);
        double ref = *row.analytic_ref;
        double tol = std::max(3 * row.std_error, 0.25 * ref);
        bool ok = std::abs(row.estimate - ref) <= tol;
        o.pass = o.pass && ok;
        o.detail += "n_h=" + std::to_string(n_h) + " var=" + fmt("%.4g", row.estimate) + " ref=" + fmt("%.4g", ref) +
                    " tol=" + fmt("%.3g", tol) + " ";
    }
    return o;
}

// A3.
Outcome temporal_correction() {
    Outcome o{true, ""};
    const int n_a = 1;
    const int n_h = 3;
    EnsembleSpec spec = haar_spec(n_a, n_h, 1000);
    PauliString obs = z_on(0, n_a + n_h);
    std::vector<MetricsRow> rows = variance_curve(spec, 3, obs, 3003);
    double prev = INFINITY;
    for (const auto &row : rows) {
        double ref = *variance_reference(n_a, n_h, obs) + delta_temp(row.t, n_a, n_h, obs);
        double tol = std::max(3 * row.std_error, 0.3 * ref);
        bool ok = std::abs(row.estimate - ref) <= tol && row.estimate < prev;
        o.pass = o.pass && ok;
        prev = row.estimate;
        o.detail += "t=" + std::to_string(row.t) + " var=" + fmt("%.4g", row.estimate) + " ref=" + fmt("%.4g", ref) + " ";
    }
    return o;
}

constexpr int kMemoryTau = 1;
constexpr int kMemoryTMax = 6;

EnsembleSpec memory_spec(int n_a, int n_h) {
    EnsembleSpec spec = haar_spec(n_a, n_h, 400);
    spec.inner_samples = 32;
    return spec;
}

std::vector<double> estimates(const std::vector<MetricsRow> &rows) {
    std::vector<double> v;
    for (const auto &r : rows) {
        v.push_back(r.estimate);
    }
    return v;
}

// A4.
Outcome memory_decay() {
    Outcome o{true, ""};
    for (auto [n_a, n_h] : {std::pair{1, 1}, std::pair{2, 1}}) {
        EnsembleSpec spec = memory_spec(n_a, n_h);
        PauliString obs = z_on(0, n_a + n_h);
        MemoryCurve c = memory_indicator_input_curve(spec, kMemoryTau, kMemoryTMax, obs, 4004);
        double slope = fit_log_slope(estimates(c.rows));
        double target = -std::log(std::ldexp(1.0, n_a));
        // Per-step contraction of the traceless hidden part under one Haar step, for comparison.
        double d_a = std::ldexp(1.0, n_a);
        double d_h = std::ldexp(1.0, n_h);
        double finite_d = std::log(d_a * (d_h * d_h - 1) / (d_a * d_a * d_h * d_h - 1));
        bool slope_ok = std::abs(slope - target) <= 0.1 * std::abs(target);
        bool bound_ok = true;
        for (const auto &row : c.rows) {
            bound_ok = bound_ok && row.estimate <= 3 * memory_reference(row.t, n_a, n_h);
        }
        o.pass = o.pass && slope_ok && bound_ok;
        o.detail += "(n_a=" + std::to_string(n_a) + ",n_h=" + std::to_string(n_h) + ") slope=" + fmt("%.4f", slope) +
                    " target=" + fmt("%.4f", target) + " finite-d=" + fmt("%.4f", finite_d) + (slope_ok ? "" : " [slope off]") +
                    (bound_ok ? " bound ok " : " [bound violated] ");
    }
    return o;
}

// A5.
Outcome pairwise_bound() {
    Outcome o{true, ""};
    for (auto [n_a, n_h] : {std::pair{1, 1}, std::pair{2, 1}}) {
        EnsembleSpec spec = memory_spec(n_a, n_h);
        PauliString obs = z_on(0, n_a + n_h);
        MemoryCurve mem = memory_indicator_input_curve(spec, kMemoryTau, kMemoryTMax, obs, 4004);
        std::vector<MetricsRow> pw = pairwise_deviation_curve(spec, kMemoryTau, kMemoryTMax, obs, 4004);
        double worst = -INFINITY;
        for (size_t i = 0; i < pw.size(); i++) {
            double se = std::hypot(pw[i].std_error, 4 * mem.rows[i].std_error);
            double excess = pw[i].estimate - 4 * mem.rows[i].estimate - 3 * se;
            worst = std::max(worst, excess);
            o.pass = o.pass && excess <= 0;
        }
        o.detail += "(n_a=" + std::to_string(n_a) + ",n_h=" + std::to_string(n_h) +
                    ") max(pair - 4M - 3se)=" + fmt("%.3g", worst) + " ";
    }
    return o;
}

// A6.
Outcome unital_erasure_check() {
    Outcome o{true, ""};
    const int n_a = 2;
    const int n_h = 2;
    const int pairs = 200;
    const int t_max = 10;
    ReservoirSpec res{HaarGlobal{}, n_a, n_h};
    PauliString obs = z_on(0, n_a + n_h);
    for (double q : {0.8, 0.9, 0.95}) {
        std::vector<std::vector<ErasurePoint>> runs(pairs);
        parallel_for(pairs, worker_threads(), [&](size_t i) {
            CounterRng rng(SeedPath{6006, i, "initial"});
            InitialCondition a{sample_full_rank_state(n_h, rng), sample_full_rank_state(n_a, rng)};
            InitialCondition b{sample_full_rank_state(n_h, rng), sample_full_rank_state(n_a, rng)};
            runs[i] = unital_erasure(t_max, PauliNoise::depolarizing(q), res, a, b, obs, SeedPath{6006, i, "erasure"});
        });
        long long violations = 0;
        std::vector<double> mean(t_max, 0.0);
        for (const auto &run : runs) {
            for (int t = 0; t < t_max; t++) {
                violations += run[t].delta_o > run[t].bound;
                mean[t] += run[t].delta_o / pairs;
            }
        }
        double slope = fit_log_slope(mean);
        double limit = 0.9 * 0.5 * std::log(q) / std::log(2.0);
        bool ok = violations == 0 && slope <= limit;
        o.pass = o.pass && ok;
        o.detail += "q=" + fmt("%.2f", q) + " violations=" + std::to_string(violations) + " slope=" + fmt("%.4f", slope) +
                    " limit=" + fmt("%.4f", limit) + " ";
    }
    return o;
}

// A7.
Outcome nonunital_erasure_check() {
    const int n_a = 1;
    const int n_h = 3;
    const int pairs = 50;
    const int t_max = 15;
    ReservoirSpec res{NoiseInterleaved{AlternatingLayered{2 * (n_a + n_h)}, SingleQubitChannel::amplitude_damping(0.1),
                                       NoisePlacement::BeforeEachLayer},
                      n_a, n_h};
    std::vector<double> ratios(pairs);
    parallel_for(pairs, worker_threads(), [&](size_t i) {
        CounterRng rng(SeedPath{7007, i, "initial"});
        InitialCondition a{sample_full_rank_state(n_h, rng), sample_full_rank_state(n_a, rng)};
        InitialCondition b{sample_full_rank_state(n_h, rng), sample_full_rank_state(n_a, rng)};
        std::vector<double> traj = nonunital_erasure_trajectory(t_max, res, a, b, SeedPath{7007, i, "trajectory"});
        ratios[i] = std::exp(fit_log_slope(traj));
    });
    long long decaying = std::count_if(ratios.begin(), ratios.end(), [](double r) { return r < 1.0; });
    double frac = static_cast<double>(decaying) / pairs;
    double median = ratios[0];
    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    median = sorted[pairs / 2];
    return Outcome{frac >= 0.95, "decaying pairs=" + std::to_string(decaying) + "/" + std::to_string(pairs) +
                                     " median ratio=" + fmt("%.4f", median) + " max ratio=" + fmt("%.4f", sorted.back())};
}

// A8.
Outcome layered_vs_haar() {
    Outcome o{true, ""};
    double prev = -INFINITY;
    for (int n_h = 2; n_h <= 5; n_h++) {
        PauliString obs = z_on(0, 1 + n_h);
        EnsembleSpec haar = haar_spec(1, n_h, 400);
        EnsembleSpec layered = haar;
        layered.reservoir = ReservoirSpec{AlternatingLayered{2}, 1, n_h};
        double vh = variance_over_reservoirs(haar, 5, obs, 8008).estimate;
        double vl = variance_over_reservoirs(layered, 5, obs, 8008).estimate;
        double ratio = vl / vh;
        o.pass = o.pass && ratio >= prev;
        prev = ratio;
        o.detail += "n_h=" + std::to_string(n_h) + " ratio=" + fmt("%.3f", ratio) + " ";
    }
    return o;
}

double memory_rate(const ReservoirSpec &res, const PauliString &obs) {
    EnsembleSpec spec = haar_spec(res.n_a, res.n_h, 400);
    spec.reservoir = res;
    spec.inner_samples = 32;
    MemoryCurve c = memory_indicator_input_curve(spec, kMemoryTau, kMemoryTMax, obs, 9009);
    return -fit_log_slope(estimates(c.rows));
}

// A9.
Outcome ising_ordering() {
    const int n_a = 1;
    const int n_h = 2;
    PauliString obs = z_on(n_a + n_h - 1, n_a + n_h);
    double haar = memory_rate(ReservoirSpec{HaarGlobal{}, n_a, n_h}, obs);
    Outcome o{true, "haar rate=" + fmt("%.3f", haar) + " "};
    double prev = -INFINITY;
    for (double dt : {1.0, 3.0, 10.0}) {
        double rate = memory_rate(ReservoirSpec{Ising{-1, 0.7, 1.5, dt}, n_a, n_h}, obs);
        o.pass = o.pass && rate >= prev && rate <= haar;
        prev = rate;
        o.detail += "dt=" + fmt("%g", dt) + " rate=" + fmt("%.3f", rate) + " ";
    }
    return o;
}

// A10.
Outcome hypothesis_check() {
    const long long trials = 100000;
    Outcome o{true, ""};
    for (auto [n, eps] : {std::pair{1, 0.5}, std::pair{100, 0.001}, std::pair{1000, 0.001}}) {
        HypothesisResult r = hypothesis_power(0.5, eps, n, trials, 10010);
        bool ok = r.empirical_success <= r.bound + 4 / std::sqrt(static_cast<double>(trials));
        if (n == 1) {
            ok = ok && std::abs(r.empirical_success - 0.75) <= 0.005;
        }
        o.pass = o.pass && ok;
        o.detail += "(N=" + std::to_string(n) + ",eps=" + fmt("%g", eps) + ") success=" + fmt("%.4f", r.empirical_success) +
                    " bound=" + fmt("%.4f", r.bound) + " ";
    }
    return o;
}

// A11.
Outcome noisy_encoding_check() {
    const int n_a = 2;
    const int n_h = 2;
    const int instances = 100;
    const int t_max = 6;
    PauliString obs = z_on(0, n_a + n_h);
    Outcome o{true, ""};
    for (int layers : {1, 2, 4}) {
        EncodingSpec enc = EncodingSpec::layered_noisy(n_a, layers, PauliNoise::depolarizing(0.9));
        std::vector<double> worst(instances, 0.0);
        parallel_for(instances, worker_threads(), [&](size_t i) {
            ReservoirChannel ch = materialize(ReservoirSpec{HaarGlobal{}, n_a, n_h}, SeedPath{11011, i, "reservoir"});
            CounterRng rng(SeedPath{11011, i, "inputs"});
            std::vector<double> s(t_max);
            for (auto &x : s) {
                x = rng.uniform();
            }
            for (const auto &p : noisy_encoding_trace(ch, enc, s, DensityMatrix::zero_state(n_h), obs)) {
                worst[i] = std::max(worst[i], std::abs(p.output - p.mean) / p.bound);
            }
        });
        double w = *std::max_element(worst.begin(), worst.end());
        o.pass = o.pass && w <= 1.0;
        o.detail += "L=" + std::to_string(layers) + " max|dev|/bound=" + fmt("%.3f", w) + " ";
    }
    return o;
}

// A12.
Outcome training_sanity() {
    QrpConfig small;
    small.reservoir = ReservoirSpec{HaarGlobal{}, 1, 2};
    small.observables = all_pauli_strings(3);
    DelayTaskConfig task{20, 600, 300, 1, std::nullopt};
    DelayTaskResult a = run_delay_task(small, task, 12012);
    bool small_ok = a.test_mse < 0.5 * a.baseline;

    const int n = 8;
    QrpConfig large;
    large.reservoir = ReservoirSpec{HaarGlobal{}, 1, n - 1};
    large.shots = 100;
    large.observables = local_pauli_features(n);
    task.train_steps = 800;
    DelayTaskResult b = run_delay_task(large, task, 12013);
    double ratio = b.test_mse / b.baseline;
    bool large_ok = std::abs(ratio - 1.0) <= 0.1;
    return Outcome{small_ok && large_ok, "n=3 mse/baseline=" + fmt("%.3f", a.test_mse / a.baseline) +
                                             " n=8 N=100 mse/baseline=" + fmt("%.3f", ratio)};
}

std::vector<Check> all_checks() {
    return {
        {"A1", "unrolled output equals recursion", 30, unrolling_identity},
        {"A2", "variance saturates at 1/(d_a d_h^2)", 300, variance_saturation},
        {"A3", "temporal correction 1/(d_a^t d_h)", 600, temporal_correction},
        {"A4", "memory indicator decays as 1/(d_h d_a^t)", 600, memory_decay},
        {"A5", "pairwise deviation at most 4 M_a", 600, pairwise_bound},
        {"A6", "unital-noise erasure bound", 300, unital_erasure_check},
        {"A7", "non-unital erasure decay", 300, nonunital_erasure_check},
        {"A8", "layered/Haar variance ratio grows with n_h", 600, layered_vs_haar},
        {"A9", "Ising memory decay ordered in dt and below Haar", 600, ising_ordering},
        {"A10", "hypothesis-test success bound", 60, hypothesis_check},
        {"A11", "noisy-encoding concentration bound", 120, noisy_encoding_check},
        {"A12", "delay-task training sanity", 600, training_sanity},
    };
}

std::vector<std::string> split(const std::string &s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

}  // namespace

int main(int argc, char **argv) {
    std::vector<std::string> only;
    for (int i = 1; i < argc; i++) {
        std::string arg = argv[i];
        if (arg == "--only" && i + 1 < argc) {
            only = split(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--only A1,A2,...]\n", argv[0]);
            return 2;
        }
    }
    std::vector<Check> checks = all_checks();
    for (const auto &id : only) {
        if (std::none_of(checks.begin(), checks.end(), [&](const Check &c) { return c.id == id; })) {
            std::fprintf(stderr, "unknown check %s\n", id.c_str());
            return 2;
        }
    }
    int failures = 0;
    for (const auto &c : checks) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) {
            continue;
        }
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = Outcome{false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_time = secs <= c.limit_seconds;
        bool pass = o.pass && in_time;
        failures += !pass;
        std::printf("%-4s %s  %s | %s | %.1fs (limit %.0fs)%s\n", c.id.c_str(), pass ? "PASS" : "FAIL", c.title.c_str(),
                    o.detail.c_str(), secs, c.limit_seconds, in_time ? "" : " [over time]");
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
