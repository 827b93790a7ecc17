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

#include "experiments.h"

#include <algorithm>
#include <cmath>
#include <optional>

#include "qrp/parallel.h"
#include "qrp/training.h"
#include "qrp/unroll.h"

namespace qrp_lab {

using namespace qrp;

namespace {

struct Variant {
    ReservoirSpec spec;
    std::optional<double> param;
};

void require(bool cond, const std::string &msg) {
    if (!cond) {
        throw ConfigError(msg);
    }
}

std::string register_label(int n_a, int n_h) {
    return "n_a=" + std::to_string(n_a) + " n_h=" + std::to_string(n_h);
}

PauliString observable_for(const ExperimentConfig &cfg, int n) {
    if (cfg.observable.empty()) {
        return PauliString::single(n, 0, 'Z');
    }
    PauliString obs = PauliString::identity(1);
    try {
        obs = PauliString::from_str(cfg.observable);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("observable: ") + e.what());
    }
    require(obs.qubit_count() == n, "observable '" + cfg.observable + "' does not act on " + std::to_string(n) +
                                       " qubits");
    return obs;
}

void check_spec(const ReservoirSpec &spec) {
    try {
        spec.validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("reservoir: ") + e.what());
    }
}

std::vector<Variant> variants(const ExperimentConfig &cfg, int n_a, int n_h) {
    std::vector<Variant> out;
    if (cfg.reservoir == "haar") {
        out.push_back({ReservoirSpec{HaarGlobal{}, n_a, n_h}, std::nullopt});
    } else if (cfg.reservoir == "layered") {
        std::vector<int> layers = cfg.layers.empty() ? std::vector<int>{2} : cfg.layers;
        for (int l : layers) {
            out.push_back({ReservoirSpec{AlternatingLayered{l}, n_a, n_h}, static_cast<double>(l)});
        }
    } else {
        for (double dt : cfg.dt) {
            out.push_back({ReservoirSpec{Ising{cfg.J, cfg.Bx, cfg.Bz, dt}, n_a, n_h}, dt});
        }
    }
    for (const auto &v : out) {
        check_spec(v.spec);
    }
    return out;
}

ReservoirSpec single_variant(const ExperimentConfig &cfg, int n_a, int n_h) {
    std::vector<Variant> v = variants(cfg, n_a, n_h);
    require(v.size() == 1, cfg.experiment + " sweeps its own parameter; give a single layers or dt value");
    return v[0].spec;
}

EnsembleSpec ensemble(const ExperimentConfig &cfg, const ReservoirSpec &spec, int threads) {
    EnsembleSpec e;
    e.reservoir = spec;
    e.reservoir_samples = cfg.reservoir_samples;
    e.inner_samples = cfg.inner_samples;
    e.inputs = cfg.inputs == "haar" ? InputEnsemble::haar() : InputEnsemble::classical(EncodingSpec::exponential(spec.n_a));
    e.hidden = cfg.hidden == "haar" ? HiddenEnsemble::haar() : HiddenEnsemble::zero(spec.n_h);
    if (cfg.inter_step_q) {
        e.inter_step_noise = PauliNoise::depolarizing(*cfg.inter_step_q);
    }
    e.threads = threads;
    try {
        e.validate();
    } catch (const std::invalid_argument &err) {
        throw ConfigError(std::string("ensemble: ") + err.what());
    }
    return e;
}

std::vector<MetricsRow> tag(std::vector<MetricsRow> rows, const std::string &experiment, std::optional<double> param) {
    for (auto &r : rows) {
        r.experiment = experiment;
        r.param = param;
    }
    return rows;
}

std::vector<MetricsRow> rename(std::vector<MetricsRow> rows, const std::string &experiment) {
    for (auto &r : rows) {
        r.experiment = experiment;
    }
    return rows;
}

MetricsRow summary_row(const std::string &experiment, int n_a, int n_h, int t, std::optional<double> param,
                       const std::vector<double> &values, std::optional<double> ref, std::uint64_t seed) {
    SampleStats st = sample_stats(values);
    MetricsRow r;
    r.experiment = experiment;
    r.n_a = n_a;
    r.n_h = n_h;
    r.t = t;
    r.param = param;
    r.estimate = st.mean;
    r.std_error = st.mean_se;
    r.n_samples = st.n;
    r.analytic_ref = ref;
    r.seed = seed;
    return r;
}

template <class F>
void for_registers(const ExperimentConfig &cfg, F &&f) {
    for (int n_a : cfg.n_a) {
        for (int n_h : cfg.n_h) {
            f(n_a, n_h);
        }
    }
}

void plan_variance(const ExperimentConfig &cfg, int threads, std::vector<Job> &jobs) {
    for_registers(cfg, [&](int n_a, int n_h) {
        PauliString obs = observable_for(cfg, n_a + n_h);
        for (const auto &v : variants(cfg, n_a, n_h)) {
            EnsembleSpec e = ensemble(cfg, v.spec, threads);
            int t_max = cfg.t_max;
            std::uint64_t seed = cfg.master_seed;
            std::optional<double> param = v.param;
            jobs.push_back({"variance " + v.spec.describe(),
                            [=] { return tag(variance_curve(e, t_max, obs, seed), "variance", param); }});
        }
    });
}

void plan_memory_input(const ExperimentConfig &cfg, int threads, std::vector<Job> &jobs) {
    for_registers(cfg, [&](int n_a, int n_h) {
        PauliString obs = observable_for(cfg, n_a + n_h);
        for (const auto &v : variants(cfg, n_a, n_h)) {
            EnsembleSpec e = ensemble(cfg, v.spec, threads);
            int tau = cfg.tau;
            int t_max = cfg.t_max;
            std::uint64_t seed = cfg.master_seed;
            std::optional<double> param = v.param;
            bool pairwise = cfg.include_pairwise;
            jobs.push_back({"memory-input " + v.spec.describe(), [=] {
                                std::vector<MetricsRow> rows =
                                    tag(memory_indicator_input_curve(e, tau, t_max, obs, seed).rows, "memory-input", param);
                                if (pairwise) {
                                    for (auto &r : tag(pairwise_deviation_curve(e, tau, t_max, obs, seed),
                                                       "memory-pairwise", param)) {
                                        rows.push_back(r);
                                    }
                                }
                                return rows;
                            }});
        }
    });
}

void plan_memory_hidden(const ExperimentConfig &cfg, int threads, std::vector<Job> &jobs) {
    for_registers(cfg, [&](int n_a, int n_h) {
        PauliString obs = observable_for(cfg, n_a + n_h);
        for (const auto &v : variants(cfg, n_a, n_h)) {
            EnsembleSpec e = ensemble(cfg, v.spec, threads);
            e.hidden = HiddenEnsemble::haar();
            int t_max = cfg.t_max;
            std::uint64_t seed = cfg.master_seed;
            std::optional<double> param = v.param;
            jobs.push_back({"memory-hidden " + v.spec.describe(), [=] {
                                return tag(memory_indicator_hidden_curve(e, t_max, obs, seed).rows, "memory-hidden",
                                           param);
                            }});
        }
    });
}

void plan_erasure_unital(const ExperimentConfig &cfg, int threads, std::vector<Job> &jobs) {
    std::vector<PauliNoise> noises;
    try {
        if (cfg.qx) {
            noises.emplace_back(*cfg.qx, *cfg.qy, *cfg.qz);
        } else {
            for (double q : cfg.q) {
                noises.push_back(PauliNoise::depolarizing(q));
            }
        }
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("noise: ") + e.what());
    }
    for_registers(cfg, [&](int n_a, int n_h) {
        PauliString obs = observable_for(cfg, n_a + n_h);
        ReservoirSpec res = single_variant(cfg, n_a, n_h);
        for (const PauliNoise &noise : noises) {
            int pairs = cfg.pairs;
            int t_max = cfg.t_max;
            std::uint64_t seed = cfg.master_seed;
            jobs.push_back({"erasure-unital q=" + std::to_string(noise.q()) + " " + register_label(n_a, n_h), [=] {
                                std::vector<std::vector<ErasurePoint>> runs(pairs);
                                parallel_for(pairs, threads, [&](size_t i) {
                                    CounterRng rng(SeedPath{seed, i, "initial"});
                                    InitialCondition a{sample_full_rank_state(n_h, rng), sample_full_rank_state(n_a, rng)};
                                    InitialCondition b{sample_full_rank_state(n_h, rng), sample_full_rank_state(n_a, rng)};
                                    runs[i] = unital_erasure(t_max, noise, res, a, b, obs, SeedPath{seed, i, "erasure"});
                                });
                                std::vector<MetricsRow> rows;
                                for (int t = 1; t <= t_max; t++) {
                                    std::vector<double> delta;
                                    double bound = 0;
                                    for (const auto &run : runs) {
                                        delta.push_back(run[t - 1].delta_o);
                                        bound += run[t - 1].bound / pairs;
                                    }
                                    rows.push_back(
                                        summary_row("erasure-unital", n_a, n_h, t, noise.q(), delta, bound, seed));
                                }
                                return rows;
                            }});
        }
    });
}

void plan_erasure_nonunital(const ExperimentConfig &cfg, int threads, std::vector<Job> &jobs) {
    require(cfg.layers.size() <= 1, "erasure-nonunital takes a single layers value");
    for_registers(cfg, [&](int n_a, int n_h) {
        int n = n_a + n_h;
        int layers = cfg.layers.empty() ? 2 * n : cfg.layers[0];
        require(layers >= 2 * n, "erasure-nonunital needs layers >= 2 (n_a + n_h)");
        for (double gamma : cfg.gamma) {
            ReservoirSpec res{NoiseInterleaved{AlternatingLayered{layers}, SingleQubitChannel::amplitude_damping(gamma),
                                               NoisePlacement::BeforeEachLayer},
                              n_a, n_h};
            check_spec(res);
            require(gamma > 0, "erasure-nonunital needs gamma > 0");
            int pairs = cfg.pairs;
            int t_max = cfg.t_max;
            std::uint64_t seed = cfg.master_seed;
            jobs.push_back({"erasure-nonunital gamma=" + std::to_string(gamma) + " " + register_label(n_a, n_h), [=] {
                                std::vector<std::vector<double>> runs(pairs);
                                parallel_for(pairs, threads, [&](size_t i) {
                                    CounterRng rng(SeedPath{seed, i, "initial"});
                                    InitialCondition a{sample_full_rank_state(n_h, rng), sample_full_rank_state(n_a, rng)};
                                    InitialCondition b{sample_full_rank_state(n_h, rng), sample_full_rank_state(n_a, rng)};
                                    runs[i] = nonunital_erasure_trajectory(t_max, res, a, b, SeedPath{seed, i, "trajectory"});
                                });
                                std::vector<MetricsRow> rows;
                                for (int t = 1; t <= t_max; t++) {
                                    std::vector<double> d;
                                    for (const auto &run : runs) {
                                        d.push_back(run[t - 1]);
                                    }
                                    rows.push_back(
                                        summary_row("erasure-nonunital", n_a, n_h, t, gamma, d, std::nullopt, seed));
                                }
                                return rows;
                            }});
        }
    });
}

void plan_encoding_noise(const ExperimentConfig &cfg, int threads, std::vector<Job> &jobs) {
    require(cfg.q.size() == 1, "encoding-noise sweeps layers; give a single q value");
    std::vector<int> layer_list = cfg.layers.empty() ? std::vector<int>{1, 2, 4} : cfg.layers;
    for_registers(cfg, [&](int n_a, int n_h) {
        PauliString obs = observable_for(cfg, n_a + n_h);
        ReservoirSpec res = ReservoirSpec{HaarGlobal{}, n_a, n_h};
        require(cfg.reservoir == "haar", "encoding-noise uses Haar reservoirs");
        double q = cfg.q[0];
        for (int layers : layer_list) {
            EncodingSpec enc = EncodingSpec::layered_noisy(n_a, layers, PauliNoise::depolarizing(q));
            try {
                enc.validate();
            } catch (const std::invalid_argument &e) {
                throw ConfigError(std::string("encoding: ") + e.what());
            }
            int instances = cfg.pairs;
            int t_max = cfg.t_max;
            std::uint64_t seed = cfg.master_seed;
            jobs.push_back({"encoding-noise L=" + std::to_string(layers) + " " + register_label(n_a, n_h), [=] {
                                std::vector<std::vector<NoisyEncodingPoint>> runs(instances);
                                parallel_for(instances, threads, [&](size_t i) {
                                    ReservoirChannel ch = materialize(res, SeedPath{seed, i, "reservoir"});
                                    CounterRng rng(SeedPath{seed, i, "inputs"});
                                    std::vector<double> s(t_max);
                                    for (auto &x : s) {
                                        x = rng.uniform();
                                    }
                                    runs[i] = noisy_encoding_trace(ch, enc, s, DensityMatrix::zero_state(n_h), obs);
                                });
                                std::vector<MetricsRow> rows;
                                for (int t = 1; t <= t_max; t++) {
                                    std::vector<double> dev;
                                    for (const auto &run : runs) {
                                        dev.push_back(std::abs(run[t - 1].output - run[t - 1].mean));
                                    }
                                    rows.push_back(summary_row("encoding-noise", n_a, n_h, t, layers, dev,
                                                               runs[0][t - 1].bound, seed));
                                }
                                return rows;
                            }});
        }
    });
}

void plan_layered(const ExperimentConfig &cfg, int threads, std::vector<Job> &jobs) {
    ExperimentConfig haar = cfg;
    haar.reservoir = "haar";
    plan_variance(haar, threads, jobs);
    ExperimentConfig layered = cfg;
    layered.reservoir = "layered";
    std::vector<Job> inner;
    plan_variance(layered, threads, inner);
    for (auto &j : inner) {
        auto run = j.run;
        jobs.push_back({j.label, [run] { return rename(run(), "layered"); }});
    }
}

void plan_ising(const ExperimentConfig &cfg, int threads, std::vector<Job> &jobs) {
    ExperimentConfig haar = cfg;
    haar.reservoir = "haar";
    haar.include_pairwise = false;
    plan_memory_input(haar, threads, jobs);
    ExperimentConfig ising = haar;
    ising.reservoir = "ising";
    std::vector<Job> inner;
    plan_memory_input(ising, threads, inner);
    for (auto &j : inner) {
        auto run = j.run;
        jobs.push_back({j.label, [run] { return rename(run(), "ising"); }});
    }
}

void plan_unroll_check(const ExperimentConfig &cfg, std::vector<Job> &jobs) {
    int trials = cfg.reservoir_samples;
    std::uint64_t seed = cfg.master_seed;
    int t_max = std::min(cfg.t_max, 3);
    jobs.push_back({"unroll-check", [=] {
                        MetricsRow r;
                        r.experiment = "unroll-check";
                        r.n_a = 1;
                        r.n_h = 1;
                        r.t = t_max;
                        for (int t = 1; t <= t_max; t++) {
                            r.estimate = std::max(r.estimate, compare_direct_vs_unrolled(trials, t, seed));
                        }
                        r.n_samples = trials;
                        r.analytic_ref = 0.0;
                        r.seed = seed;
                        return std::vector<MetricsRow>{r};
                    }});
}

void plan_train(const ExperimentConfig &cfg, std::vector<Job> &jobs) {
    for_registers(cfg, [&](int n_a, int n_h) {
        int n = n_a + n_h;
        QrpConfig qc;
        qc.reservoir = single_variant(cfg, n_a, n_h);
        qc.shots = cfg.shots;
        if (cfg.inter_step_q) {
            qc.inter_step_noise = PauliNoise::depolarizing(*cfg.inter_step_q);
        }
        if (cfg.features == "all") {
            require(n <= 6, "features 'all' needs n_a + n_h <= 6");
            qc.observables = all_pauli_strings(n);
        } else {
            qc.observables = local_pauli_features(n);
        }
        try {
            qc.validate();
        } catch (const std::invalid_argument &e) {
            throw ConfigError(std::string("train: ") + e.what());
        }
        DelayTaskConfig task{cfg.washout, cfg.train_steps, cfg.test_steps, cfg.delay, cfg.lambda};
        std::uint64_t seed = cfg.master_seed;
        std::optional<double> param;
        if (cfg.shots) {
            param = *cfg.shots;
        }
        jobs.push_back({"train " + register_label(n_a, n_h), [=] {
                            DelayTaskResult res = run_delay_task(qc, task, seed);
                            MetricsRow r;
                            r.experiment = "train";
                            r.n_a = n_a;
                            r.n_h = n_h;
                            r.t = task.delay;
                            r.param = param;
                            r.estimate = res.test_mse;
                            r.std_error = res.test_mse_se;
                            r.n_samples = res.test_points;
                            r.analytic_ref = res.baseline;
                            r.seed = seed;
                            return std::vector<MetricsRow>{r};
                        }});
    });
}

void plan_hypothesis(const ExperimentConfig &cfg, std::vector<Job> &jobs) {
    require(cfg.p0 >= 0 && cfg.p0 <= 1, "p0 must lie in [0, 1]");
    require(cfg.eps > 0 && cfg.p0 + cfg.eps <= 1, "eps must be positive with p0 + eps <= 1");
    double eps = cfg.eps;
    double p0 = cfg.p0;
    long long trials = cfg.trials;
    std::uint64_t seed = cfg.master_seed;
    for (int n : cfg.hypothesis_n) {
        jobs.push_back({"hypothesis N=" + std::to_string(n), [=] {
                            HypothesisResult h = hypothesis_power(p0, eps, n, trials, seed);
                            MetricsRow r;
                            r.experiment = "hypothesis";
                            r.param = n;
                            r.estimate = h.empirical_success;
                            r.std_error = std::sqrt(h.empirical_success * (1 - h.empirical_success) / trials);
                            r.n_samples = trials;
                            r.analytic_ref = h.bound;
                            r.seed = seed;
                            return std::vector<MetricsRow>{r};
                        }});
    }
}

}  // namespace

std::vector<Job> plan_experiment(const ExperimentConfig &cfg, int threads) {
    cfg.validate();
    std::vector<Job> jobs;
    const std::string &e = cfg.experiment;
    if (e == "variance") {
        plan_variance(cfg, threads, jobs);
    } else if (e == "memory-input") {
        plan_memory_input(cfg, threads, jobs);
    } else if (e == "memory-hidden") {
        plan_memory_hidden(cfg, threads, jobs);
    } else if (e == "erasure-unital") {
        plan_erasure_unital(cfg, threads, jobs);
    } else if (e == "erasure-nonunital") {
        plan_erasure_nonunital(cfg, threads, jobs);
    } else if (e == "encoding-noise") {
        plan_encoding_noise(cfg, threads, jobs);
    } else if (e == "layered") {
        plan_layered(cfg, threads, jobs);
    } else if (e == "ising") {
        plan_ising(cfg, threads, jobs);
    } else if (e == "unroll-check") {
        plan_unroll_check(cfg, jobs);
    } else if (e == "train") {
        plan_train(cfg, jobs);
    } else {
        plan_hypothesis(cfg, jobs);
    }
    return jobs;
}

}  // namespace qrp_lab
