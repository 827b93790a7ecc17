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

#include "config.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qrp/linalg.h"

namespace qrp_lab {

using nlohmann::json;

namespace {

template <class T>
T scalar(const json &v, const std::string &key) {
    try {
        if constexpr (std::is_same_v<T, double>) {
            if (!v.is_number()) {
                throw ConfigError("");
            }
        } else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
            if (!v.is_number_integer() && !v.is_number_unsigned()) {
                throw ConfigError("");
            }
        } else if constexpr (std::is_same_v<T, bool>) {
            if (!v.is_boolean()) {
                throw ConfigError("");
            }
        } else {
            if (!v.is_string()) {
                throw ConfigError("");
            }
        }
        return v.get<T>();
    } catch (const std::exception &) {
        throw ConfigError("config key '" + key + "' has the wrong type");
    }
}

template <class T>
std::vector<T> list(const json &v, const std::string &key) {
    std::vector<T> out;
    if (v.is_array()) {
        for (const auto &e : v) {
            out.push_back(scalar<T>(e, key));
        }
    } else {
        out.push_back(scalar<T>(v, key));
    }
    return out;
}

void require(bool cond, const std::string &msg) {
    if (!cond) {
        throw ConfigError(msg);
    }
}

void require_positive(const std::vector<int> &v, const std::string &key) {
    require(!v.empty(), "config key '" + key + "' must be non-empty");
    for (int x : v) {
        require(x >= 1, "config key '" + key + "' must contain positive integers");
    }
}

}  // namespace

const std::vector<std::string> &experiment_names() {
    static const std::vector<std::string> names{
        "variance", "memory-input", "memory-hidden", "erasure-unital", "erasure-nonunital", "encoding-noise",
        "layered",  "ising",        "unroll-check",  "train",          "hypothesis",
    };
    return names;
}

Format parse_format(const std::string &s) {
    if (s == "csv") {
        return Format::Csv;
    }
    if (s == "json") {
        return Format::Json;
    }
    throw ConfigError("format must be 'csv' or 'json'");
}

void ExperimentConfig::validate() const {
    const auto &names = experiment_names();
    require(std::find(names.begin(), names.end(), experiment) != names.end(), "unknown experiment '" + experiment + "'");
    require_positive(n_a, "n_a");
    require_positive(n_h, "n_h");
    for (int a : n_a) {
        for (int h : n_h) {
            require(a + h <= qrp::kMaxQubits, "n_a + n_h must not exceed 12");
        }
    }
    require(t_max >= 1, "t_max must be at least 1");
    require(tau >= 1, "tau must be at least 1");
    require(reservoir_samples >= 2 && inner_samples >= 2, "ensemble sizes must be at least 2");
    require(pairs >= 1, "pairs must be positive");
    require(reservoir == "haar" || reservoir == "layered" || reservoir == "ising",
            "reservoir must be 'haar', 'layered' or 'ising'");
    for (int l : layers) {
        require(l >= 1, "config key 'layers' must contain positive integers");
    }
    require(!dt.empty() && !q.empty() && !gamma.empty() && !hypothesis_n.empty(),
            "sweep lists must be non-empty");
    for (double v : dt) {
        require(std::isfinite(v), "dt must be finite");
    }
    for (double v : q) {
        require(v >= -1.0 / 3 && v <= 1.0, "q must lie in [-1/3, 1]");
    }
    for (double v : gamma) {
        require(v >= 0.0 && v <= 1.0, "gamma must lie in [0, 1]");
    }
    require(qx.has_value() == qy.has_value() && qy.has_value() == qz.has_value(), "qx, qy, qz must be given together");
    require(inputs == "haar" || inputs == "classical", "inputs must be 'haar' or 'classical'");
    require(hidden == "zero" || hidden == "haar", "hidden must be 'zero' or 'haar'");
    require(features == "all" || features == "local", "features must be 'all' or 'local'");
    require(!shots || *shots >= 1, "shots must be positive");
    require(trials >= 1, "trials must be positive");
    for (int n : hypothesis_n) {
        require(n >= 1, "hypothesis N must be positive");
    }
    require(washout >= 0 && train_steps >= 1 && test_steps >= 1, "training lengths must be positive");
    require(delay >= 0 && delay <= washout, "delay must lie in [0, washout]");
    require(!lambda || *lambda >= 0.0, "lambda must be non-negative");
    require(!threads || *threads >= 1, "threads must be at least 1");
}

ExperimentConfig parse_config(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    require(j.is_object(), "config must be a JSON object");

    ExperimentConfig c;
    static const std::set<std::string> kKeys{
        "experiment", "n_a",     "n_h",     "t_max",         "tau",           "reservoir_samples", "inner_samples",
        "pairs",      "reservoir", "layers", "J",             "Bx",            "Bz",                "dt",
        "q",          "qx",      "qy",      "qz",            "gamma",         "inter_step_q",      "observable",
        "inputs",     "hidden",  "include_pairwise", "shots", "N",            "eps",               "p0",
        "trials",     "washout", "train_steps", "test_steps", "delay",        "lambda",            "features",
        "seed",       "out",     "format",  "threads",
    };
    for (const auto &[key, value] : j.items()) {
        require(kKeys.count(key) == 1, "unknown config key '" + key + "'");
    }
    auto has = [&](const char *k) { return j.contains(k) && !j[k].is_null(); };
    if (has("experiment")) c.experiment = scalar<std::string>(j["experiment"], "experiment");
    if (has("n_a")) c.n_a = list<int>(j["n_a"], "n_a");
    if (has("n_h")) c.n_h = list<int>(j["n_h"], "n_h");
    if (has("t_max")) c.t_max = scalar<int>(j["t_max"], "t_max");
    if (has("tau")) c.tau = scalar<int>(j["tau"], "tau");
    if (has("reservoir_samples")) c.reservoir_samples = scalar<int>(j["reservoir_samples"], "reservoir_samples");
    if (has("inner_samples")) c.inner_samples = scalar<int>(j["inner_samples"], "inner_samples");
    if (has("pairs")) c.pairs = scalar<int>(j["pairs"], "pairs");
    if (has("reservoir")) c.reservoir = scalar<std::string>(j["reservoir"], "reservoir");
    if (has("layers")) c.layers = list<int>(j["layers"], "layers");
    if (has("J")) c.J = scalar<double>(j["J"], "J");
    if (has("Bx")) c.Bx = scalar<double>(j["Bx"], "Bx");
    if (has("Bz")) c.Bz = scalar<double>(j["Bz"], "Bz");
    if (has("dt")) c.dt = list<double>(j["dt"], "dt");
    if (has("q")) c.q = list<double>(j["q"], "q");
    if (has("qx")) c.qx = scalar<double>(j["qx"], "qx");
    if (has("qy")) c.qy = scalar<double>(j["qy"], "qy");
    if (has("qz")) c.qz = scalar<double>(j["qz"], "qz");
    if (has("gamma")) c.gamma = list<double>(j["gamma"], "gamma");
    if (has("inter_step_q")) c.inter_step_q = scalar<double>(j["inter_step_q"], "inter_step_q");
    if (has("observable")) c.observable = scalar<std::string>(j["observable"], "observable");
    if (has("inputs")) c.inputs = scalar<std::string>(j["inputs"], "inputs");
    if (has("hidden")) c.hidden = scalar<std::string>(j["hidden"], "hidden");
    if (has("include_pairwise")) c.include_pairwise = scalar<bool>(j["include_pairwise"], "include_pairwise");
    if (has("shots")) c.shots = scalar<int>(j["shots"], "shots");
    if (has("N")) c.hypothesis_n = list<int>(j["N"], "N");
    if (has("eps")) c.eps = scalar<double>(j["eps"], "eps");
    if (has("p0")) c.p0 = scalar<double>(j["p0"], "p0");
    if (has("trials")) c.trials = scalar<long long>(j["trials"], "trials");
    if (has("washout")) c.washout = scalar<int>(j["washout"], "washout");
    if (has("train_steps")) c.train_steps = scalar<int>(j["train_steps"], "train_steps");
    if (has("test_steps")) c.test_steps = scalar<int>(j["test_steps"], "test_steps");
    if (has("delay")) c.delay = scalar<int>(j["delay"], "delay");
    if (has("lambda")) c.lambda = scalar<double>(j["lambda"], "lambda");
    if (has("features")) c.features = scalar<std::string>(j["features"], "features");
    if (has("seed")) c.master_seed = scalar<std::uint64_t>(j["seed"], "seed");
    if (has("out")) c.out = scalar<std::string>(j["out"], "out");
    if (has("format")) c.format = parse_format(scalar<std::string>(j["format"], "format"));
    if (has("threads")) c.threads = scalar<int>(j["threads"], "threads");
    return c;
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace qrp_lab
