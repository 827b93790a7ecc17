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

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "config.h"
#include "experiments.h"
#include "output.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<int> threads;
};

int resolve_threads(const Flags &flags, const qrp_lab::ExperimentConfig &cfg) {
    if (flags.threads) {
        if (*flags.threads < 1) {
            throw qrp_lab::ConfigError("--threads must be at least 1");
        }
        return *flags.threads;
    }
    if (cfg.threads) {
        return *cfg.threads;
    }
    if (const char *env = std::getenv("QRP_LAB_THREADS")) {
        char *end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1 || v > 4096) {
            throw qrp_lab::ConfigError("QRP_LAB_THREADS must be a positive integer");
        }
        return static_cast<int>(v);
    }
    return 1;
}

int run(const std::string &experiment, const Flags &flags) {
    qrp_lab::ExperimentConfig cfg;
    std::vector<qrp_lab::Job> jobs;
    int threads = 1;
    try {
        cfg = qrp_lab::load_config(flags.config);
        if (!cfg.experiment.empty() && cfg.experiment != experiment) {
            throw qrp_lab::ConfigError("config names experiment '" + cfg.experiment + "' but subcommand is '" +
                                       experiment + "'");
        }
        cfg.experiment = experiment;
        if (flags.seed) {
            cfg.master_seed = *flags.seed;
        }
        if (flags.out) {
            cfg.out = *flags.out;
        }
        if (flags.format) {
            cfg.format = qrp_lab::parse_format(*flags.format);
        }
        threads = resolve_threads(flags, cfg);
        jobs = qrp_lab::plan_experiment(cfg, threads);
    } catch (const std::exception &e) {
        std::cerr << "qrp-lab: config error: " << e.what() << "\n";
        return kExitConfig;
    }

    std::vector<qrp::MetricsRow> rows;
    for (size_t i = 0; i < jobs.size(); i++) {
        std::cerr << "[" << i + 1 << "/" << jobs.size() << "] " << jobs[i].label << "\n";
        try {
            for (auto &row : jobs[i].run()) {
                row.validate(1);
                rows.push_back(std::move(row));
            }
        } catch (const std::exception &e) {
            std::cerr << "qrp-lab: numerical failure in '" << jobs[i].label << "': " << e.what() << "\n";
            return kExitNumerical;
        }
    }

    std::string text = cfg.format == qrp_lab::Format::Csv ? qrp_lab::to_csv(rows) : qrp_lab::to_json(rows);
    if (cfg.out.empty()) {
        std::cout << text;
        std::cout.flush();
    } else {
        try {
            qrp_lab::write_atomic(cfg.out, text);
        } catch (const std::exception &e) {
            std::cerr << "qrp-lab: " << e.what() << "\n";
            return kExitConfig;
        }
        std::cerr << "wrote " << rows.size() << " rows to " << cfg.out << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum reservoir processing experiments"};
    app.require_subcommand(1);
    Flags flags;
    for (const auto &name : qrp_lab::experiment_names()) {
        CLI::App *sub = app.add_subcommand(name, "Run the " + name + " experiment");
        sub->add_option("--config", flags.config, "JSON config file")->required();
        sub->add_option("--seed", flags.seed, "Master seed");
        sub->add_option("--out", flags.out, "Output path (stdout when absent)");
        sub->add_option("--format", flags.format, "csv or json");
        sub->add_option("--threads", flags.threads, "Worker threads");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitConfig;
    }
    return run(app.get_subcommands().front()->get_name(), flags);
}
