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

#ifndef QRP_LAB_EXPERIMENTS_H
#define QRP_LAB_EXPERIMENTS_H

#include <functional>
#include <string>
#include <vector>

#include "config.h"
#include "qrp/metrics.h"

namespace qrp_lab {

/// One independently runnable unit of an experiment.
struct Job {
    std::string label;
    std::function<std::vector<qrp::MetricsRow>()> run;
};

/// Builds and validates every job up front. Throws ConfigError.
std::vector<Job> plan_experiment(const ExperimentConfig &cfg, int threads);

}  // namespace qrp_lab

#endif
