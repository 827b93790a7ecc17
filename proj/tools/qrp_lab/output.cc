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

#include "output.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

#include <unistd.h>

namespace qrp_lab {

const char *const kCsvHeader = "experiment,n_a,n_h,t,param,estimate,std_error,n_samples,analytic_ref,seed";

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string optional_double(const std::optional<double> &v, const char *missing) {
    return v ? format_double(*v) : std::string(missing);
}

}  // namespace

std::string to_csv(const std::vector<qrp::MetricsRow> &rows) {
    std::string out = std::string(kCsvHeader) + "\n";
    for (const auto &r : rows) {
        out += r.experiment + "," + std::to_string(r.n_a) + "," + std::to_string(r.n_h) + "," + std::to_string(r.t) +
               "," + optional_double(r.param, "") + "," + format_double(r.estimate) + "," +
               format_double(r.std_error) + "," + std::to_string(r.n_samples) + "," +
               optional_double(r.analytic_ref, "") + "," + std::to_string(r.seed) + "\n";
    }
    return out;
}

std::string to_json(const std::vector<qrp::MetricsRow> &rows) {
    // Numbers are spelled by hand so both formats carry the same 17 digits.
    std::string out = "[\n";
    for (size_t i = 0; i < rows.size(); i++) {
        const auto &r = rows[i];
        out += "  {\"experiment\": " + nlohmann::json(r.experiment).dump() + ", \"n_a\": " + std::to_string(r.n_a) +
               ", \"n_h\": " + std::to_string(r.n_h) + ", \"t\": " + std::to_string(r.t) +
               ", \"param\": " + optional_double(r.param, "null") + ", \"estimate\": " + format_double(r.estimate) +
               ", \"std_error\": " + format_double(r.std_error) + ", \"n_samples\": " + std::to_string(r.n_samples) +
               ", \"analytic_ref\": " + optional_double(r.analytic_ref, "null") +
               ", \"seed\": " + std::to_string(r.seed) + "}";
        out += i + 1 < rows.size() ? ",\n" : "\n";
    }
    out += "]\n";
    return out;
}

void write_atomic(const std::string &path, const std::string &contents) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        }
        f << contents;
        f.flush();
        if (!f) {
            throw std::runtime_error("failed writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw std::runtime_error("cannot move output into place at '" + path + "'");
    }
}

}  // namespace qrp_lab
