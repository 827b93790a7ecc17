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

#ifndef QRP_LAB_OUTPUT_H
#define QRP_LAB_OUTPUT_H

#include <string>
#include <vector>

#include "config.h"
#include "qrp/metrics.h"

namespace qrp_lab {

extern const char *const kCsvHeader;

/// %.17g; non-finite values are rejected upstream by MetricsRow::validate.
std::string format_double(double v);

std::string to_csv(const std::vector<qrp::MetricsRow> &rows);
std::string to_json(const std::vector<qrp::MetricsRow> &rows);

/// Writes to a sibling temporary file and renames it over `path`. Throws std::runtime_error.
void write_atomic(const std::string &path, const std::string &contents);

}  // namespace qrp_lab

#endif
