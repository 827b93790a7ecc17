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

#include "qrp/rng.h"

#include <cmath>
#include <numbers>

namespace qrp {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

namespace {

// FNV-1a over the tag bytes.
std::uint64_t hash_tag(std::string_view tag) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

}  // namespace

SeedPath SeedPath::with(std::uint64_t index, std::string_view tag) const {
    return SeedPath{master_seed, index, std::string(tag)};
}

SeedPath SeedPath::child(std::uint64_t index, std::string_view tag) const {
    return SeedPath{key(), index, std::string(tag)};
}

std::uint64_t SeedPath::key() const {
    std::uint64_t h = splitmix64(master_seed ^ 0x6A09E667F3BCC908ULL);
    h = splitmix64(h ^ splitmix64(sample_index + 0xBB67AE8584CAA73BULL));
    h = splitmix64(h ^ hash_tag(stream_tag));
    return h;
}

CounterRng::CounterRng(const SeedPath &path) : key_(path.key()) {
}

CounterRng::result_type CounterRng::operator()() {
    std::uint64_t c = counter_++;
    return splitmix64(splitmix64(key_ ^ (c * 0xD1B54A32D192ED03ULL)) + c);
}

double CounterRng::uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double CounterRng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double th = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(th);
    has_spare_ = true;
    return r * std::cos(th);
}

std::uint64_t CounterRng::below(std::uint64_t n) {
    // Rejection sampling for an unbiased result.
    std::uint64_t limit = max() - max() % n;
    while (true) {
        std::uint64_t v = (*this)();
        if (v < limit) {
            return v % n;
        }
    }
}

}  // namespace qrp
