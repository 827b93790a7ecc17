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

#ifndef QRP_RNG_H
#define QRP_RNG_H

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace qrp {

/// Address of an independent random stream.
struct SeedPath {
    std::uint64_t master_seed = 0;
    std::uint64_t sample_index = 0;
    std::string stream_tag;

    /// Same master seed, new index and tag.
    SeedPath with(std::uint64_t index, std::string_view tag) const;
    /// Hierarchical child: folds this path into a fresh master seed.
    SeedPath child(std::uint64_t index, std::string_view tag) const;
    /// 64-bit stream key.
    std::uint64_t key() const;

    bool operator==(const SeedPath &) const = default;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Counter-based generator: output k is a keyed hash of k.
///
/// Satisfies UniformRandomBitGenerator. Copies replay the same stream.
class CounterRng {
   public:
    using result_type = std::uint64_t;

    explicit CounterRng(const SeedPath &path);
    explicit CounterRng(std::uint64_t key) : key_(key) {
    }

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }
    result_type operator()();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal via Box-Muller.
    double normal();
    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);

    std::uint64_t counter() const {
        return counter_;
    }

   private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    bool has_spare_ = false;
    double spare_ = 0;
};

}  // namespace qrp

#endif
