// Copyright 2026 The gtubqc Authors
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

#pragma once

#include <cstdint>
#include <random>

namespace gtubqc {

/// Seeded, splittable random stream.
///
/// All sampling is done from raw 64-bit engine output (no std distributions),
/// so a seed reproduces the same draws on every platform.
class Rng {
   public:
    explicit Rng(uint64_t seed);

    uint64_t seed() const {
        return seed_;
    }
    uint64_t next_u64();
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    /// Uniform in [0, n), unbiased.
    uint64_t below(uint64_t n);
    bool bit();
    /// Independent child stream; advances this stream by one draw.
    Rng split();

   private:
    uint64_t seed_;
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer, used to derive child seeds.
uint64_t mix_seed(uint64_t x);

}  // namespace gtubqc
