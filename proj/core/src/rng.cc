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

#include "gtubqc/rng.h"

#include <stdexcept>

using namespace gtubqc;

uint64_t gtubqc::mix_seed(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Rng::Rng(uint64_t seed) : seed_(seed), engine_(mix_seed(seed)) {
}

uint64_t Rng::next_u64() {
    return engine_();
}

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

uint64_t Rng::below(uint64_t n) {
    if (n == 0) {
        throw std::invalid_argument("Rng::below(0)");
    }
    uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
    while (true) {
        uint64_t v = engine_();
        if (v < limit) {
            return v % n;
        }
    }
}

bool Rng::bit() {
    return (engine_() >> 63) != 0;
}

Rng Rng::split() {
    return Rng(mix_seed(engine_() ^ 0xD1B54A32D192ED03ULL));
}
