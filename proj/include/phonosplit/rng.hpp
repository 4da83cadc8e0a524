// Copyright 2026 The Phonosplit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace phonosplit {

// mt19937 with fixed-point scaling helpers. The raw engine output is
// standardized, so every stream derived from a seed reproduces bit-for-bit;
// std::uniform_*_distribution would not give that guarantee.
class Rng {
public:
    explicit Rng(uint32_t seed) : engine_(seed) {}

    uint32_t next_u32() { return engine_(); }

    /// Uniform integer in [lo, hi], inclusive. Span must fit in 32 bits.
    int64_t uniform_int(int64_t lo, int64_t hi) {
        const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
        return lo + static_cast<int64_t>((static_cast<uint64_t>(next_u32()) * span) >> 32);
    }

    /// Uniform double in [0, 1).
    double uniform_real() { return next_u32() * 0x1p-32; }

    double uniform_real(double lo, double hi) { return lo + (hi - lo) * uniform_real(); }

    /// Symmetric jitter in [-magnitude, +magnitude].
    double jitter(double magnitude) { return uniform_real(-magnitude, magnitude); }

private:
    std::mt19937 engine_;
};

}  // namespace phonosplit
