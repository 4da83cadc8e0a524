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

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "phonosplit/audio.hpp"
#include "phonosplit/marker.hpp"
#include "phonosplit/rng.hpp"

namespace testsupport {

// Plain re-derivation of the scanning detector, kept deliberately separate
// from the library code path so the two can disagree.
struct RefDetection {
    std::vector<size_t> positions;
    uint64_t candidates = 0;
    uint64_t ops = 0;
};

inline RefDetection reference_detect(const std::vector<int16_t>& x, int32_t a, int64_t t,
                                     int64_t p, int64_t tr) {
    RefDetection out;
    const int64_t n = static_cast<int64_t>(x.size());
    for (int64_t i = 0; i + t <= n; ++i) {
        out.ops += 1;
        if (std::abs(static_cast<int32_t>(x[i])) > a) {
            out.candidates += 1;
            out.ops += static_cast<uint64_t>(t);
            int64_t loud = 0;
            int changes = 0;
            int prev = 0;
            for (int64_t j = i; j < i + t; ++j) {
                const int32_t v = x[j];
                if (std::abs(v) > a) ++loud;
                const int sign = (v > 0) - (v < 0);
                if (sign != 0) {
                    if (prev != 0 && sign != prev) ++changes;
                    prev = sign;
                }
            }
            if (loud * 100 >= p * t && changes <= 1) {
                out.positions.push_back(static_cast<size_t>(i));
                i += tr;
            }
        }
    }
    return out;
}

inline bool reference_window(const std::vector<int16_t>& x, size_t start, int32_t a, int64_t t,
                             int64_t p) {
    int64_t loud = 0;
    int changes = 0;
    int prev = 0;
    for (size_t j = start; j < start + static_cast<size_t>(t); ++j) {
        const int32_t v = x[j];
        if (std::abs(v) > a) ++loud;
        const int sign = (v > 0) - (v < 0);
        if (sign != 0) {
            if (prev != 0 && sign != prev) ++changes;
            prev = sign;
        }
    }
    return loud * 100 >= p * t && changes <= 1;
}

// Random stream soup: silence, broadband noise, plateaus, sine bursts,
// alternating spikes and genuine markers, so acceptance and the skip rule
// both fire on some seeds.
inline phonosplit::AudioStream soup_stream(uint32_t seed, size_t max_len = 100000) {
    phonosplit::Rng rng(seed);
    phonosplit::AudioStream s;
    s.sample_rate = 16000;
    const size_t target = static_cast<size_t>(rng.uniform_int(0, static_cast<int64_t>(max_len)));
    s.samples.reserve(target);

    while (s.samples.size() < target) {
        const int kind = static_cast<int>(rng.uniform_int(0, 5));
        const size_t room = target - s.samples.size();
        switch (kind) {
            case 0: {  // quiet stretch
                const size_t len = std::min<size_t>(room, rng.uniform_int(100, 4000));
                for (size_t i = 0; i < len; ++i)
                    s.samples.push_back(static_cast<int16_t>(rng.uniform_int(-400, 400)));
                break;
            }
            case 1: {  // broadband noise, loud
                const size_t len = std::min<size_t>(room, rng.uniform_int(50, 600));
                for (size_t i = 0; i < len; ++i)
                    s.samples.push_back(static_cast<int16_t>(rng.uniform_int(-32000, 32000)));
                break;
            }
            case 2: {  // plateau near or above the usual threshold
                const size_t len = std::min<size_t>(room, rng.uniform_int(30, 250));
                const int16_t level = static_cast<int16_t>(
                    rng.uniform_int(20000, 32500) * (rng.uniform_int(0, 1) ? 1 : -1));
                s.samples.insert(s.samples.end(), len, level);
                break;
            }
            case 3: {  // genuine marker at a random scale and jitter
                const auto wave = phonosplit::synthesize_marker(
                    phonosplit::default_template().scaled(rng.uniform_real(0.9, 1.25)),
                    rng.uniform_real(0.0, 0.15), rng.next_u32());
                const size_t len = std::min(room, wave.size());
                s.samples.insert(s.samples.end(), wave.begin(), wave.begin() + len);
                break;
            }
            case 4: {  // band-limited burst below the usual threshold
                const size_t len = std::min<size_t>(room, rng.uniform_int(200, 3000));
                const double f = rng.uniform_real(200.0, 4000.0);
                const double amp = rng.uniform_real(2000.0, 26000.0);
                const double phase = rng.uniform_real(0.0, 2.0 * std::numbers::pi);
                for (size_t i = 0; i < len; ++i)
                    s.samples.push_back(static_cast<int16_t>(std::lround(
                        amp * std::sin(2.0 * std::numbers::pi * f * i / 16000.0 + phase))));
                break;
            }
            default: {  // alternating spikes
                const size_t len = std::min<size_t>(room, rng.uniform_int(20, 300));
                const int16_t level = static_cast<int16_t>(rng.uniform_int(27500, 32500));
                for (size_t i = 0; i < len; ++i)
                    s.samples.push_back(i % 2 ? level : static_cast<int16_t>(-level));
                break;
            }
        }
    }
    return s;
}

}  // namespace testsupport
