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

#include "phonosplit/adm.hpp"

#include <string>

#include "phonosplit/errors.hpp"

namespace phonosplit {

namespace {

// Acceptance test over window[0..t): enough loud samples, and at most one
// sign change between adjacent samples. Zero samples carry the previous sign
// so a single crossing through zero is not counted twice. The full window is
// always inspected; the instrumented cost of a candidate is exactly t.
bool window_accepts(const int16_t* window, int64_t t, const DetectionParams& p) {
    int64_t above = 0;
    int transitions = 0;
    int previous_sign = 0;
    for (int64_t j = 0; j < t; ++j) {
        const int32_t v = window[j];
        if (v > p.threshold_a || v < -p.threshold_a) ++above;
        const int sign = (v > 0) - (v < 0);
        if (sign != 0) {
            if (previous_sign != 0 && sign != previous_sign) ++transitions;
            previous_sign = sign;
        }
    }
    return above * 100 >= static_cast<int64_t>(p.percent_p) * t && transitions <= 1;
}

}  // namespace

void DetectionParams::validate() const {
    if (threshold_a <= 0) throw InvalidParams("threshold_a must be positive");
    if (window_t <= 0) throw InvalidParams("window_t must be positive");
    if (percent_p <= 0 || percent_p > 100)
        throw InvalidParams("percent_p must be in (0, 100]");
    if (skip_tr < window_t) throw InvalidParams("skip_tr must be at least window_t");
}

DetectionResult detect_markers(const AudioStream& stream, const DetectionParams& params) {
    params.validate();

    DetectionResult result;
    result.stream_len = stream.size();

    const int64_t n = static_cast<int64_t>(stream.size());
    const int64_t t = params.window_t;
    const int32_t a = params.threshold_a;
    const int16_t* x = stream.samples.data();

    for (int64_t i = 0; i + t <= n; ++i) {
        ++result.op_count;  // the probe of x[i]
        const int32_t v = x[i];
        if (v > a || v < -a) {
            ++result.candidates_evaluated;
            result.op_count += static_cast<uint64_t>(t);  // the window pass
            if (window_accepts(x + i, t, params)) {
                result.positions.push_back(static_cast<size_t>(i));
                i += params.skip_tr;  // resume past the marker body
            }
        }
    }
    result.candidates_accepted = result.positions.size();
    return result;
}

bool is_marker_window(const AudioStream& stream, size_t start, const DetectionParams& params) {
    params.validate();
    const size_t t = static_cast<size_t>(params.window_t);
    if (start + t > stream.size())
        throw WindowOutOfBounds("window [" + std::to_string(start) + ", " +
                                std::to_string(start + t) + ") exceeds stream length " +
                                std::to_string(stream.size()));
    return window_accepts(stream.samples.data() + start, params.window_t, params);
}

uint64_t count_candidates(const AudioStream& stream, const DetectionParams& params) {
    return detect_markers(stream, params).candidates_evaluated;
}

}  // namespace phonosplit
