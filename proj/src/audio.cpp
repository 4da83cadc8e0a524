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

#include "phonosplit/audio.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include "phonosplit/errors.hpp"

namespace phonosplit {

int32_t AudioStream::peak() const {
    int32_t max_abs = 0;
    for (int16_t s : samples) {
        const int32_t a = std::abs(static_cast<int32_t>(s));
        if (a > max_abs) max_abs = a;
    }
    return max_abs;
}

double snr_db(const AudioStream& reference, const AudioStream& test) {
    if (reference.size() != test.size() || reference.empty())
        throw LengthMismatch("snr_db: streams must have equal nonzero length");

    int64_t signal = 0;
    int64_t noise = 0;
    for (size_t i = 0; i < reference.size(); ++i) {
        const int64_t r = reference.samples[i];
        const int64_t d = r - test.samples[i];
        signal += r * r;
        noise += d * d;
    }
    if (signal == 0) throw SilentReference("snr_db: reference stream is all zero");
    if (noise == 0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(static_cast<double>(signal) / static_cast<double>(noise));
}

}  // namespace phonosplit
