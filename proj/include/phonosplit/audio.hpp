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

#include <cstddef>
#include <cstdint>
#include <vector>

namespace phonosplit {

/// Mono stream of signed 16-bit samples.
struct AudioStream {
    std::vector<int16_t> samples;
    uint32_t sample_rate = 16000;

    static constexpr int channel_count = 1;

    size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }

    double duration_seconds() const {
        return sample_rate ? static_cast<double>(samples.size()) / sample_rate : 0.0;
    }

    /// Largest |sample| in the stream (0 for an empty stream).
    int32_t peak() const;
};

/// 10*log10(sum(ref^2) / sum((ref - test)^2)).
/// Returns +infinity when the two streams are identical.
/// Throws LengthMismatch for unequal or zero lengths, SilentReference for an
/// all-zero reference.
double snr_db(const AudioStream& reference, const AudioStream& test);

}  // namespace phonosplit
