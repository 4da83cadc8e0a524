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

#include "phonosplit/audio.hpp"

namespace phonosplit {

/// Marker-detection parameters.
struct DetectionParams {
    int32_t threshold_a = 27000;  // amplitude a sample must exceed
    int32_t window_t = 50;        // candidate window length in samples
    int32_t percent_p = 75;       // required share of loud samples, 0..100
    int32_t skip_tr = 350;        // samples skipped after an accepted marker

    /// Throws InvalidParams unless a > 0, t > 0, 0 < p <= 100, tr >= t.
    void validate() const;

    bool operator==(const DetectionParams&) const = default;
};

/// Detected marker starts plus the instrumentation counters.
/// One elementary operation is one sample inspection: the outer scan costs
/// one per visited index, every candidate window evaluation costs window_t,
/// and an accepted candidate removes the next skip_tr outer visits.
struct DetectionResult {
    std::vector<size_t> positions;      // ascending marker start indices
    uint64_t op_count = 0;              // elementary sample inspections
    uint64_t candidates_evaluated = 0;  // windows tested
    uint64_t candidates_accepted = 0;   // == positions.size()
    size_t stream_len = 0;
};

/// Scans indices 0..len-window_t; a sample with |x| > threshold_a opens a
/// candidate window, and an accepted window records the index and jumps the
/// scan forward by skip_tr.
DetectionResult detect_markers(const AudioStream& stream, const DetectionParams& params);

/// Window acceptance test over [start, start + window_t): at least percent_p
/// percent of samples with |x| > threshold_a, and at most one sign change
/// between adjacent samples (zero samples keep the previous sign).
/// Throws WindowOutOfBounds when the window does not fit.
bool is_marker_window(const AudioStream& stream, size_t start, const DetectionParams& params);

/// Number of indices where the scan of detect_markers evaluates a window,
/// honoring the skip rule.
uint64_t count_candidates(const AudioStream& stream, const DetectionParams& params);

}  // namespace phonosplit
