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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "phonosplit/adm.hpp"
#include "phonosplit/audio.hpp"

namespace phonosplit {

enum class SegmentKind { phoneme, silence, marker };

const char* to_string(SegmentKind kind);

/// Half-open sample range with an ordinal among segments of its kind.
struct Segment {
    size_t start = 0;
    size_t end = 0;
    SegmentKind kind = SegmentKind::silence;
    size_t index = 0;

    size_t length() const { return end - start; }
    bool operator==(const Segment&) const = default;
};

struct SilenceParams {
    int32_t max_abs = 1638;  // |x| <= max_abs counts as quiet (5% of full scale)
    size_t min_len = 16000;  // shortest run that counts as a real gap (1 s at 16 kHz)

    void validate() const;
    bool operator==(const SilenceParams&) const = default;
};

struct Segmentation {
    std::vector<Segment> segments;
    std::vector<std::string> warnings;
};

/// Each marker occupies [m, m + marker_len). A region between markers is one
/// segment: silence when it contains a quiet run of at least min_len samples,
/// phoneme otherwise. Shorter quiet runs never split a phoneme (a pause in
/// pronunciation stays inside its phoneme). Leading/trailing regions follow
/// the same rule. Throws MarkerOverlap when two markers are closer than
/// marker_len.
Segmentation segment_stream(const AudioStream& stream, const DetectionResult& markers,
                            size_t marker_len, const SilenceParams& silence);

/// Writes one PCM16 WAV per selected segment into directory (created if
/// missing). The name pattern supports {n} (segment ordinal within its kind)
/// and {kind}. Returns the written paths in segment order.
std::vector<std::filesystem::path> export_segments(const AudioStream& stream,
                                                   const std::vector<Segment>& segments,
                                                   std::optional<SegmentKind> kind_filter,
                                                   const std::filesystem::path& directory,
                                                   const std::string& name_pattern);

}  // namespace phonosplit
