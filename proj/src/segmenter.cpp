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

#include "phonosplit/segmenter.hpp"

#include <algorithm>
#include <string>

#include "phonosplit/errors.hpp"
#include "phonosplit/wav.hpp"

namespace phonosplit {

namespace {

// A region is silence when it contains at least one quiet run of min_len.
bool contains_silence_run(const AudioStream& stream, size_t begin, size_t end,
                          const SilenceParams& silence) {
    size_t run = 0;
    for (size_t i = begin; i < end; ++i) {
        const int32_t v = stream.samples[i];
        if (v <= silence.max_abs && v >= -silence.max_abs) {
            if (++run >= silence.min_len) return true;
        } else {
            run = 0;
        }
    }
    return false;
}

std::string substitute(std::string pattern, std::string_view placeholder, const std::string& value) {
    size_t pos = 0;
    while ((pos = pattern.find(placeholder, pos)) != std::string::npos) {
        pattern.replace(pos, placeholder.size(), value);
        pos += value.size();
    }
    return pattern;
}

}  // namespace

const char* to_string(SegmentKind kind) {
    switch (kind) {
        case SegmentKind::phoneme: return "phoneme";
        case SegmentKind::silence: return "silence";
        case SegmentKind::marker: return "marker";
    }
    return "?";
}

void SilenceParams::validate() const {
    if (max_abs < 0) throw InvalidParams("silence threshold cannot be negative");
    if (min_len < 1) throw InvalidParams("minimum silence run must be at least one sample");
}

Segmentation segment_stream(const AudioStream& stream, const DetectionResult& markers,
                            size_t marker_len, const SilenceParams& silence) {
    silence.validate();
    if (marker_len < 1) throw InvalidParams("marker length must be at least one sample");

    const size_t n = stream.size();
    for (size_t k = 0; k < markers.positions.size(); ++k) {
        const size_t m = markers.positions[k];
        if (m >= n) throw InvalidParams("marker position beyond the stream");
        if (k > 0 && m < markers.positions[k - 1] + marker_len)
            throw MarkerOverlap("markers at " + std::to_string(markers.positions[k - 1]) +
                                " and " + std::to_string(m) + " are closer than " +
                                std::to_string(marker_len) + " samples");
    }

    Segmentation out;
    size_t counters[3] = {0, 0, 0};
    const auto push = [&](size_t begin, size_t end, SegmentKind kind) {
        if (begin >= end) return;
        Segment seg;
        seg.start = begin;
        seg.end = end;
        seg.kind = kind;
        seg.index = counters[static_cast<int>(kind)]++;
        out.segments.push_back(seg);
    };
    const auto classify = [&](size_t begin, size_t end) {
        push(begin, end, contains_silence_run(stream, begin, end, silence)
                             ? SegmentKind::silence
                             : SegmentKind::phoneme);
    };

    size_t cursor = 0;
    for (const size_t m : markers.positions) {
        classify(cursor, m);
        const size_t marker_end = std::min(m + marker_len, n);
        push(m, marker_end, SegmentKind::marker);
        cursor = marker_end;
    }
    classify(cursor, n);

    if (markers.positions.size() % 2 != 0)
        out.warnings.push_back("odd marker count (" +
                               std::to_string(markers.positions.size()) +
                               "); the stream may be cut mid-phoneme, trailing region "
                               "classified by the silence rule");
    return out;
}

std::vector<std::filesystem::path> export_segments(const AudioStream& stream,
                                                   const std::vector<Segment>& segments,
                                                   std::optional<SegmentKind> kind_filter,
                                                   const std::filesystem::path& directory,
                                                   const std::string& name_pattern) {
    std::vector<std::filesystem::path> paths;
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec) throw IoFailure("cannot create directory " + directory.string() + ": " + ec.message());

    for (const Segment& seg : segments) {
        if (kind_filter && seg.kind != *kind_filter) continue;
        if (seg.end > stream.size() || seg.start >= seg.end)
            throw InvalidParams("segment range is not valid for this stream");

        std::string name = substitute(name_pattern, "{n}", std::to_string(seg.index));
        name = substitute(std::move(name), "{kind}", to_string(seg.kind));

        AudioStream piece;
        piece.sample_rate = stream.sample_rate;
        piece.samples.assign(stream.samples.begin() + static_cast<ptrdiff_t>(seg.start),
                             stream.samples.begin() + static_cast<ptrdiff_t>(seg.end));

        const std::filesystem::path path = directory / name;
        save_file(path, encode_wav_pcm16(piece));
        paths.push_back(path);
    }
    return paths;
}

}  // namespace phonosplit
