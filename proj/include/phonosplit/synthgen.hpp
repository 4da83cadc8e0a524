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
#include <utility>
#include <vector>

#include "phonosplit/adm.hpp"
#include "phonosplit/audio.hpp"
#include "phonosplit/marker.hpp"

namespace phonosplit {

/// Recipe for one synthetic session: phonemes as harmonic bursts separated by
/// switch markers and silence, with optional anomaly paths of the recorder
/// graph (early press before the voice-activated pause kicks in; a pause in
/// pronunciation that leaves a quiet gap inside one phoneme, with no markers).
struct RecordingScript {
    size_t phoneme_count = 125;
    std::pair<size_t, size_t> phoneme_len_range{4000, 12000};
    std::pair<size_t, size_t> silence_len_range{17000, 26000};
    double phoneme_amplitude = 0.8;  // fraction of full scale, peak-normalized
    int32_t noise_floor = 300;       // background amplitude in quiet regions
    double marker_noise = 0.05;      // per-sample jitter fraction for markers
    // The measured template amplitudes sit below the stock detection
    // threshold; the default scale lifts them above it so a detector at stock
    // settings has something to find.
    double marker_scale = 1.1;
    double early_press_rate = 0.0;   // probability of the S1->S23 path per gap
    double pause_rate = 0.0;         // probability of the S3->S1->S3 path per phoneme
    uint32_t seed = 1;
    uint32_t sample_rate = 16000;
    MarkerTemplate marker = default_template();

    void validate() const;
};

struct StateEvent {
    size_t index = 0;
    RecorderState state = RecorderState::s1;
    bool operator==(const StateEvent&) const = default;
};

enum class AnomalyKind { early_press, pause };

const char* to_string(AnomalyKind kind);

struct Anomaly {
    AnomalyKind kind = AnomalyKind::early_press;
    size_t phoneme = 0;  // ordinal of the phoneme it affects
    size_t index = 0;    // sample index where the path begins
};

struct GroundTruth {
    std::vector<size_t> marker_positions;                  // ascending starts
    std::vector<std::pair<size_t, size_t>> phoneme_spans;  // [start, end)
    std::vector<StateEvent> state_trace;                   // state entered at index
    std::vector<Anomaly> anomalies;
};

struct GeneratedRecording {
    AudioStream stream;
    GroundTruth truth;
};

/// Deterministic per script.seed; the same script reproduces the stream and
/// the truth bit-for-bit.
GeneratedRecording generate_recording(const RecordingScript& script);

struct EvalReport {
    double recall = 0.0;
    double precision = 0.0;
    size_t matched = 0;
    size_t truth_count = 0;
    size_t detected_count = 0;
    std::vector<int64_t> position_errors;  // detected - true, per match
};

/// Greedy one-to-one matching of detected positions to true positions within
/// +/- tolerance samples. precision is 1 when nothing was detected.
EvalReport evaluate_detection(const GroundTruth& truth, const DetectionResult& result,
                              size_t tolerance);

}  // namespace phonosplit
