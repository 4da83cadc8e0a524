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
#include <vector>

namespace phonosplit {

/// Shape of the step-response transient the recorder switch injects into the
/// stream: two high-amplitude phases of opposite sign, then a logarithmic
/// decay that enters the +/- settle_band of full scale by settle_samples.
struct MarkerTemplate {
    int32_t a1 = 26000;          // mean amplitude, phase 1
    int32_t a2 = 23000;          // mean amplitude, phase 2
    int32_t t1 = 40;             // phase-1 duration in samples
    int32_t t2 = 40;             // phase-2 duration in samples
    int32_t settle_samples = 140;
    double settle_band = 0.05;   // fraction of full scale
    int polarity = +1;           // sign of phase 1

    /// Copy with a1/a2 multiplied by amplitude_scale (capped at 32767).
    MarkerTemplate scaled(double amplitude_scale) const;

    /// Throws InvalidParams when a field is out of range.
    void validate() const;

    bool operator==(const MarkerTemplate&) const = default;
};

/// The statistics measured over a large population of real switch markers.
MarkerTemplate default_template();

/// Emits exactly settle_samples samples. noise_fraction applies a bounded
/// multiplicative jitter per sample, deterministic for a given seed.
std::vector<int16_t> synthesize_marker(const MarkerTemplate& tpl, double noise_fraction,
                                       uint32_t seed);

/// Recorder states. S1 idle (mic shorted), S2 paused by the voice-activated
/// recording control, S23/S31 switch transients (the audible markers), S3
/// recording the phoneme.
enum class RecorderState { s1, s2, s23, s3, s31 };

/// press/release move the hardware switch; vcva_timeout is the recorder
/// pausing after sustained silence; pause is the child going quiet mid
/// phoneme; resume is audio flow returning (a transient settling, or speech
/// after a pause).
enum class RecorderEvent { press, release, vcva_timeout, pause, resume };

const char* to_string(RecorderState state);
const char* to_string(RecorderEvent event);

/// Transition function of the recorder graph. Throws IllegalTransition for
/// undefined (state, event) pairs.
RecorderState step_state(RecorderState current, RecorderEvent event);

}  // namespace phonosplit
