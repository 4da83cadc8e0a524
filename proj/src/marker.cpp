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

#include "phonosplit/marker.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "phonosplit/errors.hpp"
#include "phonosplit/rng.hpp"

namespace phonosplit {

MarkerTemplate MarkerTemplate::scaled(double amplitude_scale) const {
    MarkerTemplate t = *this;
    t.a1 = static_cast<int32_t>(std::min<long>(std::lround(a1 * amplitude_scale), 32767));
    t.a2 = static_cast<int32_t>(std::min<long>(std::lround(a2 * amplitude_scale), 32767));
    return t;
}

void MarkerTemplate::validate() const {
    if (t1 <= 0 || t2 <= 0) throw InvalidParams("marker phases must have positive length");
    if (settle_samples < t1 + t2)
        throw InvalidParams("settle time cannot be shorter than the two phases");
    if (a2 <= 0 || a1 < a2 || a1 > 32767)
        throw InvalidParams("marker amplitudes must satisfy 0 < a2 <= a1 <= 32767");
    if (!(settle_band > 0.0 && settle_band < 1.0))
        throw InvalidParams("settle band must be a fraction in (0, 1)");
    if (polarity != 1 && polarity != -1) throw InvalidParams("polarity must be +1 or -1");
}

MarkerTemplate default_template() { return MarkerTemplate{}; }

std::vector<int16_t> synthesize_marker(const MarkerTemplate& tpl, double noise_fraction,
                                       uint32_t seed) {
    tpl.validate();
    if (noise_fraction < 0.0 || noise_fraction >= 1.0)
        throw InvalidParams("noise fraction must be in [0, 1)");

    Rng rng(seed);
    std::vector<int16_t> out;
    out.reserve(tpl.settle_samples);

    const auto clamp16 = [](double v) {
        return static_cast<int16_t>(std::clamp<long>(std::lround(v), -32768, 32767));
    };
    const auto jittered = [&](double v) { return v * (1.0 + rng.jitter(noise_fraction)); };

    for (int i = 0; i < tpl.t1; ++i)
        out.push_back(clamp16(jittered(static_cast<double>(tpl.polarity) * tpl.a1)));
    for (int i = 0; i < tpl.t2; ++i)
        out.push_back(clamp16(jittered(static_cast<double>(-tpl.polarity) * tpl.a2)));

    // Logarithmic decay from a2 down to the settle band, hitting the band
    // boundary at the final sample. Magnitudes are floored so a noise-free
    // tail never pokes above the band.
    const int tail = tpl.settle_samples - tpl.t1 - tpl.t2;
    if (tail > 0) {
        const double limit = tpl.settle_band * 32767.0;
        const double beta = std::min(1.0, limit / tpl.a2);
        const double k = 9.0 / tail;
        const double denom = std::log1p(k * tail);
        for (int j = 1; j <= tail; ++j) {
            const double frac = std::log1p(k * j) / denom;
            const double magnitude = tpl.a2 * (1.0 - (1.0 - beta) * frac);
            const double value = std::floor(std::abs(jittered(magnitude)));
            out.push_back(clamp16(-tpl.polarity * value));
        }
    }
    return out;
}

const char* to_string(RecorderState state) {
    switch (state) {
        case RecorderState::s1: return "S1";
        case RecorderState::s2: return "S2";
        case RecorderState::s23: return "S23";
        case RecorderState::s3: return "S3";
        case RecorderState::s31: return "S31";
    }
    return "?";
}

const char* to_string(RecorderEvent event) {
    switch (event) {
        case RecorderEvent::press: return "press";
        case RecorderEvent::release: return "release";
        case RecorderEvent::vcva_timeout: return "vcva_timeout";
        case RecorderEvent::pause: return "pause";
        case RecorderEvent::resume: return "resume";
    }
    return "?";
}

RecorderState step_state(RecorderState current, RecorderEvent event) {
    switch (current) {
        case RecorderState::s1:
            if (event == RecorderEvent::vcva_timeout) return RecorderState::s2;
            if (event == RecorderEvent::press) return RecorderState::s23;
            // Pronunciation resumes after a mid-phoneme pause; the switch was
            // never released, so no transient is produced on the way back.
            if (event == RecorderEvent::resume) return RecorderState::s3;
            break;
        case RecorderState::s2:
            if (event == RecorderEvent::press) return RecorderState::s23;
            break;
        case RecorderState::s23:
            if (event == RecorderEvent::resume) return RecorderState::s3;
            break;
        case RecorderState::s3:
            if (event == RecorderEvent::release) return RecorderState::s31;
            if (event == RecorderEvent::pause) return RecorderState::s1;
            break;
        case RecorderState::s31:
            if (event == RecorderEvent::resume) return RecorderState::s1;
            break;
    }
    throw IllegalTransition(std::string("no transition from ") + to_string(current) + " on " +
                            to_string(event));
}

}  // namespace phonosplit
