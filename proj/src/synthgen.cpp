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

#include "phonosplit/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "phonosplit/errors.hpp"
#include "phonosplit/rng.hpp"

namespace phonosplit {

namespace {

// Harmonic burst standing in for one uttered phoneme. Detection only looks at
// amplitude statistics, so any band-limited content with a soft envelope and
// an exact peak works.
void append_burst(std::vector<int16_t>& out, size_t len, const RecordingScript& script,
                  Rng& rng) {
    if (len == 0) return;
    const double fs = script.sample_rate;
    const double two_pi = 2.0 * std::numbers::pi;

    struct Component {
        double omega, amplitude, phase;
    };
    const int harmonic_count = static_cast<int>(rng.uniform_int(2, 5));
    const double f0 = rng.uniform_real(200.0, 800.0);  // all harmonics stay <= 4 kHz
    std::vector<Component> parts;
    parts.reserve(harmonic_count);
    for (int h = 1; h <= harmonic_count; ++h)
        parts.push_back({two_pi * f0 * h / fs, rng.uniform_real(0.3, 1.0) / h,
                         rng.uniform_real(0.0, two_pi)});

    const size_t attack = std::min<size_t>(len / 8, static_cast<size_t>(fs / 40.0));
    const size_t release = std::min<size_t>(len / 6, static_cast<size_t>(fs * 3.0 / 80.0));

    std::vector<double> buf(len);
    double max_abs = 0.0;
    for (size_t n = 0; n < len; ++n) {
        double v = 0.0;
        for (const Component& c : parts) v += c.amplitude * std::sin(c.omega * n + c.phase);
        double env = 1.0;
        if (attack && n < attack)
            env *= 0.5 * (1.0 - std::cos(std::numbers::pi * (n + 1) / attack));
        if (release && n >= len - release)
            env *= 0.5 * (1.0 - std::cos(std::numbers::pi * (len - n) / release));
        buf[n] = v * env;
        max_abs = std::max(max_abs, std::abs(buf[n]));
    }

    const double target = std::floor(script.phoneme_amplitude * 32767.0);
    const double scale = max_abs > 0.0 ? target / max_abs : 0.0;
    for (size_t n = 0; n < len; ++n)
        out.push_back(static_cast<int16_t>(
            std::clamp<long>(std::lround(buf[n] * scale), -32768, 32767)));
}

}  // namespace

const char* to_string(AnomalyKind kind) {
    switch (kind) {
        case AnomalyKind::early_press: return "early_press";
        case AnomalyKind::pause: return "pause";
    }
    return "?";
}

void RecordingScript::validate() const {
    if (phoneme_len_range.first < 1 || phoneme_len_range.first > phoneme_len_range.second)
        throw InvalidParams("phoneme length range must be nonempty and positive");
    if (silence_len_range.first < 1 || silence_len_range.first > silence_len_range.second)
        throw InvalidParams("silence length range must be nonempty and positive");
    if (!(phoneme_amplitude > 0.0 && phoneme_amplitude <= 1.0))
        throw InvalidParams("phoneme amplitude must be in (0, 1]");
    if (noise_floor < 0 || noise_floor > 32767)
        throw InvalidParams("noise floor must be in [0, 32767]");
    if (marker_noise < 0.0 || marker_noise >= 1.0)
        throw InvalidParams("marker noise must be in [0, 1)");
    if (marker_scale <= 0.0) throw InvalidParams("marker scale must be positive");
    if (early_press_rate < 0.0 || early_press_rate > 1.0 || pause_rate < 0.0 ||
        pause_rate > 1.0)
        throw InvalidParams("anomaly rates must be probabilities");
    if (sample_rate == 0) throw InvalidParams("sample rate must be positive");
    marker.validate();
}

GeneratedRecording generate_recording(const RecordingScript& script) {
    script.validate();
    const MarkerTemplate tpl = script.marker.scaled(script.marker_scale);
    tpl.validate();

    Rng rng(script.seed);
    GeneratedRecording rec;
    rec.stream.sample_rate = script.sample_rate;
    auto& samples = rec.stream.samples;
    GroundTruth& truth = rec.truth;

    const size_t rate = script.sample_rate;
    const size_t vcva_delay = rate;  // the recorder pauses itself after about one second
    // Quiet gaps produced by the anomaly paths are deliberately shorter than
    // one second, so they read as in-phoneme pauses or hurried presses.
    const std::pair<size_t, size_t> short_gap{std::max<size_t>(1, rate * 3 / 16),
                                              std::max<size_t>(1, rate * 12 / 16)};

    const auto now = [&] { return samples.size(); };
    const auto trace = [&](RecorderState s) { truth.state_trace.push_back({now(), s}); };
    const auto draw = [&](const std::pair<size_t, size_t>& range) {
        return static_cast<size_t>(rng.uniform_int(static_cast<int64_t>(range.first),
                                                   static_cast<int64_t>(range.second)));
    };
    const auto noise = [&](size_t len) {
        if (script.noise_floor == 0) {
            samples.insert(samples.end(), len, 0);
            return;
        }
        for (size_t i = 0; i < len; ++i)
            samples.push_back(static_cast<int16_t>(
                rng.uniform_int(-script.noise_floor, script.noise_floor)));
    };
    const auto marker = [&] {
        truth.marker_positions.push_back(now());
        const uint32_t marker_seed = rng.next_u32();
        const auto m = synthesize_marker(tpl, script.marker_noise, marker_seed);
        samples.insert(samples.end(), m.begin(), m.end());
    };
    // Idle stretch between utterances; the voice-activated control kicks in
    // after vcva_delay of it.
    const auto idle_silence = [&] {
        const size_t begin = now();
        const size_t len = draw(script.silence_len_range);
        noise(len);
        if (len >= vcva_delay)
            truth.state_trace.push_back({begin + vcva_delay, RecorderState::s2});
    };

    trace(RecorderState::s1);

    if (script.phoneme_count == 0) {
        idle_silence();
        return rec;
    }

    for (size_t k = 0; k < script.phoneme_count; ++k) {
        const bool early_press = rng.uniform_real() < script.early_press_rate;
        if (early_press) {
            noise(draw(short_gap));  // pressed again before the recorder could pause
            truth.anomalies.push_back({AnomalyKind::early_press, k, now()});
        } else {
            idle_silence();
        }

        trace(RecorderState::s23);
        marker();
        trace(RecorderState::s3);

        noise(draw({0, std::max<size_t>(1, rate / 160)}));  // breath before the utterance

        const size_t span_start = now();
        const size_t burst_len = draw(script.phoneme_len_range);
        const bool paused = rng.uniform_real() < script.pause_rate;
        if (paused) {
            const size_t part1 = std::clamp<size_t>(
                static_cast<size_t>(burst_len * rng.uniform_real(0.3, 0.7)), 1,
                burst_len - 1);
            append_burst(samples, part1, script, rng);
            truth.anomalies.push_back({AnomalyKind::pause, k, now()});
            trace(RecorderState::s1);  // child went quiet, switch still held
            noise(draw(short_gap));
            trace(RecorderState::s3);  // pronunciation resumes, no marker in between
            append_burst(samples, burst_len - part1, script, rng);
        } else {
            append_burst(samples, burst_len, script, rng);
        }
        truth.phoneme_spans.emplace_back(span_start, now());

        noise(draw({std::max<size_t>(1, rate / 320), std::max<size_t>(2, rate / 64)}));

        trace(RecorderState::s31);
        marker();
        trace(RecorderState::s1);
    }

    idle_silence();
    return rec;
}

EvalReport evaluate_detection(const GroundTruth& truth, const DetectionResult& result,
                              size_t tolerance) {
    EvalReport report;
    report.truth_count = truth.marker_positions.size();
    report.detected_count = result.positions.size();

    const int64_t tol = static_cast<int64_t>(tolerance);
    size_t i = 0;  // truth cursor
    size_t j = 0;  // detection cursor
    while (i < truth.marker_positions.size() && j < result.positions.size()) {
        const int64_t diff = static_cast<int64_t>(result.positions[j]) -
                             static_cast<int64_t>(truth.marker_positions[i]);
        if (diff < -tol) {
            ++j;  // spurious detection before this true marker
        } else if (diff > tol) {
            ++i;  // missed true marker
        } else {
            report.position_errors.push_back(diff);
            ++i;
            ++j;
        }
    }
    report.matched = report.position_errors.size();
    report.recall = report.truth_count
                        ? static_cast<double>(report.matched) / report.truth_count
                        : 1.0;
    report.precision = report.detected_count
                           ? static_cast<double>(report.matched) / report.detected_count
                           : 1.0;
    return report;
}

}  // namespace phonosplit
