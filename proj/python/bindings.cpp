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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>

#include "phonosplit/analysis.hpp"
#include "phonosplit/config.hpp"
#include "phonosplit/errors.hpp"
#include "phonosplit/segmenter.hpp"
#include "phonosplit/synthgen.hpp"
#include "phonosplit/wav.hpp"

namespace py = pybind11;
using namespace phonosplit;

namespace {

py::array_t<int16_t> to_array(const std::vector<int16_t>& samples) {
    // The (count, data) form copies into an array the interpreter owns.
    return py::array_t<int16_t>(static_cast<py::ssize_t>(samples.size()), samples.data());
}

AudioStream stream_from_array(
    const py::array_t<int16_t, py::array::c_style | py::array::forcecast>& samples,
    uint32_t sample_rate) {
    if (samples.ndim() != 1) throw InvalidParams("samples must be a one-dimensional array");
    AudioStream s;
    s.sample_rate = sample_rate;
    s.samples.assign(samples.data(), samples.data() + samples.size());
    return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Speech recording decoder, switch-marker detector and phoneme splitter";
#ifdef PHONOSPLIT_VERSION
    m.attr("__version__") = PHONOSPLIT_VERSION;
#else
    m.attr("__version__") = "dev";
#endif

    py::register_exception<Error>(m, "PhonosplitError");

    py::class_<AudioStream>(m, "AudioStream")
        .def(py::init(&stream_from_array), py::arg("samples"), py::arg("sample_rate") = 16000)
        .def_property_readonly(
            "samples", [](const AudioStream& s) { return to_array(s.samples); })
        .def_readwrite("sample_rate", &AudioStream::sample_rate)
        .def("__len__", &AudioStream::size)
        .def_property_readonly("duration_seconds", &AudioStream::duration_seconds)
        .def("peak", &AudioStream::peak);

    py::class_<DetectionParams>(m, "DetectionParams")
        .def(py::init([](int32_t a, int32_t t, int32_t p, int32_t tr) {
                 DetectionParams dp{a, t, p, tr};
                 dp.validate();
                 return dp;
             }),
             py::arg("threshold_a") = 27000, py::arg("window_t") = 50,
             py::arg("percent_p") = 75, py::arg("skip_tr") = 350)
        .def_readwrite("threshold_a", &DetectionParams::threshold_a)
        .def_readwrite("window_t", &DetectionParams::window_t)
        .def_readwrite("percent_p", &DetectionParams::percent_p)
        .def_readwrite("skip_tr", &DetectionParams::skip_tr);

    py::class_<DetectionResult>(m, "DetectionResult")
        .def_readonly("positions", &DetectionResult::positions)
        .def_readonly("op_count", &DetectionResult::op_count)
        .def_readonly("candidates_evaluated", &DetectionResult::candidates_evaluated)
        .def_readonly("candidates_accepted", &DetectionResult::candidates_accepted)
        .def_readonly("stream_len", &DetectionResult::stream_len);

    py::class_<MarkerTemplate>(m, "MarkerTemplate")
        .def(py::init<>())
        .def_readwrite("a1", &MarkerTemplate::a1)
        .def_readwrite("a2", &MarkerTemplate::a2)
        .def_readwrite("t1", &MarkerTemplate::t1)
        .def_readwrite("t2", &MarkerTemplate::t2)
        .def_readwrite("settle_samples", &MarkerTemplate::settle_samples)
        .def_readwrite("settle_band", &MarkerTemplate::settle_band)
        .def_readwrite("polarity", &MarkerTemplate::polarity)
        .def("scaled", &MarkerTemplate::scaled, py::arg("amplitude_scale"));

    py::enum_<RecorderState>(m, "RecorderState")
        .value("S1", RecorderState::s1)
        .value("S2", RecorderState::s2)
        .value("S23", RecorderState::s23)
        .value("S3", RecorderState::s3)
        .value("S31", RecorderState::s31);

    py::enum_<RecorderEvent>(m, "RecorderEvent")
        .value("PRESS", RecorderEvent::press)
        .value("RELEASE", RecorderEvent::release)
        .value("VCVA_TIMEOUT", RecorderEvent::vcva_timeout)
        .value("PAUSE", RecorderEvent::pause)
        .value("RESUME", RecorderEvent::resume);

    py::enum_<SegmentKind>(m, "SegmentKind")
        .value("PHONEME", SegmentKind::phoneme)
        .value("SILENCE", SegmentKind::silence)
        .value("MARKER", SegmentKind::marker);

    py::class_<Segment>(m, "Segment")
        .def_readonly("start", &Segment::start)
        .def_readonly("end", &Segment::end)
        .def_readonly("kind", &Segment::kind)
        .def_readonly("index", &Segment::index)
        .def("__len__", &Segment::length);

    py::class_<SilenceParams>(m, "SilenceParams")
        .def(py::init([](int32_t max_abs, size_t min_len) {
                 SilenceParams sp{max_abs, min_len};
                 sp.validate();
                 return sp;
             }),
             py::arg("max_abs") = 1638, py::arg("min_len") = 16000)
        .def_readwrite("max_abs", &SilenceParams::max_abs)
        .def_readwrite("min_len", &SilenceParams::min_len);

    py::class_<Segmentation>(m, "Segmentation")
        .def_readonly("segments", &Segmentation::segments)
        .def_readonly("warnings", &Segmentation::warnings);

    py::class_<RecordingScript>(m, "RecordingScript")
        .def(py::init<>())
        .def_readwrite("phoneme_count", &RecordingScript::phoneme_count)
        .def_readwrite("phoneme_len_range", &RecordingScript::phoneme_len_range)
        .def_readwrite("silence_len_range", &RecordingScript::silence_len_range)
        .def_readwrite("phoneme_amplitude", &RecordingScript::phoneme_amplitude)
        .def_readwrite("noise_floor", &RecordingScript::noise_floor)
        .def_readwrite("marker_noise", &RecordingScript::marker_noise)
        .def_readwrite("marker_scale", &RecordingScript::marker_scale)
        .def_readwrite("early_press_rate", &RecordingScript::early_press_rate)
        .def_readwrite("pause_rate", &RecordingScript::pause_rate)
        .def_readwrite("seed", &RecordingScript::seed)
        .def_readwrite("sample_rate", &RecordingScript::sample_rate)
        .def_readwrite("marker", &RecordingScript::marker);

    py::class_<StateEvent>(m, "StateEvent")
        .def_readonly("index", &StateEvent::index)
        .def_readonly("state", &StateEvent::state);

    py::enum_<AnomalyKind>(m, "AnomalyKind")
        .value("EARLY_PRESS", AnomalyKind::early_press)
        .value("PAUSE", AnomalyKind::pause);

    py::class_<Anomaly>(m, "Anomaly")
        .def_readonly("kind", &Anomaly::kind)
        .def_readonly("phoneme", &Anomaly::phoneme)
        .def_readonly("index", &Anomaly::index);

    py::class_<GroundTruth>(m, "GroundTruth")
        .def_readonly("marker_positions", &GroundTruth::marker_positions)
        .def_readonly("phoneme_spans", &GroundTruth::phoneme_spans)
        .def_readonly("state_trace", &GroundTruth::state_trace)
        .def_readonly("anomalies", &GroundTruth::anomalies);

    py::class_<GeneratedRecording>(m, "GeneratedRecording")
        .def_readonly("stream", &GeneratedRecording::stream)
        .def_readonly("truth", &GeneratedRecording::truth);

    py::class_<EvalReport>(m, "EvalReport")
        .def_readonly("recall", &EvalReport::recall)
        .def_readonly("precision", &EvalReport::precision)
        .def_readonly("matched", &EvalReport::matched)
        .def_readonly("truth_count", &EvalReport::truth_count)
        .def_readonly("detected_count", &EvalReport::detected_count)
        .def_readonly("position_errors", &EvalReport::position_errors);

    py::class_<ComplexityRun>(m, "ComplexityRun")
        .def_readonly("stream_len", &ComplexityRun::stream_len)
        .def_readonly("accepted", &ComplexityRun::accepted)
        .def_readonly("candidates", &ComplexityRun::candidates)
        .def_readonly("op_count", &ComplexityRun::op_count);

    py::class_<LinearFit>(m, "LinearFit")
        .def_readonly("slope", &LinearFit::slope)
        .def_readonly("intercept", &LinearFit::intercept)
        .def_readonly("r_squared", &LinearFit::r_squared);

    py::class_<ComplexityReport>(m, "ComplexityReport")
        .def_readonly("runs", &ComplexityReport::runs)
        .def_readonly("best_case_residuals", &ComplexityReport::best_case_residuals)
        .def_readonly("worst_literal_predictions", &ComplexityReport::worst_literal_predictions)
        .def_readonly("fitted_a", &ComplexityReport::fitted_a)
        .def_readonly("fitted_b", &ComplexityReport::fitted_b)
        .def_readonly("linear_fit", &ComplexityReport::linear_fit)
        .def_readonly("note", &ComplexityReport::note);

    // codec
    m.def("load_wav", &load_wav, py::arg("path"),
          "Read a mono PCM16 or IMA-ADPCM WAV file");
    m.def(
        "save_wav_pcm16",
        [](const std::filesystem::path& path, const AudioStream& stream) {
            save_file(path, encode_wav_pcm16(stream));
        },
        py::arg("path"), py::arg("stream"));
    m.def(
        "save_wav_adpcm",
        [](const std::filesystem::path& path, const AudioStream& stream, uint16_t spb) {
            save_file(path, encode_wav_adpcm(stream, spb));
        },
        py::arg("path"), py::arg("stream"), py::arg("samples_per_block") = 505);
    m.def("snr_db", &snr_db, py::arg("reference"), py::arg("test"));

    // marker model
    m.def("default_template", &default_template);
    m.def(
        "synthesize_marker",
        [](const MarkerTemplate& tpl, double noise_fraction, uint32_t seed) {
            return to_array(synthesize_marker(tpl, noise_fraction, seed));
        },
        py::arg("template"), py::arg("noise_fraction") = 0.0, py::arg("seed") = 0);
    m.def("step_state", &step_state, py::arg("current"), py::arg("event"));

    // detection
    m.def("detect_markers", &detect_markers, py::arg("stream"),
          py::arg("params") = DetectionParams{});
    m.def("is_marker_window", &is_marker_window, py::arg("stream"), py::arg("start"),
          py::arg("params") = DetectionParams{});
    m.def("count_candidates", &count_candidates, py::arg("stream"),
          py::arg("params") = DetectionParams{});

    // segmentation
    m.def("segment_stream", &segment_stream, py::arg("stream"), py::arg("markers"),
          py::arg("marker_len") = 350, py::arg("silence") = SilenceParams{});
    m.def(
        "export_segments",
        [](const AudioStream& stream, const std::vector<Segment>& segments,
           std::optional<SegmentKind> kind, const std::filesystem::path& directory,
           const std::string& pattern) {
            return export_segments(stream, segments, kind, directory, pattern);
        },
        py::arg("stream"), py::arg("segments"), py::arg("kind"), py::arg("directory"),
        py::arg("pattern") = "{kind}_{n}.wav");

    // synthetic corpus
    m.def("generate_recording", &generate_recording, py::arg("script"));
    m.def("evaluate_detection", &evaluate_detection, py::arg("truth"), py::arg("result"),
          py::arg("tolerance") = 5);

    // complexity harness
    m.def("op_count_rule", &op_count_rule);
    m.def(
        "verify_best_case",
        [](const std::vector<std::pair<size_t, size_t>>& combos, const DetectionParams& p) {
            return verify_best_case(combos, p);
        },
        py::arg("stream_marker_counts"), py::arg("params") = DetectionParams{});
    m.def("verify_worst_case", &verify_worst_case, py::arg("sizes"),
          py::arg("params") = DetectionParams{});
    m.def("fit_linear_complexity", &fit_linear_complexity, py::arg("sizes"), py::arg("script"),
          py::arg("params") = DetectionParams{});
}
