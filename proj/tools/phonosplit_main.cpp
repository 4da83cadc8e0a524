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

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "phonosplit/analysis.hpp"
#include "phonosplit/config.hpp"
#include "phonosplit/errors.hpp"
#include "phonosplit/reports.hpp"
#include "phonosplit/segmenter.hpp"
#include "phonosplit/synthgen.hpp"
#include "phonosplit/wav.hpp"

namespace fs = std::filesystem;
using namespace phonosplit;

namespace {

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoFailure("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw IoFailure("write failed: " + path.string());
}

KeyValues maybe_load_config(const std::string& path) {
    return path.empty() ? KeyValues{} : load_key_values(path);
}

// Detection flags shared by detect/split/evaluate/sweep/bench.
// Precedence: command-line flag > config file key > stock default.
struct DetectionOpts {
    std::string config;
    int32_t threshold_a = 27000;
    int32_t window_t = 50;
    int32_t percent_p = 75;
    int32_t skip_tr = 350;
    CLI::Option* flag_a = nullptr;
    CLI::Option* flag_t = nullptr;
    CLI::Option* flag_p = nullptr;
    CLI::Option* flag_tr = nullptr;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--config", config, "flat key = value config file");
        flag_a = cmd.add_option("--threshold_a", threshold_a,
                                "amplitude a candidate sample must exceed");
        flag_t = cmd.add_option("--window_t", window_t, "candidate window length in samples");
        flag_p = cmd.add_option("--percent_p", percent_p,
                                "required percentage of loud samples in the window");
        flag_tr = cmd.add_option("--skip_tr", skip_tr,
                                 "samples skipped after an accepted marker");
    }

    DetectionParams resolve() const {
        DetectionParams params = detection_from_config(maybe_load_config(config));
        if (flag_a->count()) params.threshold_a = threshold_a;
        if (flag_t->count()) params.window_t = window_t;
        if (flag_p->count()) params.percent_p = percent_p;
        if (flag_tr->count()) params.skip_tr = skip_tr;
        params.validate();
        return params;
    }
};

struct ScriptOpts {
    std::string config;
    RecordingScript values;
    CLI::Option* count = nullptr;
    CLI::Option* seed = nullptr;
    CLI::Option* amplitude = nullptr;
    CLI::Option* noise_floor = nullptr;
    CLI::Option* marker_noise = nullptr;
    CLI::Option* marker_scale = nullptr;
    CLI::Option* early = nullptr;
    CLI::Option* pause = nullptr;
    CLI::Option* rate = nullptr;
    CLI::Option* pmin = nullptr;
    CLI::Option* pmax = nullptr;
    CLI::Option* smin = nullptr;
    CLI::Option* smax = nullptr;

    void add_to(CLI::App& cmd, bool reuse_config_flag) {
        if (!reuse_config_flag)
            cmd.add_option("--config", config, "flat key = value config file");
        count = cmd.add_option("--phoneme_count", values.phoneme_count, "utterances per session");
        seed = cmd.add_option("--seed", values.seed, "generator seed");
        amplitude = cmd.add_option("--phoneme_amplitude", values.phoneme_amplitude,
                                   "peak level as a fraction of full scale");
        noise_floor = cmd.add_option("--noise_floor", values.noise_floor,
                                     "background amplitude in quiet regions");
        marker_noise = cmd.add_option("--marker_noise", values.marker_noise,
                                      "per-sample jitter fraction on markers");
        marker_scale = cmd.add_option("--marker_scale", values.marker_scale,
                                      "amplitude scale applied to the marker template");
        early = cmd.add_option("--early_press_rate", values.early_press_rate,
                               "probability of a press before the idle pause");
        pause = cmd.add_option("--pause_rate", values.pause_rate,
                               "probability of a mid-phoneme pronunciation pause");
        rate = cmd.add_option("--sample_rate", values.sample_rate, "samples per second");
        pmin = cmd.add_option("--phoneme_len_min", values.phoneme_len_range.first,
                              "shortest utterance in samples");
        pmax = cmd.add_option("--phoneme_len_max", values.phoneme_len_range.second,
                              "longest utterance in samples");
        smin = cmd.add_option("--silence_len_min", values.silence_len_range.first,
                              "shortest idle gap in samples");
        smax = cmd.add_option("--silence_len_max", values.silence_len_range.second,
                              "longest idle gap in samples");
    }

    RecordingScript resolve(const std::string& shared_config = "") const {
        const std::string& path = config.empty() ? shared_config : config;
        RecordingScript script = script_from_config(maybe_load_config(path));
        if (count->count()) script.phoneme_count = values.phoneme_count;
        if (seed->count()) script.seed = values.seed;
        if (amplitude->count()) script.phoneme_amplitude = values.phoneme_amplitude;
        if (noise_floor->count()) script.noise_floor = values.noise_floor;
        if (marker_noise->count()) script.marker_noise = values.marker_noise;
        if (marker_scale->count()) script.marker_scale = values.marker_scale;
        if (early->count()) script.early_press_rate = values.early_press_rate;
        if (pause->count()) script.pause_rate = values.pause_rate;
        if (rate->count()) script.sample_rate = values.sample_rate;
        if (pmin->count()) script.phoneme_len_range.first = values.phoneme_len_range.first;
        if (pmax->count()) script.phoneme_len_range.second = values.phoneme_len_range.second;
        if (smin->count()) script.silence_len_range.first = values.silence_len_range.first;
        if (smax->count()) script.silence_len_range.second = values.silence_len_range.second;
        script.validate();
        return script;
    }
};

int run_decode(const std::string& input, const std::string& output) {
    const AudioStream stream = load_wav(input);
    save_file(output, encode_wav_pcm16(stream));
    std::cout << "wrote " << output << "\n"
              << "duration_seconds " << stream.duration_seconds() << "\n"
              << "sample_rate " << stream.sample_rate << "\n"
              << "samples " << stream.size() << "\n"
              << "peak " << stream.peak() << "\n";
    return 0;
}

int run_encode(const std::string& input, const std::string& output, int spb) {
    const AudioStream stream = load_wav(input);
    save_file(output, encode_wav_adpcm(stream, static_cast<uint16_t>(spb)));
    const double ratio =
        static_cast<double>(stream.size() * 2) / fs::file_size(output);
    std::cout << "wrote " << output << "\n"
              << "samples " << stream.size() << "\n"
              << "compression_ratio " << ratio << "\n";
    return 0;
}

int run_detect(const std::string& input, const DetectionOpts& opts, const std::string& report,
               const std::string& format) {
    const AudioStream stream = load_wav(input);
    const DetectionParams params = opts.resolve();
    const DetectionResult result = detect_markers(stream, params);

    std::cout << "stream_len " << result.stream_len << "\n"
              << "markers " << result.positions.size() << "\n"
              << "candidates " << result.candidates_evaluated << "\n"
              << "op_count " << result.op_count << "\n";
    for (const size_t p : result.positions) std::cout << p << "\n";

    if (!report.empty()) {
        if (format == "csv")
            write_text(report, detection_result_to_csv(result));
        else
            write_text(report, detection_result_to_json(result).dump(2) + "\n");
    }
    return 0;
}

int run_split(const std::string& input, const std::string& outdir, const DetectionOpts& opts,
              int32_t silence_max_abs, size_t silence_min_len, size_t marker_len,
              const std::string& pattern, const std::string& kind) {
    const AudioStream stream = load_wav(input);
    const DetectionParams params = opts.resolve();
    SilenceParams silence;
    silence.max_abs = silence_max_abs;
    silence.min_len = silence_min_len;

    const DetectionResult result = detect_markers(stream, params);
    const Segmentation segmentation = segment_stream(stream, result, marker_len, silence);

    std::optional<SegmentKind> filter;
    if (kind == "phoneme") filter = SegmentKind::phoneme;
    else if (kind == "silence") filter = SegmentKind::silence;
    else if (kind == "marker") filter = SegmentKind::marker;
    else if (kind != "all") throw InvalidParams("unknown kind filter '" + kind + "'");

    const auto files = export_segments(stream, segmentation.segments, filter, outdir, pattern);

    size_t phonemes = 0;
    for (const Segment& seg : segmentation.segments)
        if (seg.kind == SegmentKind::phoneme) ++phonemes;

    std::cout << "markers " << result.positions.size() << "\n"
              << "phonemes " << phonemes << "\n"
              << "files " << files.size() << "\n";
    for (const Segment& seg : segmentation.segments)
        std::cout << to_string(seg.kind) << " " << seg.index << " [" << seg.start << ", "
                  << seg.end << ")\n";
    for (const std::string& warning : segmentation.warnings)
        std::cerr << "warning: " << warning << "\n";
    if (phonemes == 0) std::cerr << "warning: no phoneme segments found\n";

    const auto manifest =
        split_manifest(params, silence, marker_len, stream, result, segmentation, files);
    write_text(fs::path(outdir) / "manifest.json", manifest.dump(2) + "\n");
    return 0;
}

int run_synth(const std::string& output, const RecordingScript& script, bool adpcm, int spb) {
    const GeneratedRecording rec = generate_recording(script);
    save_file(output, adpcm ? encode_wav_adpcm(rec.stream, static_cast<uint16_t>(spb))
                            : encode_wav_pcm16(rec.stream));

    fs::path stem = output;
    stem.replace_extension();
    const fs::path truth_path = stem.string() + ".truth.json";
    const fs::path events_path = stem.string() + ".events.txt";
    nlohmann::json truth = truth_to_json(rec.truth);
    truth["script"] = serialize_key_values(script_to_config(script));
    write_text(truth_path, truth.dump(2) + "\n");
    write_text(events_path, truth_to_events_text(rec.truth));

    std::cout << "wrote " << output << "\n"
              << "truth " << truth_path.string() << "\n"
              << "events " << events_path.string() << "\n"
              << "samples " << rec.stream.size() << "\n"
              << "markers " << rec.truth.marker_positions.size() << "\n"
              << "phonemes " << rec.truth.phoneme_spans.size() << "\n"
              << "anomalies " << rec.truth.anomalies.size() << "\n";
    return 0;
}

int run_evaluate(const std::string& input, const std::string& truth_path,
                 const DetectionOpts& opts, size_t tolerance, const std::string& report) {
    const AudioStream stream = load_wav(input);
    const DetectionParams params = opts.resolve();
    const DetectionResult result = detect_markers(stream, params);

    std::ifstream in(truth_path);
    if (!in) throw IoFailure("cannot open truth file: " + truth_path);
    nlohmann::json j;
    in >> j;
    const GroundTruth truth = truth_from_json(j);

    const EvalReport ev = evaluate_detection(truth, result, tolerance);
    std::cout << "recall " << ev.recall << "\n"
              << "precision " << ev.precision << "\n"
              << "matched " << ev.matched << " of " << ev.truth_count << " true markers, "
              << ev.detected_count << " detected\n";

    if (!report.empty()) {
        nlohmann::json out = eval_to_json(ev);
        out["detection"] = detection_result_to_json(result);
        write_text(report, out.dump(2) + "\n");
    }
    return 0;
}

int run_sweep(const ScriptOpts& script_opts, const DetectionOpts& detect_opts, size_t sessions,
              std::vector<int32_t> grid_a, std::vector<int32_t> grid_t,
              std::vector<int32_t> grid_p, std::vector<int32_t> grid_tr, size_t tolerance,
              const std::string& output) {
    const RecordingScript base = script_opts.resolve(detect_opts.config);
    const DetectionParams defaults = detect_opts.resolve();
    SweepGrid grid;
    grid.a_values = grid_a.empty() ? std::vector<int32_t>{defaults.threshold_a} : grid_a;
    grid.t_values = grid_t.empty() ? std::vector<int32_t>{defaults.window_t} : grid_t;
    grid.p_values = grid_p.empty() ? std::vector<int32_t>{defaults.percent_p} : grid_p;
    grid.tr_values = grid_tr.empty() ? std::vector<int32_t>{defaults.skip_tr} : grid_tr;

    std::vector<GeneratedRecording> corpus;
    corpus.reserve(sessions);
    for (size_t i = 0; i < sessions; ++i) {
        RecordingScript script = base;
        script.seed = base.seed + static_cast<uint32_t>(i);
        corpus.push_back(generate_recording(script));
    }

    const SweepReport report = parameter_sweep(grid, corpus, tolerance);
    write_text(output + ".csv", sweep_to_csv(report));
    write_text(output + ".json", sweep_to_json(report).dump(2) + "\n");

    std::cout << "rows " << report.rows.size() << " (skipped " << report.skipped_combinations
              << " with skip_tr < window_t)\n";
    const size_t show = std::min<size_t>(report.rows.size(), 5);
    for (size_t i = 0; i < show; ++i) {
        const SweepRow& row = report.rows[i];
        std::cout << "a=" << row.params.threshold_a << " t=" << row.params.window_t
                  << " p=" << row.params.percent_p << " tr=" << row.params.skip_tr
                  << " recall=" << row.recall << " precision=" << row.precision
                  << " ops=" << row.mean_op_count << "\n";
    }
    return 0;
}

int run_bench(const ScriptOpts& script_opts, const DetectionOpts& detect_opts,
              const std::string& mode, std::vector<size_t> sizes, const std::string& output) {
    const DetectionParams params = detect_opts.resolve();
    if (sizes.empty()) sizes = {100000, 200000, 400000, 800000};

    const auto emit = [&](const char* tag, const ComplexityReport& report) {
        write_text(output + "." + tag + ".csv", complexity_to_csv(report));
        write_text(output + "." + tag + ".json", complexity_to_json(report).dump(2) + "\n");
    };

    if (mode == "best" || mode == "all") {
        std::vector<std::pair<size_t, size_t>> combos;
        for (const size_t s : sizes) {
            combos.emplace_back(s, std::max<size_t>(1, s / 40000));
            combos.emplace_back(s, std::max<size_t>(1, s / 10000));
        }
        const ComplexityReport report = verify_best_case(combos, params);
        emit("best", report);
        std::cout << "best: runs " << report.runs.size() << ", residual "
                  << report.best_case_residuals.front() << " on every run\n";
    }
    if (mode == "worst" || mode == "all") {
        const ComplexityReport report = verify_worst_case(sizes, params);
        emit("worst", report);
        std::cout << "worst: runs " << report.runs.size() << ", measured op counts follow (s - t + 1) + c*t\n";
    }
    if (mode == "linear" || mode == "all") {
        const RecordingScript script = script_opts.resolve(detect_opts.config);
        const ComplexityReport report = fit_linear_complexity(sizes, script, params);
        emit("linear", report);
        std::cout << "linear: slope " << report.linear_fit.slope << ", r_squared "
                  << report.linear_fit.r_squared << ", a " << report.fitted_a << ", b "
                  << report.fitted_b << "\n";
    }
    if (mode != "best" && mode != "worst" && mode != "linear" && mode != "all")
        throw InvalidParams("unknown bench mode '" + mode + "'");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Speech recording decoder and phoneme splitter"};
    app.require_subcommand(1);

    // decode
    auto* decode = app.add_subcommand("decode", "decode a WAV (PCM16 or IMA-ADPCM) to PCM16");
    std::string decode_in, decode_out;
    decode->add_option("-i,--input", decode_in, "input WAV")->required();
    decode->add_option("-o,--output", decode_out, "output PCM16 WAV")->required();

    // encode
    auto* encode = app.add_subcommand("encode", "encode a WAV to mono IMA-ADPCM");
    std::string encode_in, encode_out;
    int encode_spb = 505;
    encode->add_option("-i,--input", encode_in, "input WAV")->required();
    encode->add_option("-o,--output", encode_out, "output ADPCM WAV")->required();
    encode->add_option("--samples_per_block", encode_spb, "samples per ADPCM block (odd)");

    // detect
    auto* detect = app.add_subcommand("detect", "locate switch markers in a recording");
    std::string detect_in, detect_report, detect_format = "json";
    DetectionOpts detect_opts;
    detect->add_option("-i,--input", detect_in, "input WAV")->required();
    detect_opts.add_to(*detect);
    detect->add_option("--report", detect_report, "write positions and counters to this file");
    detect->add_option("--format", detect_format, "report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    // split
    auto* split = app.add_subcommand("split", "detect markers and export phoneme WAV files");
    std::string split_in, split_out, split_pattern = "{kind}_{n}.wav", split_kind = "phoneme";
    DetectionOpts split_opts;
    int32_t split_silence_abs = 1638;
    size_t split_silence_len = 16000;
    size_t split_marker_len = 350;
    split->add_option("-i,--input", split_in, "input WAV")->required();
    split->add_option("-o,--output", split_out, "output directory")->required();
    split_opts.add_to(*split);
    split->add_option("--silence_max_abs", split_silence_abs,
                      "amplitude at or below which a sample is quiet");
    split->add_option("--silence_min_len", split_silence_len,
                      "quiet run length that counts as a real gap");
    split->add_option("--marker_len", split_marker_len, "samples reserved per marker");
    split->add_option("--pattern", split_pattern, "file name pattern with {n} and {kind}");
    split->add_option("--kind", split_kind, "which segments to export")
        ->check(CLI::IsMember({"phoneme", "silence", "marker", "all"}));

    // synth
    auto* synth = app.add_subcommand("synth", "generate a synthetic session with ground truth");
    std::string synth_out;
    bool synth_adpcm = false;
    int synth_spb = 505;
    ScriptOpts synth_script;
    synth->add_option("-o,--output", synth_out, "output WAV")->required();
    synth_script.add_to(*synth, false);
    synth->add_flag("--adpcm", synth_adpcm, "write IMA-ADPCM instead of PCM16");
    synth->add_option("--samples_per_block", synth_spb, "ADPCM samples per block");

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "compare detection against ground truth");
    std::string eval_in, eval_truth, eval_report;
    size_t eval_tolerance = 5;
    DetectionOpts eval_opts;
    evaluate->add_option("-i,--input", eval_in, "input WAV")->required();
    evaluate->add_option("--truth", eval_truth, "ground-truth JSON from synth")->required();
    eval_opts.add_to(*evaluate);
    evaluate->add_option("--tolerance", eval_tolerance, "match tolerance in samples");
    evaluate->add_option("--report", eval_report, "write the evaluation JSON here");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "grid-evaluate detection parameters");
    ScriptOpts sweep_script;
    DetectionOpts sweep_opts;
    std::string sweep_out = "sweep";
    size_t sweep_sessions = 3;
    size_t sweep_tolerance = 5;
    std::vector<int32_t> ga, gt, gp, gtr;
    sweep_opts.add_to(*sweep);
    sweep_script.add_to(*sweep, true);
    sweep->add_option("-o,--output", sweep_out, "output path prefix");
    sweep->add_option("--sessions", sweep_sessions, "synthetic sessions in the corpus");
    sweep->add_option("--tolerance", sweep_tolerance, "match tolerance in samples");
    sweep->add_option("--grid_a", ga, "threshold values to sweep");
    sweep->add_option("--grid_t", gt, "window lengths to sweep");
    sweep->add_option("--grid_p", gp, "percentages to sweep");
    sweep->add_option("--grid_tr", gtr, "skip values to sweep");

    // bench
    auto* bench = app.add_subcommand("bench", "instrumented operation-count runs");
    ScriptOpts bench_script;
    DetectionOpts bench_opts;
    std::string bench_mode = "all", bench_out = "bench";
    std::vector<size_t> bench_sizes;
    bench_opts.add_to(*bench);
    bench_script.add_to(*bench, true);
    bench->add_option("--mode", bench_mode, "best, worst, linear or all")
        ->check(CLI::IsMember({"best", "worst", "linear", "all"}));
    bench->add_option("--sizes", bench_sizes, "stream lengths to run");
    bench->add_option("-o,--output", bench_out, "output path prefix");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*decode) return run_decode(decode_in, decode_out);
        if (*encode) return run_encode(encode_in, encode_out, encode_spb);
        if (*detect) return run_detect(detect_in, detect_opts, detect_report, detect_format);
        if (*split)
            return run_split(split_in, split_out, split_opts, split_silence_abs,
                             split_silence_len, split_marker_len, split_pattern, split_kind);
        if (*synth) return run_synth(synth_out, synth_script.resolve(), synth_adpcm, synth_spb);
        if (*evaluate)
            return run_evaluate(eval_in, eval_truth, eval_opts, eval_tolerance, eval_report);
        if (*sweep)
            return run_sweep(sweep_script, sweep_opts, sweep_sessions, ga, gt, gp, gtr,
                             sweep_tolerance, sweep_out);
        if (*bench) return run_bench(bench_script, bench_opts, bench_mode, bench_sizes, bench_out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
