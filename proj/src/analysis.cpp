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

#include "phonosplit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "phonosplit/errors.hpp"

namespace phonosplit {

namespace {

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    LinearFit fit;
    const size_t n = x.size();
    if (n < 2) return fit;
    double mean_x = 0.0, mean_y = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mean_x += x[i];
        mean_y += y[i];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mean_x) * (x[i] - mean_x);
        sxy += (x[i] - mean_x) * (y[i] - mean_y);
    }
    if (sxx <= 0.0) return fit;
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;

    double ss_res = 0.0, ss_tot = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double predicted = fit.intercept + fit.slope * x[i];
        ss_res += (y[i] - predicted) * (y[i] - predicted);
        ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
    return fit;
}

// Least squares through the origin: the density of events per sample.
double origin_slope(const std::vector<ComplexityRun>& runs, uint64_t ComplexityRun::*field) {
    double num = 0.0, den = 0.0;
    for (const auto& run : runs) {
        num += static_cast<double>(run.*field) * static_cast<double>(run.stream_len);
        den += static_cast<double>(run.stream_len) * static_cast<double>(run.stream_len);
    }
    return den > 0.0 ? num / den : 0.0;
}

void finish_report(ComplexityReport& report) {
    report.fitted_a = origin_slope(report.runs, &ComplexityRun::accepted);
    report.fitted_b = origin_slope(report.runs, &ComplexityRun::candidates);
    std::vector<double> x, y;
    x.reserve(report.runs.size());
    y.reserve(report.runs.size());
    for (const auto& run : report.runs) {
        x.push_back(static_cast<double>(run.stream_len));
        y.push_back(static_cast<double>(run.op_count));
    }
    report.linear_fit = least_squares(x, y);
}

}  // namespace

const char* op_count_rule() {
    return "One elementary operation is one sample inspection. The outer scan "
           "visits indices 0..len-t and inspects one sample per visit (len - t + 1 "
           "inspections when nothing triggers). Every candidate window evaluation "
           "inspects its t samples and costs t. An accepted candidate skips the "
           "next tr outer visits, so acceptance nets -(tr - t) operations and a "
           "rejection nets +t.";
}

ComplexityReport verify_best_case(
    const std::vector<std::pair<size_t, size_t>>& stream_marker_counts,
    const DetectionParams& params, const MarkerTemplate& tpl) {
    params.validate();
    tpl.validate();
    if (tpl.a1 <= params.threshold_a)
        throw ConstructionFailed("template amplitude does not clear the detection threshold");

    const auto wave = synthesize_marker(tpl, 0.0, 0);
    const size_t marker_len = wave.size();
    const size_t t = static_cast<size_t>(params.window_t);
    const size_t tr = static_cast<size_t>(params.skip_tr);

    ComplexityReport report;
    report.note =
        "all-accepted runs; op_count - [s - m*(tr - t)] stays at the constant "
        "1 - t because the scan visits s - t + 1 indices";

    for (const auto& [s, m] : stream_marker_counts) {
        const size_t head = 100;
        const size_t tail = tr + t + marker_len + 100;
        const size_t min_gap = std::max(tr, marker_len) + t + 1;
        if (s < head + tail + m * min_gap)
            throw ConstructionFailed("stream of " + std::to_string(s) +
                                     " samples cannot hold " + std::to_string(m) +
                                     " well-separated markers");

        AudioStream stream;
        stream.samples.assign(s, 0);
        std::vector<size_t> expected;
        const size_t gap = m ? (s - head - tail) / m : 0;
        for (size_t i = 0; i < m; ++i) {
            const size_t pos = head + i * gap;
            std::copy(wave.begin(), wave.end(),
                      stream.samples.begin() + static_cast<ptrdiff_t>(pos));
            expected.push_back(pos);
        }

        const DetectionResult r = detect_markers(stream, params);
        if (r.positions != expected || r.candidates_evaluated != m)
            throw ConstructionFailed("a constructed marker was rejected or retriggered");

        report.runs.push_back({r.stream_len, r.candidates_accepted, r.candidates_evaluated,
                               r.op_count});
        const int64_t predicted = static_cast<int64_t>(s) -
                                  static_cast<int64_t>(m) * static_cast<int64_t>(tr - t);
        report.best_case_residuals.push_back(static_cast<int64_t>(r.op_count) - predicted);
    }
    finish_report(report);
    return report;
}

ComplexityReport verify_best_case(
    const std::vector<std::pair<size_t, size_t>>& stream_marker_counts,
    const DetectionParams& params) {
    return verify_best_case(stream_marker_counts, params, default_template().scaled(1.1));
}

ComplexityReport verify_worst_case(const std::vector<size_t>& sizes,
                                   const DetectionParams& params) {
    params.validate();
    if (params.window_t < 3)
        throw ConstructionFailed(
            "window_t must be >= 3 so a sign-alternating stream is always rejected");
    if (params.threshold_a >= 32767)
        throw ConstructionFailed("no 16-bit amplitude clears the threshold");

    const int16_t amp =
        static_cast<int16_t>(std::min<int32_t>(params.threshold_a + 3000, 32767));
    ComplexityReport report;
    report.note =
        "all-rejected runs; each rejected candidate adds t inspections on top of the "
        "s - t + 1 scan, so the measured count follows (s - t + 1) + c*t; the "
        "product form s*c*t is recorded alongside for comparison and does not "
        "match the measured cost";

    for (const size_t s : sizes) {
        AudioStream stream;
        stream.samples.resize(s);
        for (size_t i = 0; i < s; ++i) stream.samples[i] = (i % 2 == 0) ? amp : -amp;

        const DetectionResult r = detect_markers(stream, params);
        if (r.candidates_accepted != 0)
            throw ConstructionFailed("an alternating candidate was unexpectedly accepted");

        report.runs.push_back({r.stream_len, r.candidates_accepted, r.candidates_evaluated,
                               r.op_count});
        report.worst_literal_predictions.push_back(
            static_cast<uint64_t>(s) * r.candidates_evaluated *
            static_cast<uint64_t>(params.window_t));
    }
    finish_report(report);
    return report;
}

ComplexityReport fit_linear_complexity(const std::vector<size_t>& sizes,
                                       const RecordingScript& script,
                                       const DetectionParams& params) {
    params.validate();
    script.validate();
    if (sizes.size() < 4) throw InsufficientSizes("at least four sizes are required");
    const auto [mn, mx] = std::minmax_element(sizes.begin(), sizes.end());
    if (*mn == 0 || *mx < 8 * *mn)
        throw InsufficientSizes("sizes must span at least an 8x range");

    // Rough per-phoneme footprint, just to aim each run near its target size;
    // the fit uses the actual generated lengths.
    const double per_phoneme =
        (script.phoneme_len_range.first + script.phoneme_len_range.second) / 2.0 +
        (script.silence_len_range.first + script.silence_len_range.second) / 2.0 +
        2.0 * script.marker.settle_samples;

    ComplexityReport report;
    report.note = "realistic recordings; op_count fitted against the generated lengths";
    for (size_t i = 0; i < sizes.size(); ++i) {
        RecordingScript run_script = script;
        run_script.phoneme_count =
            std::max<size_t>(1, static_cast<size_t>(sizes[i] / per_phoneme));
        run_script.seed = script.seed + static_cast<uint32_t>(i) * 2654435761u + 1u;

        const GeneratedRecording rec = generate_recording(run_script);
        const DetectionResult r = detect_markers(rec.stream, params);
        report.runs.push_back({r.stream_len, r.candidates_accepted, r.candidates_evaluated,
                               r.op_count});
    }
    finish_report(report);
    return report;
}

SweepReport parameter_sweep(const SweepGrid& grid, const std::vector<GeneratedRecording>& corpus,
                            size_t tolerance) {
    if (grid.a_values.empty() || grid.t_values.empty() || grid.p_values.empty() ||
        grid.tr_values.empty())
        throw EmptyGrid("every grid axis needs at least one value");
    if (corpus.empty()) throw EmptyGrid("corpus is empty");

    SweepReport report;
    std::map<int32_t, std::pair<double, size_t>> precision_acc;

    for (const int32_t a : grid.a_values)
        for (const int32_t t : grid.t_values)
            for (const int32_t p : grid.p_values)
                for (const int32_t tr : grid.tr_values) {
                    if (tr < t) {
                        ++report.skipped_combinations;
                        continue;
                    }
                    DetectionParams params;
                    params.threshold_a = a;
                    params.window_t = t;
                    params.percent_p = p;
                    params.skip_tr = tr;
                    params.validate();

                    size_t matched = 0, truth_total = 0, detected_total = 0;
                    uint64_t ops = 0, candidates = 0;
                    for (const GeneratedRecording& rec : corpus) {
                        const DetectionResult r = detect_markers(rec.stream, params);
                        const EvalReport ev = evaluate_detection(rec.truth, r, tolerance);
                        matched += ev.matched;
                        truth_total += ev.truth_count;
                        detected_total += ev.detected_count;
                        ops += r.op_count;
                        candidates += r.candidates_evaluated;
                    }

                    SweepRow row;
                    row.params = params;
                    row.recall = truth_total
                                     ? static_cast<double>(matched) / truth_total
                                     : 1.0;
                    row.precision = detected_total
                                        ? static_cast<double>(matched) / detected_total
                                        : 1.0;
                    row.mean_op_count = static_cast<double>(ops) / corpus.size();
                    row.candidates = candidates;
                    report.rows.push_back(row);

                    auto& acc = precision_acc[t];
                    acc.first += row.precision;
                    acc.second += 1;
                }

    if (report.rows.empty())
        throw EmptyGrid("the grid contained no combination with skip_tr >= window_t");

    std::sort(report.rows.begin(), report.rows.end(), [](const SweepRow& l, const SweepRow& r) {
        if (l.recall != r.recall) return l.recall > r.recall;
        if (l.precision != r.precision) return l.precision > r.precision;
        if (l.mean_op_count != r.mean_op_count) return l.mean_op_count < r.mean_op_count;
        return std::tie(l.params.threshold_a, l.params.window_t, l.params.percent_p,
                        l.params.skip_tr) <
               std::tie(r.params.threshold_a, r.params.window_t, r.params.percent_p,
                        r.params.skip_tr);
    });

    for (const auto& [t, acc] : precision_acc)
        report.precision_by_t[t] = acc.second ? acc.first / acc.second : 0.0;
    return report;
}

}  // namespace phonosplit
