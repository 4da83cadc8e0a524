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

#include "phonosplit/reports.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "phonosplit/errors.hpp"

namespace phonosplit {

using nlohmann::json;

json truth_to_json(const GroundTruth& truth) {
    json j;
    j["marker_positions"] = truth.marker_positions;
    json spans = json::array();
    for (const auto& [start, end] : truth.phoneme_spans)
        spans.push_back({{"start", start}, {"end", end}});
    j["phoneme_spans"] = spans;
    json trace = json::array();
    for (const StateEvent& e : truth.state_trace)
        trace.push_back({{"index", e.index}, {"state", to_string(e.state)}});
    j["state_trace"] = trace;
    json anomalies = json::array();
    for (const Anomaly& a : truth.anomalies)
        anomalies.push_back(
            {{"kind", to_string(a.kind)}, {"phoneme", a.phoneme}, {"index", a.index}});
    j["anomalies"] = anomalies;
    return j;
}

namespace {

RecorderState state_from_name(const std::string& name) {
    if (name == "S1") return RecorderState::s1;
    if (name == "S2") return RecorderState::s2;
    if (name == "S23") return RecorderState::s23;
    if (name == "S3") return RecorderState::s3;
    if (name == "S31") return RecorderState::s31;
    throw ConfigError("unknown recorder state '" + name + "'");
}

AnomalyKind anomaly_from_name(const std::string& name) {
    if (name == "early_press") return AnomalyKind::early_press;
    if (name == "pause") return AnomalyKind::pause;
    throw ConfigError("unknown anomaly kind '" + name + "'");
}

}  // namespace

GroundTruth truth_from_json(const json& j) {
    GroundTruth truth;
    truth.marker_positions = j.at("marker_positions").get<std::vector<size_t>>();
    for (const auto& span : j.at("phoneme_spans"))
        truth.phoneme_spans.emplace_back(span.at("start").get<size_t>(),
                                         span.at("end").get<size_t>());
    if (j.contains("state_trace"))
        for (const auto& e : j.at("state_trace"))
            truth.state_trace.push_back({e.at("index").get<size_t>(),
                                         state_from_name(e.at("state").get<std::string>())});
    if (j.contains("anomalies"))
        for (const auto& a : j.at("anomalies"))
            truth.anomalies.push_back({anomaly_from_name(a.at("kind").get<std::string>()),
                                       a.at("phoneme").get<size_t>(),
                                       a.at("index").get<size_t>()});
    return truth;
}

std::string truth_to_events_text(const GroundTruth& truth) {
    struct Line {
        size_t index;
        int order;  // stable tie-break so starts come before states at an index
        std::string text;
    };
    std::vector<Line> lines;
    for (const size_t m : truth.marker_positions)
        lines.push_back({m, 1, std::to_string(m) + " marker"});
    for (const auto& [start, end] : truth.phoneme_spans) {
        lines.push_back({start, 2, std::to_string(start) + " phoneme_start"});
        lines.push_back({end, 0, std::to_string(end) + " phoneme_end"});
    }
    for (const StateEvent& e : truth.state_trace)
        lines.push_back({e.index, 3, std::to_string(e.index) + " state_" + to_string(e.state)});
    for (const Anomaly& a : truth.anomalies)
        lines.push_back({a.index, 4, std::to_string(a.index) + " anomaly_" + to_string(a.kind)});

    std::stable_sort(lines.begin(), lines.end(), [](const Line& l, const Line& r) {
        return std::tie(l.index, l.order) < std::tie(r.index, r.order);
    });
    std::string out;
    for (const Line& l : lines) {
        out += l.text;
        out += '\n';
    }
    return out;
}

json eval_to_json(const EvalReport& report) {
    json j;
    j["recall"] = report.recall;
    j["precision"] = report.precision;
    j["matched"] = report.matched;
    j["truth_count"] = report.truth_count;
    j["detected_count"] = report.detected_count;
    j["position_errors"] = report.position_errors;
    return j;
}

json detection_result_to_json(const DetectionResult& result) {
    json j;
    j["positions"] = result.positions;
    j["op_count"] = result.op_count;
    j["candidates_evaluated"] = result.candidates_evaluated;
    j["candidates_accepted"] = result.candidates_accepted;
    j["stream_len"] = result.stream_len;
    return j;
}

std::string detection_result_to_csv(const DetectionResult& result) {
    std::ostringstream out;
    out << "position\n";
    for (const size_t p : result.positions) out << p << "\n";
    return out.str();
}

json complexity_to_json(const ComplexityReport& report) {
    json j;
    j["rule"] = op_count_rule();
    j["note"] = report.note;
    json runs = json::array();
    for (size_t i = 0; i < report.runs.size(); ++i) {
        const ComplexityRun& run = report.runs[i];
        json row{{"s", run.stream_len},
                 {"m", run.accepted},
                 {"c", run.candidates},
                 {"op_count", run.op_count}};
        if (i < report.best_case_residuals.size())
            row["best_case_residual"] = report.best_case_residuals[i];
        if (i < report.worst_literal_predictions.size())
            row["literal_product_prediction"] = report.worst_literal_predictions[i];
        runs.push_back(row);
    }
    j["runs"] = runs;
    j["fitted_a"] = report.fitted_a;
    j["fitted_b"] = report.fitted_b;
    j["linear_fit"] = {{"slope", report.linear_fit.slope},
                       {"intercept", report.linear_fit.intercept},
                       {"r_squared", report.linear_fit.r_squared}};
    return j;
}

std::string complexity_to_csv(const ComplexityReport& report) {
    std::ostringstream out;
    const bool best = !report.best_case_residuals.empty();
    const bool worst = !report.worst_literal_predictions.empty();
    out << "s,m,c,op_count";
    if (best) out << ",best_case_residual";
    if (worst) out << ",literal_product_prediction";
    out << "\n";
    for (size_t i = 0; i < report.runs.size(); ++i) {
        const ComplexityRun& run = report.runs[i];
        out << run.stream_len << ',' << run.accepted << ',' << run.candidates << ','
            << run.op_count;
        if (best) out << ',' << report.best_case_residuals[i];
        if (worst) out << ',' << report.worst_literal_predictions[i];
        out << "\n";
    }
    return out.str();
}

json sweep_to_json(const SweepReport& report) {
    json j;
    json rows = json::array();
    for (const SweepRow& row : report.rows)
        rows.push_back({{"threshold_a", row.params.threshold_a},
                        {"window_t", row.params.window_t},
                        {"percent_p", row.params.percent_p},
                        {"skip_tr", row.params.skip_tr},
                        {"recall", row.recall},
                        {"precision", row.precision},
                        {"mean_op_count", row.mean_op_count},
                        {"candidates", row.candidates}});
    j["rows"] = rows;
    json per_t = json::array();
    for (const auto& [t, precision] : report.precision_by_t)
        per_t.push_back({{"window_t", t}, {"mean_precision", precision}});
    j["precision_by_window_t"] = per_t;
    j["skipped_combinations"] = report.skipped_combinations;
    return j;
}

std::string sweep_to_csv(const SweepReport& report) {
    std::ostringstream out;
    out << "threshold_a,window_t,percent_p,skip_tr,recall,precision,mean_op_count,candidates\n";
    for (const SweepRow& row : report.rows)
        out << row.params.threshold_a << ',' << row.params.window_t << ','
            << row.params.percent_p << ',' << row.params.skip_tr << ',' << row.recall << ','
            << row.precision << ',' << row.mean_op_count << ',' << row.candidates << "\n";
    return out.str();
}

json split_manifest(const DetectionParams& params, const SilenceParams& silence,
                    size_t marker_len, const AudioStream& stream,
                    const DetectionResult& result, const Segmentation& segmentation,
                    const std::vector<std::filesystem::path>& files) {
    json j;
    j["parameters"] = {{"threshold_a", params.threshold_a},
                       {"window_t", params.window_t},
                       {"percent_p", params.percent_p},
                       {"skip_tr", params.skip_tr},
                       {"marker_len", marker_len},
                       {"silence_max_abs", silence.max_abs},
                       {"silence_min_len", silence.min_len}};
    j["stream"] = {{"length", stream.size()},
                   {"sample_rate", stream.sample_rate},
                   {"duration_seconds", stream.duration_seconds()},
                   {"peak", stream.peak()}};
    j["markers"] = result.positions;
    j["counters"] = {{"op_count", result.op_count},
                     {"candidates_evaluated", result.candidates_evaluated},
                     {"candidates_accepted", result.candidates_accepted}};
    json segs = json::array();
    for (const Segment& seg : segmentation.segments)
        segs.push_back({{"start", seg.start},
                        {"end", seg.end},
                        {"kind", to_string(seg.kind)},
                        {"index", seg.index}});
    j["segments"] = segs;
    json names = json::array();
    for (const auto& f : files) names.push_back(f.string());
    j["files"] = names;
    j["warnings"] = segmentation.warnings;
    return j;
}

}  // namespace phonosplit
