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

#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

#include "phonosplit/analysis.hpp"
#include "phonosplit/errors.hpp"

using namespace phonosplit;

namespace {

RecordingScript bench_script(size_t phonemes, uint32_t seed) {
    RecordingScript s;
    s.phoneme_count = phonemes;
    s.seed = seed;
    return s;
}

}  // namespace

TEST_CASE("counting rule examples traced by hand") {
    DetectionParams p;  // a=27000 t=50 p=75 tr=350

    SUBCASE("no candidates: the scan alone") {
        AudioStream zeros;
        zeros.samples.assign(12345, 0);
        const DetectionResult r = detect_markers(zeros, p);
        CHECK(r.op_count == 12345 - 50 + 1);
    }

    SUBCASE("k rejected spikes add t each") {
        const size_t s = 20000;
        const size_t k = 8;
        AudioStream stream;
        stream.samples.assign(s, 0);
        for (size_t i = 0; i < k; ++i) stream.samples[1000 + 1100 * i] = 30000;

        const DetectionResult r = detect_markers(stream, p);
        CHECK(r.candidates_evaluated == k);
        CHECK(r.candidates_accepted == 0);
        CHECK(r.op_count == (s - 50 + 1) + k * 50);
    }

    SUBCASE("one accepted candidate saves tr - t") {
        const auto report = verify_best_case({{20000, 1}}, p);
        REQUIRE(report.runs.size() == 1);
        CHECK(report.runs[0].op_count == (20000 - 50 + 1) - (350 - 50));
    }

    SUBCASE("the rule text names the unit") {
        CHECK(std::strstr(op_count_rule(), "sample inspection") != nullptr);
    }
}

TEST_CASE("verify_best_case residuals equal the loop-bound constant") {
    DetectionParams p;
    const std::vector<std::pair<size_t, size_t>> combos{
        {50000, 0},  {50000, 5},   {50000, 20},  {100000, 1},  {100000, 10},
        {100000, 40}, {200000, 10}, {200000, 80}, {400000, 25}, {400000, 160}};
    const ComplexityReport report = verify_best_case(combos, p);
    REQUIRE(report.runs.size() == combos.size());
    REQUIRE(report.best_case_residuals.size() == combos.size());

    for (size_t i = 0; i < combos.size(); ++i) {
        const auto [s, m] = combos[i];
        CHECK(report.runs[i].stream_len == s);
        CHECK(report.runs[i].accepted == m);
        CHECK(report.runs[i].candidates == m);
        CHECK(report.best_case_residuals[i] == 1 - 50);
        CHECK(report.runs[i].op_count ==
              static_cast<uint64_t>(s - 50 + 1 - m * (350 - 50)));
    }

    // The worked example: s=100000, m=10 -> 99951 - 3000.
    CHECK(report.runs[4].op_count == 96951);

    // Doubling m at fixed s lowers the count by m*(tr - t).
    CHECK(report.runs[1].op_count - report.runs[2].op_count == 15 * (350 - 50));
}

TEST_CASE("verify_best_case rejects impossible constructions") {
    DetectionParams p;
    CHECK_THROWS_AS(verify_best_case({{2000, 10}}, p), ConstructionFailed);
    // Template amplitudes at the stock statistics sit below the threshold.
    CHECK_THROWS_AS(verify_best_case({{50000, 3}}, p, default_template()),
                    ConstructionFailed);
}

TEST_CASE("verify_worst_case measures the additive excess") {
    DetectionParams p;
    const std::vector<size_t> sizes{1000, 5000, 20000, 100000};
    const ComplexityReport report = verify_worst_case(sizes, p);
    REQUIRE(report.runs.size() == sizes.size());
    REQUIRE(report.worst_literal_predictions.size() == sizes.size());

    for (size_t i = 0; i < sizes.size(); ++i) {
        const uint64_t s = sizes[i];
        const uint64_t c = report.runs[i].candidates;
        CHECK(report.runs[i].accepted == 0);
        CHECK(c == s - 50 + 1);  // every visited index triggers
        CHECK(report.runs[i].op_count == (s - 50 + 1) + c * 50);
        CHECK(report.worst_literal_predictions[i] == s * c * 50);
        // The product form is far from the measured cost.
        CHECK(report.worst_literal_predictions[i] > report.runs[i].op_count);
    }
    CHECK(report.note.find("s*c*t") != std::string::npos);
}

TEST_CASE("an alternating stream with a higher threshold has zero candidates") {
    AudioStream alternating;
    alternating.samples.resize(1000);
    for (size_t i = 0; i < alternating.size(); ++i)
        alternating.samples[i] = i % 2 == 0 ? 30000 : -30000;

    DetectionParams high;
    high.threshold_a = 31000;
    const DetectionResult r = detect_markers(alternating, high);
    CHECK(r.candidates_evaluated == 0);
    CHECK(r.op_count == 1000 - 50 + 1);
}

TEST_CASE("halving the candidate density halves c within one") {
    DetectionParams p;
    const size_t s = 100000;

    AudioStream full;
    full.samples.resize(s);
    for (size_t i = 0; i < s; ++i) full.samples[i] = i % 2 == 0 ? 30000 : -30000;

    AudioStream half;
    half.samples.resize(s);
    for (size_t i = 0; i < s; ++i) {
        // loud samples at even indices, alternating sign among themselves
        half.samples[i] = i % 2 == 0 ? ((i / 2) % 2 == 0 ? 30000 : -30000) : 0;
    }

    const uint64_t c_full = count_candidates(full, p);
    const uint64_t c_half = count_candidates(half, p);
    CHECK(c_full == s - 50 + 1);
    CHECK(detect_markers(half, p).candidates_accepted == 0);
    const int64_t twice = static_cast<int64_t>(2 * c_half);
    CHECK(std::llabs(twice - static_cast<int64_t>(c_full)) <= 2);
}

TEST_CASE("verify_worst_case construction prerequisites") {
    DetectionParams p;
    p.window_t = 2;
    p.skip_tr = 2;
    CHECK_THROWS_AS(verify_worst_case({1000}, p), ConstructionFailed);
}

TEST_CASE("op counts grow linearly on silence: slope exactly one") {
    DetectionParams p;
    // Direct least squares over the scan-only model.
    double sum_x = 0, sum_y = 0, sum_xx = 0, sum_xy = 0;
    const std::vector<size_t> sizes{100000, 200000, 400000, 800000};
    for (const size_t s : sizes) {
        AudioStream zeros;
        zeros.samples.assign(s, 0);
        const DetectionResult r = detect_markers(zeros, p);
        sum_x += static_cast<double>(s);
        sum_y += static_cast<double>(r.op_count);
        sum_xx += static_cast<double>(s) * s;
        sum_xy += static_cast<double>(s) * r.op_count;
    }
    const double n = static_cast<double>(sizes.size());
    const double slope = (n * sum_xy - sum_x * sum_y) / (n * sum_xx - sum_x * sum_x);
    CHECK(slope == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fit_linear_complexity on realistic recordings") {
    DetectionParams p;
    const ComplexityReport report =
        fit_linear_complexity({100000, 200000, 400000, 800000}, bench_script(10, 8), p);
    REQUIRE(report.runs.size() == 4);
    CHECK(report.linear_fit.r_squared >= 0.999);
    CHECK(report.fitted_a < 0.01);
    CHECK(report.fitted_b < 0.01);
    CHECK(report.fitted_a > 0.0);

    // Lengths actually span the requested range.
    CHECK(report.runs.front().stream_len < report.runs.back().stream_len);
}

TEST_CASE("fit_linear_complexity validates its sizes") {
    DetectionParams p;
    const RecordingScript script = bench_script(5, 1);
    CHECK_THROWS_AS(fit_linear_complexity({100000, 200000, 400000}, script, p),
                    InsufficientSizes);
    CHECK_THROWS_AS(fit_linear_complexity({100000, 150000, 200000, 300000}, script, p),
                    InsufficientSizes);
}

TEST_CASE("parameter_sweep over a small corpus") {
    std::vector<GeneratedRecording> corpus;
    corpus.push_back(generate_recording(bench_script(15, 70)));
    corpus.push_back(generate_recording(bench_script(15, 71)));

    SUBCASE("the stock operating point recalls everything") {
        SweepGrid grid;
        grid.a_values = {27000};
        grid.t_values = {50};
        grid.p_values = {75};
        grid.tr_values = {350};
        const SweepReport report = parameter_sweep(grid, corpus, 5);
        REQUIRE(report.rows.size() == 1);
        CHECK(report.rows[0].recall >= 0.97);
    }

    SUBCASE("a window longer than the whole marker kills recall") {
        SweepGrid grid;
        grid.a_values = {27000};
        grid.t_values = {50, 200};
        grid.p_values = {75};
        grid.tr_values = {350};
        const SweepReport report = parameter_sweep(grid, corpus, 5);
        REQUIRE(report.rows.size() == 2);

        double recall_50 = -1, recall_200 = -1;
        for (const SweepRow& row : report.rows) {
            if (row.params.window_t == 50) recall_50 = row.recall;
            if (row.params.window_t == 200) recall_200 = row.recall;
        }
        CHECK(recall_200 < recall_50);
        CHECK(report.precision_by_t.count(50) == 1);
        CHECK(report.precision_by_t.count(200) == 1);
        // Rows come sorted by recall.
        CHECK(report.rows[0].recall >= report.rows[1].recall);
    }

    SUBCASE("a threshold above every sample finds nothing") {
        SweepGrid grid;
        grid.a_values = {32700};
        grid.t_values = {50};
        grid.p_values = {75};
        grid.tr_values = {350};
        const SweepReport report = parameter_sweep(grid, corpus, 5);
        REQUIRE(report.rows.size() == 1);
        CHECK(report.rows[0].recall == doctest::Approx(0.0));
        CHECK(report.rows[0].candidates == 0);
    }

    SUBCASE("grid validation") {
        SweepGrid grid;
        CHECK_THROWS_AS(parameter_sweep(grid, corpus, 5), EmptyGrid);
        grid.a_values = {27000};
        grid.t_values = {50};
        grid.p_values = {75};
        grid.tr_values = {40};  // all combinations have tr < t
        CHECK_THROWS_AS(parameter_sweep(grid, corpus, 5), EmptyGrid);
        grid.tr_values = {350};
        CHECK_THROWS_AS(parameter_sweep(grid, {}, 5), EmptyGrid);
    }
}
