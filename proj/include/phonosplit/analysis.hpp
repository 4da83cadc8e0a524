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
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "phonosplit/adm.hpp"
#include "phonosplit/marker.hpp"
#include "phonosplit/synthgen.hpp"

namespace phonosplit {

/// One instrumented detection run.
struct ComplexityRun {
    size_t stream_len = 0;       // s
    uint64_t accepted = 0;       // m
    uint64_t candidates = 0;     // c
    uint64_t op_count = 0;
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

struct ComplexityReport {
    std::vector<ComplexityRun> runs;
    // Best-case runs: op_count - [s - m*(tr - t)] per run. The scan visits
    // s - t + 1 indices, so the residual is the constant 1 - t.
    std::vector<int64_t> best_case_residuals;
    // Worst-case runs: the product-form prediction s*c*t recorded next to the
    // measured count; the measured count follows (s - t + 1) + c*t instead.
    std::vector<uint64_t> worst_literal_predictions;
    double fitted_a = 0.0;  // accepted markers per sample, m/s
    double fitted_b = 0.0;  // candidates per sample, c/s
    LinearFit linear_fit;
    std::string note;
};

/// The operation-counting contract implemented by detect_markers, as a
/// human-readable paragraph for embedding into reports.
const char* op_count_rule();

/// Builds silence-only streams carrying `m` noise-free markers (template
/// amplitudes must clear params.threshold_a) and checks that every candidate
/// is accepted; throws ConstructionFailed otherwise. One run per (s, m) pair.
ComplexityReport verify_best_case(const std::vector<std::pair<size_t, size_t>>& stream_marker_counts,
                                  const DetectionParams& params, const MarkerTemplate& tpl);
ComplexityReport verify_best_case(const std::vector<std::pair<size_t, size_t>>& stream_marker_counts,
                                  const DetectionParams& params);

/// Builds sign-alternating loud streams where every index is a candidate and
/// every candidate is rejected. Requires window_t >= 3 so the alternation is
/// guaranteed to fail the sign test.
ComplexityReport verify_worst_case(const std::vector<size_t>& sizes, const DetectionParams& params);

/// Generates realistic recordings near each target size, runs detection, and
/// fits op_count against the actual stream lengths. Requires at least four
/// sizes spanning an 8x range, else throws InsufficientSizes.
ComplexityReport fit_linear_complexity(const std::vector<size_t>& sizes,
                                       const RecordingScript& script,
                                       const DetectionParams& params);

struct SweepGrid {
    std::vector<int32_t> a_values;
    std::vector<int32_t> t_values;
    std::vector<int32_t> p_values;
    std::vector<int32_t> tr_values;
};

struct SweepRow {
    DetectionParams params;
    double recall = 0.0;
    double precision = 0.0;
    double mean_op_count = 0.0;
    uint64_t candidates = 0;
};

struct SweepReport {
    std::vector<SweepRow> rows;                 // sorted: recall desc, precision desc, ops asc
    std::map<int32_t, double> precision_by_t;   // small windows admit accidental peaks
    size_t skipped_combinations = 0;            // grid points with tr < t
};

/// Exhaustive grid evaluation over a corpus with ground truth. Throws
/// EmptyGrid when a grid axis or the corpus is empty.
SweepReport parameter_sweep(const SweepGrid& grid, const std::vector<GeneratedRecording>& corpus,
                            size_t tolerance);

}  // namespace phonosplit
