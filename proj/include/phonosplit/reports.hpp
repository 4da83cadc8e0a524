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

#include <string>

#include <json.hpp>

#include "phonosplit/analysis.hpp"
#include "phonosplit/segmenter.hpp"
#include "phonosplit/synthgen.hpp"

namespace phonosplit {

// Ground truth: JSON for machines, one `index type` line per event for eyes.
nlohmann::json truth_to_json(const GroundTruth& truth);
GroundTruth truth_from_json(const nlohmann::json& j);
std::string truth_to_events_text(const GroundTruth& truth);

nlohmann::json eval_to_json(const EvalReport& report);

nlohmann::json detection_result_to_json(const DetectionResult& result);
std::string detection_result_to_csv(const DetectionResult& result);

nlohmann::json complexity_to_json(const ComplexityReport& report);
std::string complexity_to_csv(const ComplexityReport& report);

nlohmann::json sweep_to_json(const SweepReport& report);
std::string sweep_to_csv(const SweepReport& report);

/// Manifest of one split run: parameters used, detected markers, segments,
/// written files and warnings, for reproducibility.
nlohmann::json split_manifest(const DetectionParams& params, const SilenceParams& silence,
                              size_t marker_len, const AudioStream& stream,
                              const DetectionResult& result, const Segmentation& segmentation,
                              const std::vector<std::filesystem::path>& files);

}  // namespace phonosplit
