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

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "phonosplit/adm.hpp"
#include "phonosplit/marker.hpp"
#include "phonosplit/segmenter.hpp"
#include "phonosplit/synthgen.hpp"

namespace phonosplit {

/// Flat `key = value` configuration. Lines may carry `#` comments; unknown
/// keys are ignored by the typed loaders so one file can configure several
/// components.
using KeyValues = std::map<std::string, std::string, std::less<>>;

KeyValues parse_key_values(const std::string& text);
KeyValues load_key_values(const std::filesystem::path& path);
std::string serialize_key_values(const KeyValues& kv);

int64_t get_int(const KeyValues& kv, std::string_view key, int64_t fallback);
double get_double(const KeyValues& kv, std::string_view key, double fallback);

// Keys: a1, a2, t1, t2, settle_samples, settle_band, polarity.
MarkerTemplate template_from_config(const KeyValues& kv, MarkerTemplate base = default_template());
KeyValues template_to_config(const MarkerTemplate& tpl);

// Keys: threshold_a, window_t, percent_p, skip_tr.
DetectionParams detection_from_config(const KeyValues& kv, DetectionParams base = {});
KeyValues detection_to_config(const DetectionParams& params);

// Keys: silence_max_abs, silence_min_len.
SilenceParams silence_from_config(const KeyValues& kv, SilenceParams base = {});

// Keys: phoneme_count, phoneme_len_min/max, silence_len_min/max,
// phoneme_amplitude, noise_floor, marker_noise, marker_scale,
// early_press_rate, pause_rate, seed, sample_rate, plus the template keys.
RecordingScript script_from_config(const KeyValues& kv, RecordingScript base = {});
KeyValues script_to_config(const RecordingScript& script);

}  // namespace phonosplit
