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

#include "phonosplit/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "phonosplit/errors.hpp"

namespace phonosplit {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

KeyValues parse_key_values(const std::string& text) {
    KeyValues kv;
    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const size_t hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const std::string_view stripped = trim(line);
        if (stripped.empty()) continue;
        const size_t eq = stripped.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string_view key = trim(stripped.substr(0, eq));
        const std::string_view value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        kv[std::string(key)] = std::string(value);
    }
    return kv;
}

KeyValues load_key_values(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open config: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_key_values(buffer.str());
}

std::string serialize_key_values(const KeyValues& kv) {
    std::string out;
    for (const auto& [key, value] : kv) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    }
    return out;
}

int64_t get_int(const KeyValues& kv, std::string_view key, int64_t fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    int64_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(it->second.data(), it->second.data() + it->second.size(), value);
    if (ec != std::errc{} || ptr != it->second.data() + it->second.size())
        throw ConfigError("key '" + std::string(key) + "': '" + it->second +
                          "' is not an integer");
    return value;
}

double get_double(const KeyValues& kv, std::string_view key, double fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
        size_t used = 0;
        const double value = std::stod(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument("trailing garbage");
        return value;
    } catch (const std::exception&) {
        throw ConfigError("key '" + std::string(key) + "': '" + it->second +
                          "' is not a number");
    }
}

MarkerTemplate template_from_config(const KeyValues& kv, MarkerTemplate base) {
    base.a1 = static_cast<int32_t>(get_int(kv, "a1", base.a1));
    base.a2 = static_cast<int32_t>(get_int(kv, "a2", base.a2));
    base.t1 = static_cast<int32_t>(get_int(kv, "t1", base.t1));
    base.t2 = static_cast<int32_t>(get_int(kv, "t2", base.t2));
    base.settle_samples = static_cast<int32_t>(get_int(kv, "settle_samples", base.settle_samples));
    base.settle_band = get_double(kv, "settle_band", base.settle_band);
    base.polarity = static_cast<int>(get_int(kv, "polarity", base.polarity));
    base.validate();
    return base;
}

KeyValues template_to_config(const MarkerTemplate& tpl) {
    KeyValues kv;
    kv["a1"] = std::to_string(tpl.a1);
    kv["a2"] = std::to_string(tpl.a2);
    kv["t1"] = std::to_string(tpl.t1);
    kv["t2"] = std::to_string(tpl.t2);
    kv["settle_samples"] = std::to_string(tpl.settle_samples);
    std::ostringstream band;
    band << tpl.settle_band;
    kv["settle_band"] = band.str();
    kv["polarity"] = std::to_string(tpl.polarity);
    return kv;
}

DetectionParams detection_from_config(const KeyValues& kv, DetectionParams base) {
    base.threshold_a = static_cast<int32_t>(get_int(kv, "threshold_a", base.threshold_a));
    base.window_t = static_cast<int32_t>(get_int(kv, "window_t", base.window_t));
    base.percent_p = static_cast<int32_t>(get_int(kv, "percent_p", base.percent_p));
    base.skip_tr = static_cast<int32_t>(get_int(kv, "skip_tr", base.skip_tr));
    base.validate();
    return base;
}

KeyValues detection_to_config(const DetectionParams& params) {
    KeyValues kv;
    kv["threshold_a"] = std::to_string(params.threshold_a);
    kv["window_t"] = std::to_string(params.window_t);
    kv["percent_p"] = std::to_string(params.percent_p);
    kv["skip_tr"] = std::to_string(params.skip_tr);
    return kv;
}

SilenceParams silence_from_config(const KeyValues& kv, SilenceParams base) {
    base.max_abs = static_cast<int32_t>(get_int(kv, "silence_max_abs", base.max_abs));
    base.min_len = static_cast<size_t>(get_int(kv, "silence_min_len",
                                               static_cast<int64_t>(base.min_len)));
    base.validate();
    return base;
}

RecordingScript script_from_config(const KeyValues& kv, RecordingScript base) {
    base.phoneme_count = static_cast<size_t>(
        get_int(kv, "phoneme_count", static_cast<int64_t>(base.phoneme_count)));
    base.phoneme_len_range.first = static_cast<size_t>(
        get_int(kv, "phoneme_len_min", static_cast<int64_t>(base.phoneme_len_range.first)));
    base.phoneme_len_range.second = static_cast<size_t>(
        get_int(kv, "phoneme_len_max", static_cast<int64_t>(base.phoneme_len_range.second)));
    base.silence_len_range.first = static_cast<size_t>(
        get_int(kv, "silence_len_min", static_cast<int64_t>(base.silence_len_range.first)));
    base.silence_len_range.second = static_cast<size_t>(
        get_int(kv, "silence_len_max", static_cast<int64_t>(base.silence_len_range.second)));
    base.phoneme_amplitude = get_double(kv, "phoneme_amplitude", base.phoneme_amplitude);
    base.noise_floor = static_cast<int32_t>(get_int(kv, "noise_floor", base.noise_floor));
    base.marker_noise = get_double(kv, "marker_noise", base.marker_noise);
    base.marker_scale = get_double(kv, "marker_scale", base.marker_scale);
    base.early_press_rate = get_double(kv, "early_press_rate", base.early_press_rate);
    base.pause_rate = get_double(kv, "pause_rate", base.pause_rate);
    base.seed = static_cast<uint32_t>(get_int(kv, "seed", base.seed));
    base.sample_rate = static_cast<uint32_t>(get_int(kv, "sample_rate", base.sample_rate));
    base.marker = template_from_config(kv, base.marker);
    base.validate();
    return base;
}

KeyValues script_to_config(const RecordingScript& script) {
    KeyValues kv = template_to_config(script.marker);
    kv["phoneme_count"] = std::to_string(script.phoneme_count);
    kv["phoneme_len_min"] = std::to_string(script.phoneme_len_range.first);
    kv["phoneme_len_max"] = std::to_string(script.phoneme_len_range.second);
    kv["silence_len_min"] = std::to_string(script.silence_len_range.first);
    kv["silence_len_max"] = std::to_string(script.silence_len_range.second);
    const auto dbl = [](double v) {
        std::ostringstream s;
        s << v;
        return s.str();
    };
    kv["phoneme_amplitude"] = dbl(script.phoneme_amplitude);
    kv["noise_floor"] = std::to_string(script.noise_floor);
    kv["marker_noise"] = dbl(script.marker_noise);
    kv["marker_scale"] = dbl(script.marker_scale);
    kv["early_press_rate"] = dbl(script.early_press_rate);
    kv["pause_rate"] = dbl(script.pause_rate);
    kv["seed"] = std::to_string(script.seed);
    kv["sample_rate"] = std::to_string(script.sample_rate);
    return kv;
}

}  // namespace phonosplit
