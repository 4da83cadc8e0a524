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

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "phonosplit/audio.hpp"

namespace phonosplit {

enum class CodecTag : uint16_t {
    pcm16 = 0x0001,
    ima_adpcm = 0x0011,
};

const char* to_string(CodecTag tag);

/// Format half of a mono RIFF/WAVE file. block_align and samples_per_block
/// carry meaning for IMA-ADPCM only; PCM16 is normalized to block_align = 2,
/// samples_per_block = 0.
struct WavFormatDescriptor {
    CodecTag codec = CodecTag::pcm16;
    uint32_t sample_rate = 16000;
    uint16_t bits_per_sample = 16;
    uint16_t block_align = 2;
    uint16_t samples_per_block = 0;  // mono ADPCM: (block_align - 4) * 2 + 1

    bool operator==(const WavFormatDescriptor&) const = default;
};

WavFormatDescriptor pcm16_descriptor(uint32_t sample_rate);
WavFormatDescriptor adpcm_descriptor(uint32_t sample_rate, uint16_t samples_per_block);

struct ParsedWav {
    WavFormatDescriptor format;
    std::vector<uint8_t> payload;
    uint32_t declared_sample_count = 0;  // from the fact chunk; 0 when absent
};

/// Reads little-endian RIFF/WAVE with fmt + data chunks; unknown chunks are
/// skipped. Mono PCM16 (tag 0x0001) and mono IMA-ADPCM (tag 0x0011) only.
ParsedWav parse_wav(std::span<const uint8_t> bytes);

/// Emits a canonical file: RIFF/WAVE, fmt, fact (ADPCM only), data.
/// declared_sample_count overrides the fact value when nonzero; otherwise the
/// count is derived from the payload size. parse_wav(write_wav(d, p))
/// reproduces (d, p) exactly.
std::vector<uint8_t> write_wav(const WavFormatDescriptor& format,
                               std::span<const uint8_t> payload,
                               uint32_t declared_sample_count = 0);

// Whole-file helpers.
AudioStream decode_wav(std::span<const uint8_t> bytes);
std::vector<uint8_t> encode_wav_pcm16(const AudioStream& stream);
std::vector<uint8_t> encode_wav_adpcm(const AudioStream& stream, uint16_t samples_per_block = 505);

AudioStream load_wav(const std::filesystem::path& path);
void save_file(const std::filesystem::path& path, std::span<const uint8_t> bytes);
std::vector<uint8_t> read_file(const std::filesystem::path& path);

}  // namespace phonosplit
