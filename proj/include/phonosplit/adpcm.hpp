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
#include <span>
#include <vector>

#include "phonosplit/audio.hpp"

namespace phonosplit {

/// One IMA-ADPCM block: the first sample stored verbatim plus one 4-bit code
/// per following sample.
struct AdpcmBlock {
    int16_t predictor = 0;
    uint8_t step_index = 0;  // 0..88
    std::vector<uint8_t> nibbles;

    bool operator==(const AdpcmBlock&) const = default;
};

/// Step-table entry for an index in [0, 88] (clamped outside that range).
int32_t adpcm_step_size(int step_index);

AudioStream decode_adpcm(const std::vector<AdpcmBlock>& blocks, uint32_t sample_rate = 16000);

/// Greedy per-nibble quantization. Each block re-anchors on an exact sample,
/// and its starting step index is fitted to the largest sample-to-sample jump
/// inside the block so the quantizer is never left far behind a transient at
/// a block start. Throws InvalidBlockSize for samples_per_block < 2.
std::vector<AdpcmBlock> encode_adpcm(const AudioStream& stream, uint16_t samples_per_block);

/// WAV data-chunk layout: per block a 2-byte little-endian predictor, a
/// step-index byte, a reserved byte, then nibbles packed low-nibble-first.
/// A short final block is zero-padded to block_align.
std::vector<uint8_t> pack_adpcm_payload(const std::vector<AdpcmBlock>& blocks, uint16_t block_align);
std::vector<AdpcmBlock> unpack_adpcm_payload(std::span<const uint8_t> payload, uint16_t block_align,
                                             uint32_t declared_sample_count = 0);

/// 4 + (samples_per_block - 1) / 2; samples_per_block must be odd and >= 3.
uint16_t block_align_for(uint16_t samples_per_block);
/// (block_align - 4) * 2 + 1 for mono.
uint16_t samples_per_block_for(uint16_t block_align);

}  // namespace phonosplit
