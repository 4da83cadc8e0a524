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

#include "phonosplit/adpcm.hpp"

#include <algorithm>
#include <cstdlib>

#include "phonosplit/errors.hpp"

namespace phonosplit {

namespace {

constexpr int32_t kStepTable[89] = {
    7,     8,     9,     10,    11,    12,    13,    14,    16,    17,
    19,    21,    23,    25,    28,    31,    34,    37,    41,    45,
    50,    55,    60,    66,    73,    80,    88,    97,    107,   118,
    130,   143,   157,   173,   190,   209,   230,   253,   279,   307,
    337,   371,   408,   449,   494,   544,   598,   658,   724,   796,
    876,   963,   1060,  1166,  1282,  1411,  1552,  1707,  1878,  2066,
    2272,  2499,  2749,  3024,  3327,  3660,  4026,  4428,  4871,  5358,
    5894,  6484,  7132,  7845,  8630,  9493,  10442, 11487, 12635, 13899,
    15289, 16818, 18500, 20350, 22385, 24623, 27086, 29794, 32767};

constexpr int kIndexAdjust[8] = {-1, -1, -1, -1, 2, 4, 6, 8};

int clamp_index(int index) { return std::clamp(index, 0, 88); }

int16_t clamp_sample(int32_t s) {
    return static_cast<int16_t>(std::clamp<int32_t>(s, -32768, 32767));
}

int32_t nibble_diff(int32_t step, uint8_t nibble) {
    int32_t diff = step >> 3;
    if (nibble & 1) diff += step >> 2;
    if (nibble & 2) diff += step >> 1;
    if (nibble & 4) diff += step;
    if (nibble & 8) diff = -diff;
    return diff;
}

// Smallest index whose largest representable difference (15/8 of the step)
// covers `delta`.
uint8_t fit_step_index(int32_t delta) {
    for (int i = 0; i < 89; ++i)
        if ((kStepTable[i] * 15) >> 3 >= delta) return static_cast<uint8_t>(i);
    return 88;
}

}  // namespace

int32_t adpcm_step_size(int step_index) { return kStepTable[clamp_index(step_index)]; }

AudioStream decode_adpcm(const std::vector<AdpcmBlock>& blocks, uint32_t sample_rate) {
    AudioStream out;
    out.sample_rate = sample_rate;
    size_t total = 0;
    for (const auto& b : blocks) total += 1 + b.nibbles.size();
    out.samples.reserve(total);

    for (const auto& block : blocks) {
        int32_t sample = block.predictor;
        int index = clamp_index(block.step_index);
        out.samples.push_back(static_cast<int16_t>(sample));
        for (uint8_t raw : block.nibbles) {
            const uint8_t nibble = raw & 0x0f;
            const int32_t step = kStepTable[index];
            sample = clamp_sample(sample + nibble_diff(step, nibble));
            index = clamp_index(index + kIndexAdjust[nibble & 7]);
            out.samples.push_back(static_cast<int16_t>(sample));
        }
    }
    return out;
}

std::vector<AdpcmBlock> encode_adpcm(const AudioStream& stream, uint16_t samples_per_block) {
    if (samples_per_block < 2)
        throw InvalidBlockSize("samples per block must be at least 2");

    std::vector<AdpcmBlock> blocks;
    const size_t n = stream.size();
    blocks.reserve((n + samples_per_block - 1) / samples_per_block);

    for (size_t start = 0; start < n; start += samples_per_block) {
        const size_t count = std::min<size_t>(samples_per_block, n - start);
        AdpcmBlock block;
        block.predictor = stream.samples[start];

        int32_t max_delta = 0;
        for (size_t i = 1; i < count; ++i) {
            const int32_t d = std::abs(static_cast<int32_t>(stream.samples[start + i]) -
                                       stream.samples[start + i - 1]);
            max_delta = std::max(max_delta, d);
        }
        block.step_index = fit_step_index(max_delta);

        int32_t predicted = block.predictor;
        int index = block.step_index;
        block.nibbles.reserve(count - 1);
        for (size_t i = 1; i < count; ++i) {
            const int32_t step = kStepTable[index];
            int32_t delta = stream.samples[start + i] - predicted;
            uint8_t nibble = 0;
            if (delta < 0) {
                nibble = 8;
                delta = -delta;
            }
            if (delta >= step) {
                nibble |= 4;
                delta -= step;
            }
            if (delta >= step >> 1) {
                nibble |= 2;
                delta -= step >> 1;
            }
            if (delta >= step >> 2) nibble |= 1;

            predicted = clamp_sample(predicted + nibble_diff(step, nibble));
            index = clamp_index(index + kIndexAdjust[nibble & 7]);
            block.nibbles.push_back(nibble);
        }
        blocks.push_back(std::move(block));
    }
    return blocks;
}

std::vector<uint8_t> pack_adpcm_payload(const std::vector<AdpcmBlock>& blocks,
                                        uint16_t block_align) {
    if (block_align < 5) throw InvalidBlockSize("block align must be at least 5");
    const size_t nibbles_per_block = 2 * (static_cast<size_t>(block_align) - 4);

    std::vector<uint8_t> out;
    out.reserve(blocks.size() * block_align);
    for (const auto& block : blocks) {
        if (block.nibbles.size() > nibbles_per_block)
            throw InvalidBlockSize("block holds more nibbles than the block align allows");
        out.push_back(static_cast<uint8_t>(block.predictor & 0xff));
        out.push_back(static_cast<uint8_t>((block.predictor >> 8) & 0xff));
        out.push_back(block.step_index);
        out.push_back(0);  // reserved
        for (size_t i = 0; i < nibbles_per_block; i += 2) {
            const uint8_t lo = i < block.nibbles.size() ? (block.nibbles[i] & 0x0f) : 0;
            const uint8_t hi = i + 1 < block.nibbles.size() ? (block.nibbles[i + 1] & 0x0f) : 0;
            out.push_back(static_cast<uint8_t>(lo | (hi << 4)));
        }
    }
    return out;
}

std::vector<AdpcmBlock> unpack_adpcm_payload(std::span<const uint8_t> payload,
                                             uint16_t block_align,
                                             uint32_t declared_sample_count) {
    if (block_align < 5) throw InvalidBlockSize("block align must be at least 5");
    if (payload.size() % block_align != 0)
        throw TruncatedData("payload is not a whole number of blocks");

    const size_t block_count = payload.size() / block_align;
    const size_t samples_per_block = samples_per_block_for(block_align);
    size_t remaining =
        declared_sample_count ? declared_sample_count : block_count * samples_per_block;

    std::vector<AdpcmBlock> blocks;
    blocks.reserve(block_count);
    for (size_t b = 0; b < block_count && remaining > 0; ++b) {
        const uint8_t* p = payload.data() + b * block_align;
        AdpcmBlock block;
        block.predictor = static_cast<int16_t>(p[0] | (p[1] << 8));
        block.step_index = static_cast<uint8_t>(std::min<int>(p[2], 88));
        const size_t want = std::min(remaining, samples_per_block);
        block.nibbles.reserve(want - 1);
        for (size_t i = 0; i + 1 < want; ++i) {
            const uint8_t byte = p[4 + i / 2];
            block.nibbles.push_back(i % 2 == 0 ? (byte & 0x0f) : (byte >> 4));
        }
        remaining -= want;
        blocks.push_back(std::move(block));
    }
    return blocks;
}

uint16_t block_align_for(uint16_t samples_per_block) {
    if (samples_per_block < 3 || samples_per_block % 2 == 0)
        throw InvalidBlockSize("samples per block must be odd and >= 3");
    return static_cast<uint16_t>(4 + (samples_per_block - 1) / 2);
}

uint16_t samples_per_block_for(uint16_t block_align) {
    if (block_align < 5) throw InvalidBlockSize("block align must be at least 5");
    return static_cast<uint16_t>((block_align - 4) * 2 + 1);
}

}  // namespace phonosplit
