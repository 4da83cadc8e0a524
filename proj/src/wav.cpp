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

#include "phonosplit/wav.hpp"

#include <cstring>
#include <fstream>
#include <string>

#include "phonosplit/adpcm.hpp"
#include "phonosplit/errors.hpp"

namespace phonosplit {

namespace {

uint16_t read_u16(const uint8_t* p) { return static_cast<uint16_t>(p[0] | (p[1] << 8)); }

uint32_t read_u32(const uint8_t* p) {
    return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
           (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

void push_u16(std::vector<uint8_t>& out, uint16_t v) {
    out.push_back(static_cast<uint8_t>(v & 0xff));
    out.push_back(static_cast<uint8_t>(v >> 8));
}

void push_u32(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v & 0xff));
    out.push_back(static_cast<uint8_t>((v >> 8) & 0xff));
    out.push_back(static_cast<uint8_t>((v >> 16) & 0xff));
    out.push_back(static_cast<uint8_t>((v >> 24) & 0xff));
}

void push_tag(std::vector<uint8_t>& out, const char* tag) {
    out.insert(out.end(), tag, tag + 4);
}

bool tag_is(const uint8_t* p, const char* tag) { return std::memcmp(p, tag, 4) == 0; }

struct FmtChunk {
    uint16_t format_tag = 0;
    uint16_t channels = 0;
    uint32_t sample_rate = 0;
    uint16_t block_align = 0;
    uint16_t bits_per_sample = 0;
    uint16_t samples_per_block = 0;  // from the extension, when present
    bool has_extension = false;
};

}  // namespace

const char* to_string(CodecTag tag) {
    switch (tag) {
        case CodecTag::pcm16: return "pcm16";
        case CodecTag::ima_adpcm: return "ima_adpcm";
    }
    return "unknown";
}

WavFormatDescriptor pcm16_descriptor(uint32_t sample_rate) {
    WavFormatDescriptor d;
    d.codec = CodecTag::pcm16;
    d.sample_rate = sample_rate;
    d.bits_per_sample = 16;
    d.block_align = 2;
    d.samples_per_block = 0;
    return d;
}

WavFormatDescriptor adpcm_descriptor(uint32_t sample_rate, uint16_t samples_per_block) {
    WavFormatDescriptor d;
    d.codec = CodecTag::ima_adpcm;
    d.sample_rate = sample_rate;
    d.bits_per_sample = 4;
    d.block_align = block_align_for(samples_per_block);
    d.samples_per_block = samples_per_block;
    return d;
}

ParsedWav parse_wav(std::span<const uint8_t> bytes) {
    if (bytes.size() < 12) throw MalformedRiff("file too small for a RIFF header");
    if (!tag_is(bytes.data(), "RIFF")) throw MalformedRiff("missing RIFF magic");
    if (!tag_is(bytes.data() + 8, "WAVE")) throw MalformedRiff("missing WAVE form type");

    const uint32_t riff_size = read_u32(bytes.data() + 4);
    if (riff_size < 4) throw MalformedRiff("RIFF size smaller than the form type");

    FmtChunk fmt;
    bool fmt_seen = false;
    bool data_seen = false;
    std::vector<uint8_t> payload;
    uint32_t declared = 0;

    size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const uint8_t* header = bytes.data() + pos;
        const uint32_t chunk_size = read_u32(header + 4);
        const size_t body = pos + 8;
        if (body + chunk_size > bytes.size())
            throw TruncatedData("chunk '" + std::string(header, header + 4) +
                                "' overruns the file");

        if (tag_is(header, "fmt ")) {
            if (chunk_size < 16) throw MalformedRiff("fmt chunk shorter than 16 bytes");
            const uint8_t* f = bytes.data() + body;
            fmt.format_tag = read_u16(f + 0);
            fmt.channels = read_u16(f + 2);
            fmt.sample_rate = read_u32(f + 4);
            fmt.block_align = read_u16(f + 12);
            fmt.bits_per_sample = read_u16(f + 14);
            if (chunk_size >= 20) {
                const uint16_t cb = read_u16(f + 16);
                if (cb >= 2) {
                    fmt.samples_per_block = read_u16(f + 18);
                    fmt.has_extension = true;
                }
            }
            fmt_seen = true;
        } else if (tag_is(header, "data")) {
            payload.assign(bytes.begin() + body, bytes.begin() + body + chunk_size);
            data_seen = true;
        } else if (tag_is(header, "fact")) {
            if (chunk_size >= 4) declared = read_u32(bytes.data() + body);
        }
        // Anything else (LIST, cue, ...) is skipped.

        pos = body + chunk_size + (chunk_size & 1);  // chunks are word aligned
    }

    if (!fmt_seen) throw MalformedRiff("missing fmt chunk");
    if (!data_seen) throw MalformedRiff("missing data chunk");
    if (fmt.channels != 1)
        throw UnsupportedFormat("only mono input is supported, file has " +
                                std::to_string(fmt.channels) + " channels");
    if (fmt.sample_rate == 0) throw UnsupportedFormat("sample rate must be positive");

    ParsedWav out;
    out.declared_sample_count = declared;
    out.payload = std::move(payload);
    out.format.sample_rate = fmt.sample_rate;

    switch (fmt.format_tag) {
        case 0x0001:
            if (fmt.bits_per_sample != 16)
                throw UnsupportedFormat("PCM input must be 16-bit, got " +
                                        std::to_string(fmt.bits_per_sample));
            if (fmt.block_align != 2)
                throw UnsupportedFormat("mono PCM16 block align must be 2");
            out.format = pcm16_descriptor(fmt.sample_rate);
            break;
        case 0x0011: {
            if (fmt.bits_per_sample != 4)
                throw UnsupportedFormat("IMA-ADPCM input must be 4-bit, got " +
                                        std::to_string(fmt.bits_per_sample));
            if (fmt.block_align < 5) throw UnsupportedFormat("ADPCM block align too small");
            const uint16_t derived = samples_per_block_for(fmt.block_align);
            if (fmt.has_extension && fmt.samples_per_block != derived)
                throw UnsupportedFormat("samples per block does not match the block align");
            out.format.codec = CodecTag::ima_adpcm;
            out.format.bits_per_sample = 4;
            out.format.block_align = fmt.block_align;
            out.format.samples_per_block = derived;
            break;
        }
        default:
            throw UnsupportedFormat("unsupported codec tag 0x" + [&] {
                char buf[8];
                std::snprintf(buf, sizeof buf, "%04x", fmt.format_tag);
                return std::string(buf);
            }());
    }

    if (out.format.codec == CodecTag::ima_adpcm &&
        out.payload.size() % out.format.block_align != 0)
        throw TruncatedData("ADPCM data chunk is not a whole number of blocks");
    return out;
}

std::vector<uint8_t> write_wav(const WavFormatDescriptor& format,
                               std::span<const uint8_t> payload,
                               uint32_t declared_sample_count) {
    if (format.sample_rate == 0)
        throw InconsistentDescriptor("sample rate must be positive");

    uint32_t fact_samples = 0;
    switch (format.codec) {
        case CodecTag::pcm16:
            if (format.bits_per_sample != 16 || format.block_align != 2 ||
                format.samples_per_block != 0)
                throw InconsistentDescriptor("malformed PCM16 descriptor");
            if (payload.size() % 2 != 0)
                throw InconsistentDescriptor("PCM16 payload must hold whole samples");
            break;
        case CodecTag::ima_adpcm: {
            if (format.bits_per_sample != 4)
                throw InconsistentDescriptor("ADPCM descriptor must be 4-bit");
            if (format.samples_per_block < 3 || format.samples_per_block % 2 == 0 ||
                format.block_align != block_align_for(format.samples_per_block))
                throw InconsistentDescriptor("block align does not match samples per block");
            if (payload.size() % format.block_align != 0)
                throw InconsistentDescriptor("ADPCM payload must be a whole number of blocks");
            const uint64_t blocks = payload.size() / format.block_align;
            fact_samples = declared_sample_count
                               ? declared_sample_count
                               : static_cast<uint32_t>(blocks * format.samples_per_block);
            break;
        }
        default:
            throw InconsistentDescriptor("unknown codec tag");
    }

    const bool adpcm = format.codec == CodecTag::ima_adpcm;
    const uint32_t fmt_size = adpcm ? 20 : 16;
    const uint32_t data_pad = payload.size() & 1;
    const uint32_t riff_size = 4 + (8 + fmt_size) + (adpcm ? 8 + 4 : 0) + 8 +
                               static_cast<uint32_t>(payload.size()) + data_pad;

    std::vector<uint8_t> out;
    out.reserve(8 + riff_size);
    push_tag(out, "RIFF");
    push_u32(out, riff_size);
    push_tag(out, "WAVE");

    push_tag(out, "fmt ");
    push_u32(out, fmt_size);
    push_u16(out, static_cast<uint16_t>(format.codec));
    push_u16(out, 1);  // mono
    push_u32(out, format.sample_rate);
    const uint32_t byte_rate =
        adpcm ? static_cast<uint32_t>(static_cast<uint64_t>(format.sample_rate) *
                                      format.block_align / format.samples_per_block)
              : format.sample_rate * 2;
    push_u32(out, byte_rate);
    push_u16(out, format.block_align);
    push_u16(out, format.bits_per_sample);
    if (adpcm) {
        push_u16(out, 2);  // extension size
        push_u16(out, format.samples_per_block);
        push_tag(out, "fact");
        push_u32(out, 4);
        push_u32(out, fact_samples);
    }

    push_tag(out, "data");
    push_u32(out, static_cast<uint32_t>(payload.size()));
    out.insert(out.end(), payload.begin(), payload.end());
    if (data_pad) out.push_back(0);
    return out;
}

AudioStream decode_wav(std::span<const uint8_t> bytes) {
    const ParsedWav parsed = parse_wav(bytes);
    AudioStream stream;
    stream.sample_rate = parsed.format.sample_rate;
    if (parsed.format.codec == CodecTag::pcm16) {
        stream.samples.resize(parsed.payload.size() / 2);
        for (size_t i = 0; i < stream.samples.size(); ++i)
            stream.samples[i] = static_cast<int16_t>(read_u16(parsed.payload.data() + 2 * i));
    } else {
        const auto blocks = unpack_adpcm_payload(parsed.payload, parsed.format.block_align,
                                                 parsed.declared_sample_count);
        stream = decode_adpcm(blocks, parsed.format.sample_rate);
        if (parsed.declared_sample_count &&
            parsed.declared_sample_count < stream.samples.size())
            stream.samples.resize(parsed.declared_sample_count);
    }
    return stream;
}

std::vector<uint8_t> encode_wav_pcm16(const AudioStream& stream) {
    std::vector<uint8_t> payload;
    payload.reserve(stream.size() * 2);
    for (int16_t s : stream.samples) push_u16(payload, static_cast<uint16_t>(s));
    return write_wav(pcm16_descriptor(stream.sample_rate), payload);
}

std::vector<uint8_t> encode_wav_adpcm(const AudioStream& stream, uint16_t samples_per_block) {
    if (samples_per_block < 3 || samples_per_block % 2 == 0)
        throw InvalidBlockSize("samples per block must be odd and >= 3 for file output");
    const auto blocks = encode_adpcm(stream, samples_per_block);
    const uint16_t align = block_align_for(samples_per_block);
    const auto payload = pack_adpcm_payload(blocks, align);
    return write_wav(adpcm_descriptor(stream.sample_rate, samples_per_block), payload,
                     static_cast<uint32_t>(stream.size()));
}

AudioStream load_wav(const std::filesystem::path& path) { return decode_wav(read_file(path)); }

void save_file(const std::filesystem::path& path, std::span<const uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open for writing: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoFailure("write failed: " + path.string());
}

std::vector<uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) throw IoFailure("cannot open for reading: " + path.string());
    const std::streamsize size = in.tellg();
    in.seekg(0);
    std::vector<uint8_t> bytes(static_cast<size_t>(size));
    if (size > 0) in.read(reinterpret_cast<char*>(bytes.data()), size);
    if (!in) throw IoFailure("read failed: " + path.string());
    return bytes;
}

}  // namespace phonosplit
