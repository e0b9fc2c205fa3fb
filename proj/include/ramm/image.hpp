#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/crc.hpp>

#include "ramm/codec.hpp"
#include "ramm/core.hpp"
#include "ramm/errors.hpp"

namespace ramm {

// Row-major, channel-interleaved 8-bit samples; channels is 1 (gray) or 3 (RGB).
struct RawImage {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint8_t channels = 1;
    std::vector<std::uint8_t> samples;
    bool operator==(const RawImage&) const = default;
};

inline void validate_image(const RawImage& img) {
    if (img.width == 0 || img.height == 0)
        throw Error(Errc::InvalidImage, "dimensions must be positive");
    if (img.channels != 1 && img.channels != 3)
        throw Error(Errc::InvalidImage, "channels must be 1 or 3");
    const std::uint64_t expected =
        std::uint64_t(img.width) * img.height * img.channels;
    if (img.samples.size() != expected)
        throw Error(Errc::InvalidImage, "sample count does not match dimensions");
}

inline std::uint32_t sample_crc32(std::span<const std::uint8_t> samples) {
    boost::crc_32_type crc;
    if (!samples.empty()) crc.process_bytes(samples.data(), samples.size());
    return static_cast<std::uint32_t>(crc.checksum());
}

// Container byte layout: "RAMM", version 0x01, flags (bit0 = checksum
// present), channels, then one binary ciphertext record for the width, one
// for the height, and one per sample in row-major channel-interleaved order,
// then an optional big-endian crc32 of the raw sample bytes. All multi-byte
// integers are big-endian. The key is never stored.
inline constexpr std::array<std::uint8_t, 4> kContainerMagic{'R', 'A', 'M', 'M'};
inline constexpr std::uint8_t kContainerVersion = 0x01;
inline constexpr std::uint8_t kFlagChecksum = 0x01;

struct ImageContainer {
    std::uint8_t channels = 1;
    CipherText width_cipher;
    CipherText height_cipher;
    std::vector<CipherText> pixel_ciphers;
    std::optional<std::uint32_t> checksum;
    bool operator==(const ImageContainer&) const = default;
};

// Uniform offset added to every plaintext so that Data > Key holds even for
// sample value 0 and 1x1 images. key + 1 is the smallest such shift.
inline BigInt image_bias(const KeyValue& key) { return key.value() + 1; }

struct ImageEncryptOptions {
    bool with_checksum = false;
    std::size_t max_ops = kMaxOpsDefault;
};

inline ImageContainer encrypt_image(const RawImage& img, const KeyValue& key,
                                    const ImageEncryptOptions& opts = {}) {
    validate_image(img);
    const BigInt bias = image_bias(key);
    const auto encrypt_record = [&](const BigInt& value, std::size_t record) {
        try {
            return encrypt(value + bias, key, opts.max_ops);
        } catch (const Error& e) {
            throw ImageError(e.code(), record, e.detail());
        }
    };

    ImageContainer out;
    out.channels = img.channels;
    out.width_cipher = encrypt_record(BigInt(img.width), 0);
    out.height_cipher = encrypt_record(BigInt(img.height), 1);
    out.pixel_ciphers.reserve(img.samples.size());
    for (std::size_t i = 0; i < img.samples.size(); ++i)
        out.pixel_ciphers.push_back(encrypt_record(BigInt(img.samples[i]), 2 + i));
    if (opts.with_checksum) out.checksum = sample_crc32(img.samples);
    return out;
}

inline RawImage decrypt_image(const ImageContainer& container, const KeyValue& key) {
    if (container.channels != 1 && container.channels != 3)
        throw ImageError(Errc::BadChannels, "channels must be 1 or 3");
    const BigInt bias = image_bias(key);
    const auto decrypt_record = [&](const CipherText& cipher, std::size_t record) {
        try {
            return decrypt(cipher, key) - bias;
        } catch (const Error& e) {
            throw ImageError(e.code(), record, e.detail());
        }
    };

    const BigInt width = decrypt_record(container.width_cipher, 0);
    const BigInt height = decrypt_record(container.height_cipher, 1);
    if (width < 1 || width > 0xFFFFFFFF)
        throw ImageError(Errc::BoundaryOutOfRange, 0, "decrypted width " + width.str());
    if (height < 1 || height > 0xFFFFFFFF)
        throw ImageError(Errc::BoundaryOutOfRange, 1, "decrypted height " + height.str());
    const BigInt expected_samples = width * height * container.channels;
    if (expected_samples != BigInt(container.pixel_ciphers.size()))
        throw ImageError(Errc::RecordCountMismatch,
                         "boundary says " + expected_samples.str() + " samples, container holds " +
                             std::to_string(container.pixel_ciphers.size()));

    RawImage img;
    img.width = width.convert_to<std::uint32_t>();
    img.height = height.convert_to<std::uint32_t>();
    img.channels = container.channels;
    img.samples.reserve(container.pixel_ciphers.size());
    for (std::size_t i = 0; i < container.pixel_ciphers.size(); ++i) {
        const BigInt value = decrypt_record(container.pixel_ciphers[i], 2 + i);
        if (value < 0 || value > 255)
            throw ImageError(Errc::SampleOutOfRange, 2 + i, "decrypted sample " + value.str());
        img.samples.push_back(value.convert_to<std::uint8_t>());
    }
    if (container.checksum && *container.checksum != sample_crc32(img.samples))
        throw ImageError(Errc::ChecksumMismatch, "sample crc32 does not match");
    return img;
}

inline std::vector<std::uint8_t> container_to_bytes(const ImageContainer& container) {
    std::vector<std::uint8_t> out(kContainerMagic.begin(), kContainerMagic.end());
    out.push_back(kContainerVersion);
    out.push_back(container.checksum ? kFlagChecksum : std::uint8_t{0});
    out.push_back(container.channels);
    const auto append_record = [&out](const CipherText& cipher, std::size_t record) {
        try {
            append_binary_record(out, cipher);
        } catch (const Error& e) {
            throw ImageError(e.code(), record, e.detail());
        }
    };
    append_record(container.width_cipher, 0);
    append_record(container.height_cipher, 1);
    for (std::size_t i = 0; i < container.pixel_ciphers.size(); ++i)
        append_record(container.pixel_ciphers[i], 2 + i);
    if (container.checksum) {
        const std::uint32_t crc = *container.checksum;
        out.push_back(static_cast<std::uint8_t>(crc >> 24));
        out.push_back(static_cast<std::uint8_t>(crc >> 16));
        out.push_back(static_cast<std::uint8_t>(crc >> 8));
        out.push_back(static_cast<std::uint8_t>(crc));
    }
    return out;
}

// Structural parse; no key needed. Record payloads are validated as strict
// ciphertext, but whether the record count matches the boundary is only known
// once decrypt_image has the key.
inline ImageContainer container_from_bytes(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 7)
        throw ImageError(Errc::TruncatedRecord, "container header cut short");
    if (!std::equal(kContainerMagic.begin(), kContainerMagic.end(), bytes.begin()))
        throw ImageError(Errc::BadMagic, "not a RAMM container");
    if (bytes[4] != kContainerVersion)
        throw ImageError(Errc::BadVersion, "unsupported version " + std::to_string(bytes[4]));
    const std::uint8_t flags = bytes[5];
    if (flags & ~kFlagChecksum)
        throw ImageError(Errc::BadFlags, "unknown flag bits set");
    const std::uint8_t channels = bytes[6];
    if (channels != 1 && channels != 3)
        throw ImageError(Errc::BadChannels, "channels byte must be 1 or 3");

    const bool has_checksum = flags & kFlagChecksum;
    if (has_checksum && bytes.size() < 7 + 4)
        throw ImageError(Errc::TruncatedRecord, "container too short for its checksum");
    const std::size_t body_end = bytes.size() - (has_checksum ? 4 : 0);
    const auto body = bytes.first(body_end);

    std::size_t pos = 7;
    const auto read_record = [&](std::size_t record) {
        try {
            return read_binary_record(body, pos);
        } catch (const ParseError& e) {
            throw ImageError(e.code(), record, e.raw_detail());
        }
    };

    ImageContainer container;
    container.channels = channels;
    container.width_cipher = read_record(0);
    container.height_cipher = read_record(1);
    for (std::size_t record = 2; pos < body_end; ++record)
        container.pixel_ciphers.push_back(read_record(record));
    if (has_checksum) {
        container.checksum = (std::uint32_t(bytes[body_end]) << 24) |
                             (std::uint32_t(bytes[body_end + 1]) << 16) |
                             (std::uint32_t(bytes[body_end + 2]) << 8) |
                             std::uint32_t(bytes[body_end + 3]);
    }
    return container;
}

// Binary PGM (P5) and PPM (P6) with maxval 255. Header tokens may be
// separated by whitespace runs and '#' comments; the raster follows a single
// whitespace byte after the maxval.
inline RawImage read_pnm(std::span<const std::uint8_t> bytes) {
    const auto is_space = [](std::uint8_t c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
    };
    if (bytes.size() < 2 || bytes[0] != 'P')
        throw Error(Errc::HeaderSyntax, "missing PNM magic");
    std::uint8_t channels = 0;
    switch (bytes[1]) {
    case '5': channels = 1; break;
    case '6': channels = 3; break;
    case '1':
    case '2':
    case '3':
    case '4':
    case '7':
        throw Error(Errc::UnsupportedFormat,
                    std::string("P") + char(bytes[1]) + " is not supported, use binary P5/P6");
    default:
        throw Error(Errc::HeaderSyntax, "unknown PNM magic");
    }

    std::size_t pos = 2;
    const auto next_int = [&]() -> std::uint64_t {
        for (;;) {
            while (pos < bytes.size() && is_space(bytes[pos])) ++pos;
            if (pos < bytes.size() && bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
                continue;
            }
            break;
        }
        if (pos == bytes.size() || !is_digit_char(char(bytes[pos])))
            throw Error(Errc::HeaderSyntax, "expected an integer header field");
        std::uint64_t value = 0;
        while (pos < bytes.size() && is_digit_char(char(bytes[pos]))) {
            value = value * 10 + (bytes[pos] - '0');
            if (value > 0xFFFFFFFFULL)
                throw Error(Errc::HeaderSyntax, "header field out of range");
            ++pos;
        }
        return value;
    };

    const std::uint64_t width = next_int();
    const std::uint64_t height = next_int();
    const std::uint64_t maxval = next_int();
    if (width == 0 || height == 0)
        throw Error(Errc::HeaderSyntax, "dimensions must be positive");
    if (maxval != 255)
        throw Error(Errc::UnsupportedFormat, "only maxval 255 is supported, got " +
                                                 std::to_string(maxval));
    if (pos == bytes.size() || !is_space(bytes[pos]))
        throw Error(Errc::HeaderSyntax, "expected single whitespace before the raster");
    ++pos;

    // Overflow-safe: reject before multiplying past the available byte count.
    const std::uint64_t avail = bytes.size() - pos;
    if (height > avail / width || width * height > avail / channels)
        throw Error(Errc::TruncatedPixels,
                    "raster needs " + std::to_string(width) + "x" + std::to_string(height) +
                        "x" + std::to_string(channels) + " bytes, " + std::to_string(avail) +
                        " present");
    const std::uint64_t needed = width * height * channels;

    RawImage img;
    img.width = static_cast<std::uint32_t>(width);
    img.height = static_cast<std::uint32_t>(height);
    img.channels = channels;
    img.samples.assign(bytes.begin() + pos, bytes.begin() + pos + needed);
    return img;
}

// Canonical form: single-space header separators, newline before the raster,
// no comments.
inline std::vector<std::uint8_t> write_pnm(const RawImage& img) {
    validate_image(img);
    const std::string header = std::string(img.channels == 1 ? "P5 " : "P6 ") +
                               std::to_string(img.width) + " " + std::to_string(img.height) +
                               " 255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), img.samples.begin(), img.samples.end());
    return out;
}

}  // namespace ramm
