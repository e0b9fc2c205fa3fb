#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace ramm {

enum class Errc {
    // core algorithm
    KeyTooSmall,
    DataNotGreaterThanKey,
    NonTerminating,
    InvalidDigitString,
    InvalidMutate,
    InvalidReplicate,
    InvalidMultiply,
    InvalidAugment,
    ReplicateMismatch,
    MultiplyMismatch,
    AugmentMismatch,
    RemainderNotReduced,
    // text and binary ciphertext codec
    UnknownCharacter,
    MissingOperand,
    MissingRemainderSeparator,
    StructureViolation,
    LengthOverflow,
    TruncatedRecord,
    // image pipeline
    UnsupportedFormat,
    HeaderSyntax,
    TruncatedPixels,
    InvalidImage,
    BadMagic,
    BadVersion,
    BadFlags,
    BadChannels,
    BoundaryOutOfRange,
    RecordCountMismatch,
    SampleOutOfRange,
    ChecksumMismatch,
};

inline const char* errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::KeyTooSmall: return "KeyTooSmall";
    case Errc::DataNotGreaterThanKey: return "DataNotGreaterThanKey";
    case Errc::NonTerminating: return "NonTerminating";
    case Errc::InvalidDigitString: return "InvalidDigitString";
    case Errc::InvalidMutate: return "InvalidMutate";
    case Errc::InvalidReplicate: return "InvalidReplicate";
    case Errc::InvalidMultiply: return "InvalidMultiply";
    case Errc::InvalidAugment: return "InvalidAugment";
    case Errc::ReplicateMismatch: return "ReplicateMismatch";
    case Errc::MultiplyMismatch: return "MultiplyMismatch";
    case Errc::AugmentMismatch: return "AugmentMismatch";
    case Errc::RemainderNotReduced: return "RemainderNotReduced";
    case Errc::UnknownCharacter: return "UnknownCharacter";
    case Errc::MissingOperand: return "MissingOperand";
    case Errc::MissingRemainderSeparator: return "MissingRemainderSeparator";
    case Errc::StructureViolation: return "StructureViolation";
    case Errc::LengthOverflow: return "LengthOverflow";
    case Errc::TruncatedRecord: return "TruncatedRecord";
    case Errc::UnsupportedFormat: return "UnsupportedFormat";
    case Errc::HeaderSyntax: return "HeaderSyntax";
    case Errc::TruncatedPixels: return "TruncatedPixels";
    case Errc::InvalidImage: return "InvalidImage";
    case Errc::BadMagic: return "BadMagic";
    case Errc::BadVersion: return "BadVersion";
    case Errc::BadFlags: return "BadFlags";
    case Errc::BadChannels: return "BadChannels";
    case Errc::BoundaryOutOfRange: return "BoundaryOutOfRange";
    case Errc::RecordCountMismatch: return "RecordCountMismatch";
    case Errc::SampleOutOfRange: return "SampleOutOfRange";
    case Errc::ChecksumMismatch: return "ChecksumMismatch";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, std::string detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
          code_(code),
          detail_(std::move(detail)) {}

    Errc code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    Errc code_;
    std::string detail_;
};

// Rejection of a text or binary ciphertext; offset is the byte position the
// parser was looking at when it gave up.
class ParseError : public Error {
public:
    ParseError(Errc code, std::size_t offset, const std::string& detail)
        : Error(code, detail + " at offset " + std::to_string(offset)),
          offset_(offset),
          raw_detail_(detail) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::string& raw_detail() const noexcept { return raw_detail_; }

private:
    std::size_t offset_;
    std::string raw_detail_;
};

// Failure tied to one record of an image container. Records are counted in
// file order: 0 = width, 1 = height, 2 + i = pixel i.
class ImageError : public Error {
public:
    ImageError(Errc code, const std::string& detail) : Error(code, detail) {}
    ImageError(Errc code, std::size_t record_index, const std::string& detail)
        : Error(code, detail + " in record " + std::to_string(record_index)),
          record_index_(record_index) {}

    std::optional<std::size_t> record_index() const noexcept { return record_index_; }

private:
    std::optional<std::size_t> record_index_;
};

}  // namespace ramm
