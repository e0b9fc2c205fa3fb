#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ramm/errors.hpp"
#include "ramm/trace.hpp"

namespace ramm {

// Text form of a ciphertext:
//
//   cipher    := token+ " ~ " remainder
//   token     := "m" digits | "R" digits | "M" | "A"
//   digits    := [0-9]+
//   remainder := "0" | [1-9][0-9]*
//
// Strict mode accepts exactly this grammar. Lenient mode additionally reads
// 'r' as 'R', 'a' as 'A', a bare 'm' with no digits as Multiply, allows any
// whitespace around '~', and normalizes leading zeros in the remainder.
enum class ParseMode { Strict, Lenient };

inline std::string serialize(const CipherText& cipher) {
    std::string out;
    for (const OpToken& t : cipher.trace) {
        if (const auto* m = std::get_if<MutateOp>(&t)) {
            out += 'm';
            out += m->quotient.str();
        } else if (const auto* r = std::get_if<ReplicateOp>(&t)) {
            out += 'R';
            out += r->half.digits();
        } else if (is_multiply(t)) {
            out += 'M';
        } else {
            out += 'A';
        }
    }
    out += " ~ ";
    out += cipher.final_remainder.digits();
    return out;
}

inline CipherText parse(std::string_view text, ParseMode mode = ParseMode::Strict) {
    const bool lenient = (mode == ParseMode::Lenient);
    const auto is_space = [](char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
    };

    std::size_t pos = 0;
    const auto scan_digits = [&]() -> std::string_view {
        const std::size_t begin = pos;
        while (pos < text.size() && is_digit_char(text[pos])) ++pos;
        return text.substr(begin, pos - begin);
    };

    Trace tokens;
    std::vector<std::size_t> token_offsets;
    while (pos < text.size() && !is_space(text[pos]) && text[pos] != '~') {
        const std::size_t at = pos;
        const char c = text[pos];
        if (c == 'm') {
            ++pos;
            const auto digits = scan_digits();
            if (!digits.empty()) {
                tokens.emplace_back(MutateOp{digits_to_value(digits)});
            } else if (lenient) {
                tokens.emplace_back(MultiplyOp{});
            } else {
                throw ParseError(Errc::MissingOperand, pos, "'m' needs quotient digits");
            }
        } else if (c == 'R' || (lenient && c == 'r')) {
            ++pos;
            const auto digits = scan_digits();
            if (digits.empty())
                throw ParseError(Errc::MissingOperand, pos, "'R' needs replicate digits");
            tokens.emplace_back(ReplicateOp{DigitString(std::string(digits))});
        } else if (c == 'M') {
            ++pos;
            tokens.emplace_back(MultiplyOp{});
        } else if (c == 'A' || (lenient && c == 'a')) {
            ++pos;
            tokens.emplace_back(AugmentOp{});
        } else {
            throw ParseError(Errc::UnknownCharacter, pos,
                             "unexpected byte '" + std::string(1, c) + "'");
        }
        token_offsets.push_back(at);
    }
    const std::size_t token_region_end = pos;

    if (lenient) {
        while (pos < text.size() && is_space(text[pos])) ++pos;
        if (pos == text.size() || text[pos] != '~')
            throw ParseError(Errc::MissingRemainderSeparator, pos, "expected '~'");
        ++pos;
        while (pos < text.size() && is_space(text[pos])) ++pos;
    } else {
        if (text.substr(pos, 3) != " ~ ")
            throw ParseError(Errc::MissingRemainderSeparator, pos, "expected \" ~ \"");
        pos += 3;
    }

    const std::size_t remainder_at = pos;
    const auto digits = scan_digits();
    if (digits.empty())
        throw ParseError(Errc::MissingOperand, remainder_at, "remainder digits expected");
    std::string remainder(digits);
    if (lenient) {
        const std::size_t first = remainder.find_first_not_of('0');
        remainder = (first == std::string::npos) ? "0" : remainder.substr(first);
    } else if (remainder.size() > 1 && remainder.front() == '0') {
        throw ParseError(Errc::UnknownCharacter, remainder_at + 1,
                         "remainder must be canonical");
    }
    if (pos != text.size())
        throw ParseError(Errc::UnknownCharacter, pos, "trailing bytes after remainder");

    CipherText cipher{std::move(tokens), DigitString(std::move(remainder))};
    if (const auto fault = find_trace_fault(cipher.trace)) {
        const std::size_t offset = fault->token_index < token_offsets.size()
                                       ? token_offsets[fault->token_index]
                                       : token_region_end;
        throw ParseError(Errc::StructureViolation, offset, fault->reason);
    }
    return cipher;
}

// Binary record: unsigned 16-bit big-endian byte length, then that many bytes
// of the canonical text form.
inline void append_binary_record(std::vector<std::uint8_t>& out, const CipherText& cipher) {
    const std::string text = serialize(cipher);
    if (text.size() > 0xFFFF)
        throw Error(Errc::LengthOverflow, "ciphertext text form exceeds 65535 bytes");
    out.push_back(static_cast<std::uint8_t>(text.size() >> 8));
    out.push_back(static_cast<std::uint8_t>(text.size() & 0xFF));
    out.insert(out.end(), text.begin(), text.end());
}

inline std::vector<std::uint8_t> serialize_binary(const CipherText& cipher) {
    std::vector<std::uint8_t> out;
    append_binary_record(out, cipher);
    return out;
}

// Reads one record starting at pos and advances it. Offsets in errors are
// relative to the byte stream, not the record payload.
inline CipherText read_binary_record(std::span<const std::uint8_t> bytes, std::size_t& pos) {
    if (pos > bytes.size() || bytes.size() - pos < 2)
        throw ParseError(Errc::TruncatedRecord, bytes.size(), "record length prefix cut short");
    const std::size_t length = (static_cast<std::size_t>(bytes[pos]) << 8) | bytes[pos + 1];
    pos += 2;
    if (bytes.size() - pos < length)
        throw ParseError(Errc::TruncatedRecord, bytes.size(), "record payload cut short");
    const std::string_view text(reinterpret_cast<const char*>(bytes.data()) + pos, length);
    const std::size_t payload_at = pos;
    pos += length;
    try {
        return parse(text, ParseMode::Strict);
    } catch (const ParseError& e) {
        throw ParseError(e.code(), payload_at + e.offset(), e.raw_detail());
    }
}

inline CipherText parse_binary(std::span<const std::uint8_t> bytes) {
    std::size_t pos = 0;
    CipherText cipher = read_binary_record(bytes, pos);
    if (pos != bytes.size())
        throw ParseError(Errc::UnknownCharacter, pos, "trailing bytes after record");
    return cipher;
}

}  // namespace ramm
