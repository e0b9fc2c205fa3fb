#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <regex>
#include <string>
#include <vector>

#include <ramm/codec.hpp>
#include <ramm/core.hpp>

#include "test_util.hpp"

using namespace ramm;
using testutil::aug;
using testutil::mul;
using testutil::mut;
using testutil::rep;

namespace {

const KeyValue k5{BigInt(5)};

struct Rejection {
    Errc code;
    std::size_t offset;
};

Rejection rejection(const std::string& text, ParseMode mode = ParseMode::Strict) {
    try {
        parse(text, mode);
    } catch (const ParseError& e) {
        return {e.code(), e.offset()};
    }
    FAIL("expected a ParseError for: " << text);
    return {};
}

CipherText sample_cipher(std::mt19937_64& rng) {
    const BigInt k = testutil::random_value(rng, 6) + 2;
    const BigInt d = k + 1 + testutil::random_value(rng, 10);
    return encrypt(d, KeyValue{k});
}

}  // namespace

TEST_CASE("serialize emits the canonical text form") {
    CHECK(serialize(CipherText{{mut(11), rep("2"), mut(4), mul(), rep("4"), mut(8)},
                               DigitString("4")}) == "m11R2m4MR4m8 ~ 4");
    CHECK(serialize(CipherText{{mut(11), aug(), rep("01"), mut(20), mul(), rep("1"), mut(2)},
                               DigitString("1")}) == "m11AR01m20MR1m2 ~ 1");
}

TEST_CASE("strict parse accepts the canonical form") {
    const CipherText c = parse("m11R2m4MR4m8 ~ 4");
    CHECK(c.trace == Trace{mut(11), rep("2"), mut(4), mul(), rep("4"), mut(8)});
    CHECK(c.final_remainder.digits() == "4");
    CHECK(serialize(c) == "m11R2m4MR4m8 ~ 4");
}

TEST_CASE("lenient parse reads the lowercase variant as the same ciphertext") {
    const CipherText c = parse("m11r2m4mr4m8 ~ 4", ParseMode::Lenient);
    CHECK(c == parse("m11R2m4MR4m8 ~ 4"));
    CHECK(decrypt(c, k5) == 57);
    // bare trailing 'm' also reads as Multiply
    CHECK(parse("m1R1m2mR1m2 ~ 1", ParseMode::Lenient) == parse("m1R1m2MR1m2 ~ 1"));
    // loose separators
    CHECK(parse("m11R2m4MR4m8~4", ParseMode::Lenient) == parse("m11R2m4MR4m8 ~ 4"));
    CHECK(parse("m11R2m4MR4m8  ~\t 4", ParseMode::Lenient) == parse("m11R2m4MR4m8 ~ 4"));
    // leading zeros in the remainder normalize
    CHECK(parse("m11R2m4MR4m8 ~ 004", ParseMode::Lenient) == parse("m11R2m4MR4m8 ~ 4"));
}

TEST_CASE("strict parse rejects what only lenient allows") {
    auto r = rejection("m11r2m4mr4m8 ~ 4");
    CHECK(r.code == Errc::UnknownCharacter);
    CHECK(r.offset == 3);

    r = rejection("m11R2m4MR4m8 ~ 04");
    CHECK(r.code == Errc::UnknownCharacter);
    CHECK(r.offset == 16);

    r = rejection("m11R2m4MR4m8~4");
    CHECK(r.code == Errc::MissingRemainderSeparator);
    CHECK(r.offset == 12);
}

TEST_CASE("parse reports offsets for malformed tokens and separators") {
    auto r = rejection("mR2M ~ 4");
    CHECK(r.code == Errc::MissingOperand);
    CHECK(r.offset == 1);

    r = rejection("m11R ~ 4");
    CHECK(r.code == Errc::MissingOperand);
    CHECK(r.offset == 4);
    CHECK(rejection("m11R ~ 4", ParseMode::Lenient).code == Errc::MissingOperand);

    r = rejection("m11R2m4MR4m8");
    CHECK(r.code == Errc::MissingRemainderSeparator);
    CHECK(r.offset == 12);

    r = rejection("m11R2m4MR4m8 ~");
    CHECK(r.code == Errc::MissingRemainderSeparator);
    CHECK(r.offset == 12);

    r = rejection("m11R2m4MR4m8 ~ ");
    CHECK(r.code == Errc::MissingOperand);
    CHECK(r.offset == 15);

    r = rejection("m11R2m4MR4m8 ~ 4x");
    CHECK(r.code == Errc::UnknownCharacter);
    CHECK(r.offset == 16);

    r = rejection("");
    CHECK(r.code == Errc::MissingRemainderSeparator);
    CHECK(r.offset == 0);

    r = rejection("m11x ~ 4");
    CHECK(r.code == Errc::UnknownCharacter);
    CHECK(r.offset == 3);

    // lenient tolerates whitespace only around '~', not between tokens
    r = rejection("m11 R2m4MR4m8 ~ 4", ParseMode::Lenient);
    CHECK(r.code == Errc::MissingRemainderSeparator);
    CHECK(r.offset == 4);
}

TEST_CASE("parse enforces the complete-trace structure") {
    auto r = rejection("m11R2m4 ~ 1");  // Multiply never used
    CHECK(r.code == Errc::StructureViolation);
    CHECK(r.offset == 7);

    CHECK(rejection("R2m4MR4m8 ~ 4").code == Errc::StructureViolation);   // no leading Mutate
    CHECK(rejection("m11R2m4MR4 ~ 4").code == Errc::StructureViolation);  // bad tail
    CHECK(rejection(" ~ 4").code == Errc::StructureViolation);            // empty trace
    // Augment must sit between a Mutate and a Replicate
    CHECK(rejection("m11AMR1m2MR1m2 ~ 1").code == Errc::StructureViolation);    // A then M
    CHECK(rejection("m11R2AR01m20MR1m2 ~ 1").code == Errc::StructureViolation);  // R then A
    CHECK(rejection("m11ARm2MR1m2 ~ 1").code == Errc::MissingOperand);
}

TEST_CASE("binary records are a big-endian length plus the text form") {
    const CipherText c = encrypt(BigInt(57), k5);
    const auto bytes = serialize_binary(c);
    REQUIRE(bytes.size() == 18);
    CHECK(bytes[0] == 0x00);
    CHECK(bytes[1] == 0x10);  // 16 text bytes
    CHECK(std::string(bytes.begin() + 2, bytes.end()) == "m11R2m4MR4m8 ~ 4");
    CHECK(parse_binary(bytes) == c);

    const CipherText c2 = encrypt(BigInt(55), k5);
    CHECK(parse_binary(serialize_binary(c2)) == c2);
}

TEST_CASE("binary parse rejects truncation and trailing bytes") {
    const auto code_at = [](const std::vector<std::uint8_t>& bytes) {
        try {
            parse_binary(bytes);
        } catch (const ParseError& e) {
            return std::pair{e.code(), e.offset()};
        }
        FAIL("expected a ParseError");
        return std::pair{Errc::KeyTooSmall, std::size_t{0}};
    };

    CHECK(code_at({}).first == Errc::TruncatedRecord);
    CHECK(code_at({0x00}).first == Errc::TruncatedRecord);
    CHECK(code_at({0x00, 0x05, 'm', '1'}) == std::pair{Errc::TruncatedRecord, std::size_t{4}});

    auto bytes = serialize_binary(encrypt(BigInt(57), k5));
    bytes.push_back('!');
    CHECK(code_at(bytes) == std::pair{Errc::UnknownCharacter, std::size_t{18}});

    // inner parse errors carry stream offsets
    const std::vector<std::uint8_t> junk{0x00, 0x03, 'x', ' ', '4'};
    CHECK(code_at(junk) == std::pair{Errc::UnknownCharacter, std::size_t{2}});
}

TEST_CASE("oversized text forms cannot be framed") {
    // ~70000 quotient digits make the text form exceed the 16-bit length
    const BigInt huge = pow(BigInt(10), 70000) + 3;
    const CipherText c = encrypt(huge, k5);
    CHECK(serialize(c).size() > 0xFFFF);
    try {
        serialize_binary(c);
        FAIL("expected LengthOverflow");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::LengthOverflow);
    }
    CHECK(decrypt(c, k5) == huge);
}

TEST_CASE("parse inverts serialize on generated ciphertexts") {
    std::mt19937_64 rng(2024);
    const std::regex grammar(R"(^(m[0-9]+|R[0-9]+|M|A)+ ~ (0|[1-9][0-9]*)$)");
    for (int i = 0; i < 1000; ++i) {
        const CipherText c = sample_cipher(rng);
        const std::string text = serialize(c);
        CHECK(std::regex_match(text, grammar));
        CHECK(std::count(text.begin(), text.end(), '~') == 1);
        CHECK(parse(text) == c);
        CHECK(parse(text, ParseMode::Lenient) == c);  // lenient accepts strict
    }
}

TEST_CASE("random byte strings are rejected, never crash") {
    std::mt19937_64 rng(31337);
    for (int i = 0; i < 2000; ++i) {
        std::string text;
        const std::size_t len = rng() % 64;
        for (std::size_t j = 0; j < len; ++j) text += char(rng() & 0xFF);
        for (const ParseMode mode : {ParseMode::Strict, ParseMode::Lenient}) {
            try {
                parse(text, mode);
                FAIL("random bytes parsed as a ciphertext: " << text);
            } catch (const ParseError&) {
                // expected
            }
        }
    }
    for (int i = 0; i < 2000; ++i) {
        std::vector<std::uint8_t> bytes(rng() % 64);
        for (auto& b : bytes) b = std::uint8_t(rng() & 0xFF);
        try {
            parse_binary(bytes);
            FAIL("random bytes parsed as a record");
        } catch (const ParseError&) {
            // expected
        }
    }
}
