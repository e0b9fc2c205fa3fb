// Command-line front end: integer and image encrypt/decrypt, ciphertext
// normalization, and brute-force analysis scans. Payload goes to stdout,
// diagnostics to stderr.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <ramm/ramm.hpp>

namespace {

constexpr int kExitFindings = 1;   // scan completed and found problems
constexpr int kExitUsage = 2;      // bad invocation
constexpr int kExitParse = 3;      // input did not parse
constexpr int kExitAlgorithm = 4;  // operation rejected the input
constexpr int kExitIo = 5;         // file system trouble

struct UsageFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int exit_code_for(ramm::Errc code) {
    switch (code) {
    case ramm::Errc::UnknownCharacter:
    case ramm::Errc::MissingOperand:
    case ramm::Errc::MissingRemainderSeparator:
    case ramm::Errc::StructureViolation:
    case ramm::Errc::TruncatedRecord:
    case ramm::Errc::UnsupportedFormat:
    case ramm::Errc::HeaderSyntax:
    case ramm::Errc::TruncatedPixels:
    case ramm::Errc::BadMagic:
    case ramm::Errc::BadVersion:
    case ramm::Errc::BadFlags:
    case ramm::Errc::BadChannels:
    case ramm::Errc::InvalidDigitString:
        return kExitParse;
    default:
        return kExitAlgorithm;
    }
}

ramm::BigInt require_integer(const std::string& text, const std::string& name) {
    if (!ramm::is_digit_run(text))
        throw UsageFailure(name + " must be a non-negative decimal integer, got \"" + text + "\"");
    return ramm::digits_to_value(text);
}

ramm::KeyValue require_key(const std::string& text) {
    return ramm::KeyValue(require_integer(text, "--key"));
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) throw IoFailure("failed reading " + path);
    return bytes;
}

void write_output(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    if (path.empty()) {
        std::cout.write(reinterpret_cast<const char*>(bytes.data()),
                        static_cast<std::streamsize>(bytes.size()));
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoFailure("failed writing " + path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RAmM reversible integer encoding: trace ciphertexts, image containers, scans"};
    app.require_subcommand(1);

    std::string data_text, cipher_text, key_text, parse_text;
    std::string input_path, output_path;
    std::string from_text, to_text;
    bool lenient = false;
    bool checksum = false;
    std::uint64_t max_ops = ramm::kMaxOpsDefault;

    auto* enc_int = app.add_subcommand("encrypt-int", "Encrypt an integer to its trace ciphertext");
    enc_int->add_option("data", data_text, "plaintext integer, must exceed the key")->required();
    enc_int->add_option("--key", key_text, "integer key >= 2")->required();
    enc_int->add_option("--max-ops", max_ops, "operation guard per encryption");

    auto* dec_int = app.add_subcommand("decrypt-int", "Decrypt a trace ciphertext to its integer");
    dec_int->add_option("cipher", cipher_text, "ciphertext text, e.g. \"m11R2m4MR4m8 ~ 4\"")
        ->required();
    dec_int->add_option("--key", key_text, "integer key >= 2")->required();
    dec_int->add_flag("--lenient", lenient, "accept lowercase tokens and loose separators");

    auto* parse_cmd = app.add_subcommand("parse", "Validate a ciphertext and echo its canonical form");
    parse_cmd->add_option("cipher", parse_text, "ciphertext text")->required();
    parse_cmd->add_flag("--lenient", lenient, "accept lowercase tokens and loose separators");

    auto* enc_img = app.add_subcommand("encrypt-image", "Encrypt a PGM/PPM image to a container");
    enc_img->add_option("input", input_path, "binary P5/P6 file, maxval 255")->required();
    enc_img->add_option("--key", key_text, "integer key >= 2")->required();
    enc_img->add_flag("--checksum", checksum, "store a crc32 of the raw samples");
    enc_img->add_option("--max-ops", max_ops, "operation guard per encryption");
    enc_img->add_option("--output", output_path, "container path (default: stdout)");

    auto* dec_img = app.add_subcommand("decrypt-image", "Decrypt a container back to a PNM image");
    dec_img->add_option("input", input_path, "container file")->required();
    dec_img->add_option("--key", key_text, "integer key >= 2")->required();
    dec_img->add_option("--output", output_path, "PNM path (default: stdout)");

    auto* scan_cmd = app.add_subcommand("scan", "Round-trip and collision scan over a data range");
    scan_cmd->add_option("--key", key_text, "integer key >= 2")->required();
    scan_cmd->add_option("--from", from_text, "first data value, must exceed the key")->required();
    scan_cmd->add_option("--to", to_text, "last data value")->required();
    scan_cmd->add_option("--max-ops", max_ops, "operation guard per encryption");

    auto* stats_cmd = app.add_subcommand("stats", "Trace length and gap-pattern statistics");
    stats_cmd->add_option("--key", key_text, "integer key >= 2")->required();
    stats_cmd->add_option("--from", from_text, "first data value, must exceed the key")->required();
    stats_cmd->add_option("--to", to_text, "last data value")->required();
    stats_cmd->add_option("--max-ops", max_ops, "operation guard per encryption");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (enc_int->parsed()) {
            const ramm::KeyValue key = require_key(key_text);
            const ramm::BigInt data = require_integer(data_text, "data");
            std::cout << ramm::serialize(ramm::encrypt(data, key, max_ops)) << "\n";
            return 0;
        }
        if (dec_int->parsed()) {
            const ramm::KeyValue key = require_key(key_text);
            const auto mode = lenient ? ramm::ParseMode::Lenient : ramm::ParseMode::Strict;
            std::cout << ramm::decrypt(ramm::parse(cipher_text, mode), key) << "\n";
            return 0;
        }
        if (parse_cmd->parsed()) {
            const auto mode = lenient ? ramm::ParseMode::Lenient : ramm::ParseMode::Strict;
            std::cout << ramm::serialize(ramm::parse(parse_text, mode)) << "\n";
            return 0;
        }
        if (enc_img->parsed()) {
            const ramm::KeyValue key = require_key(key_text);
            const ramm::RawImage img = ramm::read_pnm(read_file(input_path));
            const ramm::ImageEncryptOptions opts{checksum, max_ops};
            write_output(output_path, ramm::container_to_bytes(ramm::encrypt_image(img, key, opts)));
            return 0;
        }
        if (dec_img->parsed()) {
            const ramm::KeyValue key = require_key(key_text);
            const ramm::ImageContainer container = ramm::container_from_bytes(read_file(input_path));
            write_output(output_path, ramm::write_pnm(ramm::decrypt_image(container, key)));
            return 0;
        }
        // scan and stats share the range handling
        const ramm::KeyValue key = require_key(key_text);
        const ramm::BigInt lo = require_integer(from_text, "--from");
        const ramm::BigInt hi = require_integer(to_text, "--to");
        if (!(key.value() < lo && lo <= hi))
            throw UsageFailure("range must satisfy key < --from <= --to");
        if (scan_cmd->parsed()) {
            const ramm::ScanReport report = ramm::scan(key, lo, hi, max_ops);
            std::cout << ramm::format_report(report);
            return report.clean() ? 0 : kExitFindings;
        }
        std::cout << ramm::format_stats(ramm::trace_stats(key, lo, hi, max_ops));
        return 0;
    } catch (const UsageFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ramm::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ramm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
}
