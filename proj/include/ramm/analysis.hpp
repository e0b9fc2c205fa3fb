#pragma once

#include <cstdint>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ramm/codec.hpp"
#include "ramm/core.hpp"

namespace ramm {

// Ranges up to this many values also echo every ciphertext in the report.
inline constexpr std::uint64_t kScanEchoLimit = 32;

struct ScanReport {
    BigInt key;
    BigInt lo;
    BigInt hi;
    std::uint64_t total = 0;
    std::vector<BigInt> round_trip_failures;
    std::vector<std::pair<BigInt, BigInt>> collisions;  // same serialized ciphertext
    std::vector<BigInt> nonterminating;                 // hit the operation guard
    std::size_t max_ops_observed = 0;
    std::vector<std::pair<BigInt, std::string>> echoed_ciphers;

    bool clean() const noexcept {
        return round_trip_failures.empty() && collisions.empty() && nonterminating.empty();
    }
};

inline void require_scan_range(const KeyValue& key, const BigInt& lo, const BigInt& hi) {
    if (!(key.value() < lo && lo <= hi))
        throw std::invalid_argument("scan range requires 2 <= key < lo <= hi");
}

// Brute-force check of one key over an inclusive data range: every value is
// encrypted, decrypted, compared, and its serialized fingerprint recorded in
// a set to surface collisions. Failures are reported, never thrown.
inline ScanReport scan(const KeyValue& key, const BigInt& lo, const BigInt& hi,
                       std::size_t max_ops = kMaxOpsDefault) {
    require_scan_range(key, lo, hi);
    ScanReport report{key.value(), lo, hi};
    const bool echo = hi - lo < kScanEchoLimit;
    std::unordered_map<std::string, BigInt> seen;
    for (BigInt d = lo; d <= hi; ++d) {
        ++report.total;
        CipherText cipher;
        try {
            cipher = encrypt(d, key, max_ops);
        } catch (const Error& e) {
            if (e.code() == Errc::NonTerminating) {
                report.nonterminating.push_back(d);
                continue;
            }
            throw;
        }
        report.max_ops_observed = std::max(report.max_ops_observed, cipher.trace.size());
        std::string text = serialize(cipher);
        if (echo) report.echoed_ciphers.emplace_back(d, text);
        if (const auto [it, inserted] = seen.try_emplace(std::move(text), d); !inserted)
            report.collisions.emplace_back(it->second, d);
        try {
            if (decrypt(cipher, key) != d) report.round_trip_failures.push_back(d);
        } catch (const Error&) {
            report.round_trip_failures.push_back(d);
        }
    }
    return report;
}

struct TraceStats {
    BigInt key;
    BigInt lo;
    BigInt hi;
    std::uint64_t total = 0;
    std::uint64_t nonterminating = 0;
    std::size_t trace_len_min = 0;
    std::size_t trace_len_max = 0;
    double trace_len_mean = 0.0;
    std::uint64_t augment_tokens = 0;
    std::uint64_t traces_with_augment = 0;
    // Op letters between consecutive Mutates, e.g. "R", "MR", "AR".
    std::map<std::string, std::uint64_t> gap_patterns;
};

inline std::vector<std::string> gap_patterns_of(const Trace& trace) {
    std::vector<std::string> gaps;
    std::string current;
    for (const OpToken& t : trace) {
        if (is_mutate(t)) {
            if (!current.empty()) gaps.push_back(std::exchange(current, {}));
        } else {
            current += is_replicate(t) ? 'R' : is_multiply(t) ? 'M' : 'A';
        }
    }
    if (!current.empty()) gaps.push_back(std::move(current));
    return gaps;
}

inline TraceStats trace_stats(const KeyValue& key, const BigInt& lo, const BigInt& hi,
                              std::size_t max_ops = kMaxOpsDefault) {
    require_scan_range(key, lo, hi);
    TraceStats stats{key.value(), lo, hi};
    std::uint64_t length_sum = 0;
    for (BigInt d = lo; d <= hi; ++d) {
        ++stats.total;
        CipherText cipher;
        try {
            cipher = encrypt(d, key, max_ops);
        } catch (const Error& e) {
            if (e.code() == Errc::NonTerminating) {
                ++stats.nonterminating;
                continue;
            }
            throw;
        }
        const std::size_t len = cipher.trace.size();
        length_sum += len;
        const std::uint64_t counted = stats.total - stats.nonterminating;
        if (counted == 1 || len < stats.trace_len_min) stats.trace_len_min = len;
        if (counted == 1 || len > stats.trace_len_max) stats.trace_len_max = len;
        std::uint64_t augments = 0;
        for (const OpToken& t : cipher.trace)
            if (is_augment(t)) ++augments;
        stats.augment_tokens += augments;
        if (augments > 0) ++stats.traces_with_augment;
        for (auto& gap : gap_patterns_of(cipher.trace)) ++stats.gap_patterns[gap];
    }
    const std::uint64_t counted = stats.total - stats.nonterminating;
    stats.trace_len_mean = counted ? double(length_sum) / double(counted) : 0.0;
    return stats;
}

inline std::string format_report(const ScanReport& r) {
    std::ostringstream out;
    out << "key: " << r.key << "\n";
    out << "range: [" << r.lo << ", " << r.hi << "]\n";
    out << "total: " << r.total << "\n";
    out << "round_trip_failures: " << r.round_trip_failures.size() << "\n";
    for (const BigInt& d : r.round_trip_failures) out << "  failure: " << d << "\n";
    out << "collisions: " << r.collisions.size() << "\n";
    for (const auto& [a, b] : r.collisions) out << "  collision: " << a << " " << b << "\n";
    out << "nonterminating: " << r.nonterminating.size() << "\n";
    for (const BigInt& d : r.nonterminating) out << "  nonterminating: " << d << "\n";
    out << "max_ops_observed: " << r.max_ops_observed << "\n";
    for (const auto& [d, text] : r.echoed_ciphers) out << "cipher " << d << ": " << text << "\n";
    return out.str();
}

inline std::string format_stats(const TraceStats& s) {
    std::ostringstream out;
    out << "key: " << s.key << "\n";
    out << "range: [" << s.lo << ", " << s.hi << "]\n";
    out << "total: " << s.total << "\n";
    out << "nonterminating: " << s.nonterminating << "\n";
    out << "trace_len_min: " << s.trace_len_min << "\n";
    out << "trace_len_mean: " << std::fixed << std::setprecision(3) << s.trace_len_mean << "\n";
    out << "trace_len_max: " << s.trace_len_max << "\n";
    out << "augment_tokens: " << s.augment_tokens << "\n";
    out << "traces_with_augment: " << s.traces_with_augment << "\n";
    for (const auto& [pattern, count] : s.gap_patterns)
        out << "gap " << pattern << ": " << count << "\n";
    return out.str();
}

}  // namespace ramm
