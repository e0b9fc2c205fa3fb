#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <stdexcept>

#include <ramm/analysis.hpp>

#include "test_util.hpp"

using namespace ramm;

namespace {
const KeyValue k5{BigInt(5)};
}

TEST_CASE("scan of a single value echoes its ciphertext") {
    const ScanReport r = scan(k5, BigInt(57), BigInt(57));
    CHECK(r.clean());
    CHECK(r.total == 1);
    CHECK(r.max_ops_observed == 6);
    REQUIRE(r.echoed_ciphers.size() == 1);
    CHECK(r.echoed_ciphers[0].first == 57);
    CHECK(r.echoed_ciphers[0].second == "m11R2m4MR4m8 ~ 4");
    CHECK(format_report(r) ==
          "key: 5\n"
          "range: [57, 57]\n"
          "total: 1\n"
          "round_trip_failures: 0\n"
          "collisions: 0\n"
          "nonterminating: 0\n"
          "max_ops_observed: 6\n"
          "cipher 57: m11R2m4MR4m8 ~ 4\n");
}

TEST_CASE("singleton range has no collisions") {
    const ScanReport r = scan(k5, BigInt(6), BigInt(6));
    CHECK(r.clean());
    CHECK(r.collisions.empty());
    CHECK(r.total == 1);
}

TEST_CASE("scan over [6,500] with key 5 is clean") {
    // regression fixture produced by this scan itself
    const ScanReport r = scan(k5, BigInt(6), BigInt(500));
    CHECK(r.clean());
    CHECK(r.total == 495);
    CHECK(r.max_ops_observed == 7);
    CHECK(r.echoed_ciphers.empty());  // large ranges do not echo
}

TEST_CASE("scan ranges must satisfy key < lo <= hi") {
    CHECK_THROWS_AS(scan(k5, BigInt(4), BigInt(10)), std::invalid_argument);
    CHECK_THROWS_AS(scan(k5, BigInt(5), BigInt(10)), std::invalid_argument);
    CHECK_THROWS_AS(scan(k5, BigInt(10), BigInt(9)), std::invalid_argument);
}

TEST_CASE("scan reports guard hits instead of throwing") {
    const ScanReport r = scan(k5, BigInt(6), BigInt(20), 3);
    CHECK_FALSE(r.clean());
    CHECK(r.nonterminating.size() == 15);
    CHECK(r.total == 15);
    CHECK(r.max_ops_observed == 0);
    CHECK(r.round_trip_failures.empty());
}

TEST_CASE("trace_stats matches the worked examples") {
    const TraceStats one = trace_stats(k5, BigInt(57), BigInt(57));
    CHECK(one.total == 1);
    CHECK(one.trace_len_min == 6);
    CHECK(one.trace_len_max == 6);
    CHECK(one.augment_tokens == 0);
    CHECK(one.gap_patterns == std::map<std::string, std::uint64_t>{{"MR", 1}, {"R", 1}});

    const TraceStats special = trace_stats(k5, BigInt(55), BigInt(55));
    CHECK(special.trace_len_min == 7);
    CHECK(special.trace_len_max == 7);
    CHECK(special.augment_tokens == 1);
    CHECK(special.traces_with_augment == 1);
    CHECK(special.gap_patterns == std::map<std::string, std::uint64_t>{{"AR", 1}, {"MR", 1}});
    CHECK(format_stats(special) ==
          "key: 5\n"
          "range: [55, 55]\n"
          "total: 1\n"
          "nonterminating: 0\n"
          "trace_len_min: 7\n"
          "trace_len_mean: 7.000\n"
          "trace_len_max: 7\n"
          "augment_tokens: 1\n"
          "traces_with_augment: 1\n"
          "gap AR: 1\n"
          "gap MR: 1\n");
}

TEST_CASE("gap patterns split between mutates") {
    CHECK(gap_patterns_of(encrypt(BigInt(57), k5).trace) ==
          std::vector<std::string>{"R", "MR"});
    CHECK(gap_patterns_of(encrypt(BigInt(55), k5).trace) ==
          std::vector<std::string>{"AR", "MR"});
}

TEST_CASE("stats fixture for key 5 over [6,500]") {
    const TraceStats s = trace_stats(k5, BigInt(6), BigInt(500));
    CHECK(s.total == 495);
    CHECK(s.nonterminating == 0);
    CHECK(s.trace_len_min == 6);
    CHECK(s.trace_len_max == 7);
    CHECK(s.trace_len_mean == Catch::Approx(6.6));
    CHECK(s.augment_tokens == 99);
    CHECK(s.traces_with_augment == 99);
}

TEST_CASE("augment count equals the zero-remainder count across a range") {
    const TraceStats s = trace_stats(k5, BigInt(6), BigInt(1000));
    std::uint64_t zero_remainders = 0;
    for (int d = 6; d <= 1000; ++d) {
        const CipherText c = encrypt(BigInt(d), k5);
        const auto steps = testutil::replay(BigInt(d), k5, c);
        for (std::size_t i = 0; i + 1 < c.trace.size(); ++i)
            if (is_mutate(c.trace[i]) && steps[i].digits() == "0") ++zero_remainders;
    }
    CHECK(s.augment_tokens == zero_remainders);
}

TEST_CASE("survey keys stay clean up to 5000 with a low ops ceiling") {
    std::size_t ceiling = 0;
    for (const int k : {2, 3, 5, 10, 97}) {
        const KeyValue key{BigInt(k)};
        const ScanReport r = scan(key, BigInt(k + 1), BigInt(5000));
        CHECK(r.clean());
        CHECK(r.total == std::uint64_t(5000 - k));
        ceiling = std::max(ceiling, r.max_ops_observed);
    }
    CHECK(ceiling == 8);  // regression fixture; far below the 10000 guard
}
