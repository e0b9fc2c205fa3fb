#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "ramm/errors.hpp"

namespace ramm {

using BigInt = boost::multiprecision::cpp_int;

inline bool is_digit_char(char c) noexcept { return c >= '0' && c <= '9'; }

inline bool is_digit_run(std::string_view s) noexcept {
    return !s.empty() && std::all_of(s.begin(), s.end(), is_digit_char);
}

// Base-10 value of a digit run. Leading zeros are skipped before handing the
// text to cpp_int, whose string constructor would otherwise read "0101" as
// octal.
inline BigInt digits_to_value(std::string_view digits) {
    const std::size_t first = digits.find_first_not_of('0');
    if (first == std::string_view::npos) return BigInt(0);
    return BigInt(std::string(digits.substr(first)));
}

// Decimal digit sequence where leading zeros are significant: "01" and "1"
// are distinct strings even though both have numeric value 1. Equality is
// string equality; use value() for numeric comparison.
class DigitString {
public:
    DigitString() : digits_("0") {}

    explicit DigitString(std::string digits) : digits_(std::move(digits)) {
        if (!is_digit_run(digits_))
            throw Error(Errc::InvalidDigitString, "expected [0-9]+, got \"" + digits_ + "\"");
    }

    // Canonical form of a non-negative value: no leading zeros, "0" for zero.
    static DigitString canonical(const BigInt& value) {
        if (value < 0) throw Error(Errc::InvalidDigitString, "negative value");
        return DigitString(value.str());
    }

    const std::string& digits() const noexcept { return digits_; }
    std::size_t size() const noexcept { return digits_.size(); }
    BigInt value() const { return digits_to_value(digits_); }
    bool is_canonical() const noexcept { return digits_.size() == 1 || digits_.front() != '0'; }

    bool operator==(const DigitString&) const = default;

private:
    std::string digits_;
};

}  // namespace ramm
