#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ramm/digits.hpp"

namespace ramm {

struct MutateOp {
    BigInt quotient;
    bool operator==(const MutateOp&) const = default;
};

struct ReplicateOp {
    DigitString half;  // operand before doubling, leading zeros kept
    bool operator==(const ReplicateOp&) const = default;
};

struct MultiplyOp {
    bool operator==(const MultiplyOp&) const = default;
};

struct AugmentOp {
    bool operator==(const AugmentOp&) const = default;
};

using OpToken = std::variant<MutateOp, ReplicateOp, MultiplyOp, AugmentOp>;
using Trace = std::vector<OpToken>;

inline bool is_mutate(const OpToken& t) noexcept { return std::holds_alternative<MutateOp>(t); }
inline bool is_replicate(const OpToken& t) noexcept { return std::holds_alternative<ReplicateOp>(t); }
inline bool is_multiply(const OpToken& t) noexcept { return std::holds_alternative<MultiplyOp>(t); }
inline bool is_augment(const OpToken& t) noexcept { return std::holds_alternative<AugmentOp>(t); }

struct TraceFault {
    std::size_t token_index;  // == tokens.size() when the trace as a whole is at fault
    std::string reason;
};

// Structural rules for a complete trace: begins with Mutate, ends Replicate
// then Mutate, uses every default operation at least once, and each Augment
// sits between a Mutate and a Replicate. Partial traces built up during
// encryption are exempt. The first and last checks already force at least
// one Mutate and one Replicate, so only Multiply needs its own usage check.
inline std::optional<TraceFault> find_trace_fault(std::span<const OpToken> tokens) {
    if (tokens.empty()) return TraceFault{0, "empty trace"};
    if (!is_mutate(tokens.front())) return TraceFault{0, "trace must begin with Mutate"};
    if (tokens.size() < 2 || !is_replicate(tokens[tokens.size() - 2]) || !is_mutate(tokens.back()))
        return TraceFault{tokens.size() - 1, "trace must end with Replicate then Mutate"};
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (!is_augment(tokens[i])) continue;
        if (!is_mutate(tokens[i - 1]))  // i > 0, the front is a Mutate
            return TraceFault{i, "Augment must directly follow a Mutate"};
        if (i + 1 == tokens.size() || !is_replicate(tokens[i + 1]))
            return TraceFault{i, "Augment must be directly followed by a Replicate"};
    }
    if (std::none_of(tokens.begin(), tokens.end(), is_multiply))
        return TraceFault{tokens.size(), "Multiply never used"};
    return std::nullopt;
}

// A complete operation trace plus the final reduced remainder: the
// "fingerprint" of one (data, key) pair.
struct CipherText {
    Trace trace;
    DigitString final_remainder;
    bool operator==(const CipherText&) const = default;
};

}  // namespace ramm
