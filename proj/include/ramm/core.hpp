#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>

#include "ramm/digits.hpp"
#include "ramm/errors.hpp"
#include "ramm/trace.hpp"

namespace ramm {

// Guard against runs with no terminating condition in sight.
inline constexpr std::size_t kMaxOpsDefault = 10000;

// Encryption key. Keys below 2 are rejected: key 0 divides by zero and key 1
// pins every mutate remainder at zero, so a run can never reach Multiply.
class KeyValue {
public:
    explicit KeyValue(BigInt value) : value_(std::move(value)) {
        if (value_ < 2) throw Error(Errc::KeyTooSmall, "key must be an integer >= 2");
    }

    const BigInt& value() const noexcept { return value_; }
    bool operator==(const KeyValue&) const = default;

private:
    BigInt value_;
};

enum class OpKind { Mutate, Replicate, Multiply, Augment };

// Which growth operation fires next while the operand stays at or below the
// key. The first growth slot of a run is Replicate, the second is Multiply,
// and every later one is Replicate again: Multiply fires exactly once per
// run. Were Multiply allowed to recur, runs like data 13 under key 12 would
// loop forever on Replicate(1)->11, Multiply->121, Mutate->1 without ever
// reaching a Replicate-then-Mutate tail. The cursor is consumed only when a
// growth operation is selected; an Augment resets it so that the forced
// Replicate comes first.
enum class GrowthCursor { NextReplicate, NextMultiply };

// Working state of one encryption run.
struct EncryptState {
    DigitString current;  // the operand A
    Trace history;
    GrowthCursor cursor = GrowthCursor::NextReplicate;
    bool used_mutate = false;
    bool used_replicate = false;
    bool used_multiply = false;
    std::size_t step_count = 0;
};

// Mutate, A - n*B = r: quotient n = floor(value/key), remainder r < key.
// Only legal while the operand strictly exceeds the key.
inline std::pair<BigInt, DigitString> mutate_step(const BigInt& value, const KeyValue& key) {
    if (value <= key.value())
        throw Error(Errc::InvalidMutate, "mutate requires value > key");
    BigInt quotient, remainder;
    divide_qr(value, key.value(), quotient, remainder);
    return {std::move(quotient), DigitString::canonical(remainder)};
}

// Replicate, AA: doubles the digit string itself, not the number.
// "01" becomes "0101" (numeric value 101, not 2).
inline DigitString replicate_step(const DigitString& s) {
    if (s.digits() == "0")
        throw Error(Errc::InvalidReplicate, "a zero remainder is augmented, never replicated");
    return DigitString(s.digits() + s.digits());
}

// Multiply, A*A: squares the numeric value; the result is canonical.
inline DigitString multiply_step(const DigitString& s) {
    const BigInt v = s.value();
    if (v == 0) throw Error(Errc::InvalidMultiply, "multiply requires a nonzero value");
    return DigitString::canonical(v * v);
}

// Augment: rewrites a zero remainder as the literal digit string "01".
inline DigitString augment_step(const DigitString& s) {
    if (s.digits() != "0")
        throw Error(Errc::InvalidAugment, "augment requires the remainder \"0\"");
    return DigitString("01");
}

// True once every default operation has fired at least once and the last two
// operations were Replicate then Mutate.
inline bool check_termination(std::span<const OpToken> history) {
    bool saw_mutate = false, saw_replicate = false, saw_multiply = false;
    for (const OpToken& t : history) {
        saw_mutate = saw_mutate || is_mutate(t);
        saw_replicate = saw_replicate || is_replicate(t);
        saw_multiply = saw_multiply || is_multiply(t);
    }
    return saw_mutate && saw_replicate && saw_multiply && history.size() >= 2 &&
           is_replicate(history[history.size() - 2]) && is_mutate(history.back());
}

// Picks the next operation for a run that has not terminated: Augment on a
// zero remainder, Mutate while the operand exceeds the key, otherwise the
// growth operation under the cursor (consuming it). A Replicate slot is
// followed by the Multiply slot only while Multiply has not fired yet.
inline OpKind select_next_op(EncryptState& state, const KeyValue& key) {
    if (state.current.digits() == "0") return OpKind::Augment;
    if (state.current.value() > key.value()) return OpKind::Mutate;
    if (state.cursor == GrowthCursor::NextMultiply) {
        state.cursor = GrowthCursor::NextReplicate;
        return OpKind::Multiply;
    }
    state.cursor =
        state.used_multiply ? GrowthCursor::NextReplicate : GrowthCursor::NextMultiply;
    return OpKind::Replicate;
}

inline CipherText encrypt(const BigInt& data, const KeyValue& key,
                          std::size_t max_ops = kMaxOpsDefault) {
    if (data <= key.value())
        throw Error(Errc::DataNotGreaterThanKey, "plaintext must strictly exceed the key");

    EncryptState st{DigitString::canonical(data)};
    // Same condition as check_termination, kept O(1) via the usage flags.
    const auto terminated = [&st] {
        return st.used_mutate && st.used_replicate && st.used_multiply &&
               st.history.size() >= 2 && is_replicate(st.history[st.history.size() - 2]) &&
               is_mutate(st.history.back());
    };

    while (!terminated()) {
        if (st.step_count >= max_ops)
            throw Error(Errc::NonTerminating,
                        "no terminating state after " + std::to_string(max_ops) + " operations");
        switch (select_next_op(st, key)) {
        case OpKind::Mutate: {
            auto [quotient, remainder] = mutate_step(st.current.value(), key);
            st.history.emplace_back(MutateOp{std::move(quotient)});
            st.current = std::move(remainder);
            st.used_mutate = true;
            break;
        }
        case OpKind::Replicate:
            st.history.emplace_back(ReplicateOp{st.current});
            st.current = replicate_step(st.current);
            st.used_replicate = true;
            break;
        case OpKind::Multiply:
            st.history.emplace_back(MultiplyOp{});
            st.current = multiply_step(st.current);
            st.used_multiply = true;
            break;
        case OpKind::Augment:
            st.history.emplace_back(AugmentOp{});
            st.current = augment_step(st.current);
            // Forced: the next operation must be Replicate ("01" can never
            // exceed the key), and the growth op after that is Multiply.
            st.cursor = GrowthCursor::NextReplicate;
            break;
        }
        ++st.step_count;
    }
    // The run always ends on a Mutate, so the remainder is canonical.
    return CipherText{std::move(st.history), std::move(st.current)};
}

// Inverse walk, newest token first. Each inverse revalidates what the forward
// operation guaranteed; a mismatch means a corrupt ciphertext or a wrong key.
inline BigInt decrypt(const CipherText& cipher, const KeyValue& key) {
    if (cipher.final_remainder.value() >= key.value())
        throw Error(Errc::RemainderNotReduced, "final remainder is not reduced below the key");

    DigitString s = cipher.final_remainder;
    for (auto it = cipher.trace.rbegin(); it != cipher.trace.rend(); ++it) {
        if (const auto* m = std::get_if<MutateOp>(&*it)) {
            s = DigitString::canonical(key.value() * m->quotient + s.value());
        } else if (const auto* r = std::get_if<ReplicateOp>(&*it)) {
            if (s.value() != digits_to_value(r->half.digits() + r->half.digits()))
                throw Error(Errc::ReplicateMismatch,
                            "value does not match the doubled recorded half \"" +
                                r->half.digits() + "\"");
            s = r->half;  // restores leading zeros
        } else if (is_multiply(*it)) {
            const BigInt v = s.value();
            const BigInt root = sqrt(v);
            if (root * root != v)
                throw Error(Errc::MultiplyMismatch, s.digits() + " is not a perfect square");
            s = DigitString::canonical(root);
        } else {
            if (s.digits() != "01")
                throw Error(Errc::AugmentMismatch,
                            "augment inverse expects \"01\", found \"" + s.digits() + "\"");
            s = DigitString("0");
        }
    }
    return s.value();
}

}  // namespace ramm
