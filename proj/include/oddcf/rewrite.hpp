#pragma once

#include <cstddef>
#include <vector>

#include "errors.hpp"
#include "mat2.hpp"
#include "words.hpp"

namespace oddcf {

/// Value-preserving rewrites on continued-fraction words.
///
/// Site convention: `i` indexes the first digit of the rewritten pattern in
/// word.digits; the preceding "A" slot is digits[i-1], or the head when
/// i == 0. Every rewrite is certified on the spot: the Moebius matrices of
/// the rewritten window (with the A slot as R^head when it is the head)
/// must agree up to a global sign, else the rewrite throws.

enum class ShiftRegime { ge_g, gt_one, lt_g };

namespace detail {

// window matrix over digits [lo, hi) with the A slot prepended
inline Mat2 window_matrix(const GeneralWord& w, std::size_t lo, std::size_t hi) {
    Mat2 m;
    if (lo == 0)
        m = mat_R_pow(w.head);
    else
        m = mat_B(w.digits[lo - 1].eps, w.digits[lo - 1].a);
    for (std::size_t k = lo; k < hi && k < w.digits.size(); ++k)
        m *= mat_B(w.digits[k].eps, w.digits[k].a);
    return m;
}

inline void bump_A(GeneralWord& w, std::size_t i, long long by) {
    if (i == 0)
        w.head += by;
    else
        w.digits[i - 1].a += BigInt(by);
}

inline void certify(const GeneralWord& before, const GeneralWord& after, std::size_t i,
                    std::size_t len_before, std::size_t len_after, const char* op) {
    Mat2 mb = window_matrix(before, i, i + len_before);
    Mat2 ma = window_matrix(after, i, i + len_after);
    if (!same_action(mb, ma))
        throw Error(std::string(op) + ": matrix certificate failed for " + before.to_text() +
                    " -> " + after.to_text());
}

inline const SignedDigit& need_digit(const GeneralWord& w, std::size_t k, const char* op) {
    if (k >= w.digits.size()) throw PatternMismatch(std::string(op) + ": index out of range");
    return w.digits[k];
}

}  // namespace detail

/// (A, +1/1, +1/B) -> (A+1, -1/(B+1)); shrinks the word by one.
inline GeneralWord singularize_plus(const GeneralWord& w, std::size_t i) {
    const auto& one = detail::need_digit(w, i, "singularize_plus");
    const auto& b = detail::need_digit(w, i + 1, "singularize_plus");
    if (one.eps != 1 || one.a != BigInt(1))
        throw PatternMismatch("singularize_plus: digit at i must be +1/1");
    if (b.eps != 1) throw PatternMismatch("singularize_plus: digit at i+1 must have eps = +1");
    GeneralWord out = w;
    detail::bump_A(out, i, 1);
    out.digits[i + 1] = SignedDigit(-1, b.a + BigInt(1));
    out.digits.erase(out.digits.begin() + static_cast<std::ptrdiff_t>(i));
    detail::certify(w, out, i, 2, 1, "singularize_plus");
    return out;
}

/// (A, -1/B) with B >= 3 -> (A+1, -1/1, -1/(B+1)); grows the word by one.
inline GeneralWord insert_minus(const GeneralWord& w, std::size_t i) {
    const auto& b = detail::need_digit(w, i, "insert_minus");
    if (b.eps != -1 || cmp(b.a, BigInt(3)) < 0)
        throw PatternMismatch("insert_minus: digit at i must be -1/B with B >= 3");
    GeneralWord out = w;
    detail::bump_A(out, i, 1);
    out.digits[i] = SignedDigit(-1, 1);
    out.digits.insert(out.digits.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                      SignedDigit(-1, b.a + BigInt(1)));
    detail::certify(w, out, i, 1, 2, "insert_minus");
    return out;
}

/// (A, +1/1, -1/B) with B >= 2 -> (A+1, +1/(B-1)); shrinks the word by one.
inline GeneralWord singularize_minus(const GeneralWord& w, std::size_t i) {
    const auto& one = detail::need_digit(w, i, "singularize_minus");
    const auto& b = detail::need_digit(w, i + 1, "singularize_minus");
    if (one.eps != 1 || one.a != BigInt(1))
        throw PatternMismatch("singularize_minus: digit at i must be +1/1");
    if (b.eps != -1 || cmp(b.a, BigInt(2)) < 0)
        throw PatternMismatch("singularize_minus: digit at i+1 must be -1/B with B >= 2");
    GeneralWord out = w;
    detail::bump_A(out, i, 1);
    out.digits[i + 1] = SignedDigit(1, b.a - BigInt(1));
    out.digits.erase(out.digits.begin() + static_cast<std::ptrdiff_t>(i));
    detail::certify(w, out, i, 2, 1, "singularize_minus");
    return out;
}

/// (A, +1/B) with B >= 3 -> (A+1, -1/1, +1/(B-1)); grows the word by one.
inline GeneralWord insert_plus(const GeneralWord& w, std::size_t i) {
    const auto& b = detail::need_digit(w, i, "insert_plus");
    if (b.eps != 1 || cmp(b.a, BigInt(3)) < 0)
        throw PatternMismatch("insert_plus: digit at i must be +1/B with B >= 3");
    GeneralWord out = w;
    detail::bump_A(out, i, 1);
    out.digits[i] = SignedDigit(-1, 1);
    out.digits.insert(out.digits.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                      SignedDigit(1, b.a - BigInt(1)));
    detail::certify(w, out, i, 1, 2, "insert_plus");
    return out;
}

/// Composite parameter-shift rewrites. Each carries the first orbit entry
/// into a deeper parameter window while keeping every digit odd:
///   ge_g:    (A, +1/1, +1/a)        -> (A+2, -1/1, -1/(a+2))
///   gt_one:  (A, +1/1, -1/a), a>=3  -> (A+2, -1/1, +1/(a-2))
///   lt_g:    (A, +1/3, -1/1, -1/a), a>=5 -> (A+2, -1/1, -1/3, +1/(a-2))
/// They are applied as net rewrites (the chained primitives would pass
/// through even digits and B=2 insertions) and certified by matrices.
inline CFWord shift_block(const CFWord& word, std::size_t i, ShiftRegime regime) {
    GeneralWord w(word);
    GeneralWord out = w;
    std::size_t len_before = 0, len_after = 0;
    switch (regime) {
        case ShiftRegime::ge_g: {
            const auto& one = detail::need_digit(w, i, "shift_block");
            const auto& a = detail::need_digit(w, i + 1, "shift_block");
            if (one.eps != 1 || one.a != BigInt(1) || a.eps != 1)
                throw PatternMismatch("shift_block(ge_g): expected (+1,1),(+1,a) at i");
            detail::bump_A(out, i, 2);
            out.digits[i] = SignedDigit(-1, 1);
            out.digits[i + 1] = SignedDigit(-1, a.a + BigInt(2));
            len_before = len_after = 2;
            break;
        }
        case ShiftRegime::gt_one: {
            const auto& one = detail::need_digit(w, i, "shift_block");
            const auto& a = detail::need_digit(w, i + 1, "shift_block");
            if (one.eps != 1 || one.a != BigInt(1) || a.eps != -1 || cmp(a.a, BigInt(3)) < 0)
                throw PatternMismatch("shift_block(gt_one): expected (+1,1),(-1,a>=3) at i");
            detail::bump_A(out, i, 2);
            out.digits[i] = SignedDigit(-1, 1);
            out.digits[i + 1] = SignedDigit(1, a.a - BigInt(2));
            len_before = len_after = 2;
            break;
        }
        case ShiftRegime::lt_g: {
            const auto& three = detail::need_digit(w, i, "shift_block");
            const auto& one = detail::need_digit(w, i + 1, "shift_block");
            const auto& a = detail::need_digit(w, i + 2, "shift_block");
            if (three.eps != 1 || three.a != BigInt(3) || one.eps != -1 || one.a != BigInt(1) ||
                a.eps != -1 || cmp(a.a, BigInt(5)) < 0)
                throw PatternMismatch("shift_block(lt_g): expected (+1,3),(-1,1),(-1,a>=5) at i");
            detail::bump_A(out, i, 2);
            out.digits[i] = SignedDigit(-1, 1);
            out.digits[i + 1] = SignedDigit(-1, 3);
            out.digits[i + 2] = SignedDigit(1, a.a - BigInt(2));
            len_before = len_after = 3;
            break;
        }
    }
    detail::certify(w, out, i, len_before, len_after, "shift_block");
    CFWord result;
    result.head = out.head;
    result.digits = std::move(out.digits);
    result.terminated = word.terminated;
    for (const auto& d : result.digits)
        if (!d.a.is_odd() || d.a.sign() <= 0)
            throw Error("shift_block: produced a non-odd digit");
    return result;
}

/// Moebius-matrix equality certificate (up to global sign) for two complete
/// words with aligned tails; the cheap, exact value-preservation check.
inline bool words_equal_as_maps(const GeneralWord& a, const GeneralWord& b) {
    Mat2 ma = mat_R_pow(a.head) * word_matrix(a);
    Mat2 mb = mat_R_pow(b.head) * word_matrix(b);
    return same_action(ma, mb);
}

}  // namespace oddcf
