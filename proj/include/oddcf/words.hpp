#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bigint.hpp"
#include "errors.hpp"
#include "mat2.hpp"
#include "scalar.hpp"

namespace oddcf {

/// One continued-fraction term eps/a with eps = +-1 and a >= 1.
/// Odd words (CFWord) additionally require a odd; GeneralWord does not.
struct SignedDigit {
    int eps = 1;
    BigInt a = BigInt(1);

    SignedDigit() = default;
    SignedDigit(int e, BigInt v) : eps(e), a(std::move(v)) {}
    SignedDigit(int e, long long v) : eps(e), a(v) {}

    friend bool operator==(const SignedDigit& x, const SignedDigit& y) {
        return x.eps == y.eps && x.a == y.a;
    }
    friend bool operator!=(const SignedDigit& x, const SignedDigit& y) { return !(x == y); }
};

namespace detail {

inline std::string word_text(long long head, const std::vector<SignedDigit>& digits) {
    std::string out = "[" + std::to_string(head) + ";";
    for (std::size_t i = 0; i < digits.size(); ++i) {
        out += i == 0 ? " " : ",";
        out += digits[i].eps < 0 ? "-" : "+";
        out += digits[i].a.to_string();
    }
    out += "]";
    return out;
}

inline void parse_word_text(std::string_view in, long long& head, std::vector<SignedDigit>& digits) {
    std::string s;
    for (char c : in)
        if (c != ' ') s.push_back(c);
    if (s.size() < 4 || s.front() != '[' || s.back() != ']')
        throw ParseError("word: expected [h; +a,-b,...]");
    auto semi = s.find(';');
    if (semi == std::string::npos) throw ParseError("word: missing ';'");
    head = std::stoll(s.substr(1, semi - 1));
    digits.clear();
    std::size_t i = semi + 1, end = s.size() - 1;
    while (i < end) {
        int eps = 1;
        if (s[i] == '+') {
            ++i;
        } else if (s[i] == '-') {
            eps = -1;
            ++i;
        } else {
            throw ParseError("word: every digit needs a sign prefix");
        }
        std::size_t j = i;
        while (j < end && s[j] != ',') ++j;
        digits.emplace_back(eps, BigInt::from_string(s.substr(i, j - i)));
        i = j + (j < end ? 1 : 0);
    }
}

/// Product of digit matrices B_{eps1,a1} ... B_{epsn,an}. Applied to a tail t
/// it evaluates eps1/(a1 + eps2/(a2 + ... + epsn/(an + t))).
inline Mat2 digits_matrix(const std::vector<SignedDigit>& digits, std::size_t count) {
    Mat2 m;
    for (std::size_t i = 0; i < count && i < digits.size(); ++i)
        m *= mat_B(digits[i].eps, digits[i].a);
    return m;
}

}  // namespace detail

/// Finite odd continued-fraction word: value = head + eps1/(a1 + eps2/(a2 + ...)).
/// `terminated` marks words produced by an orbit that reached 0, in which case
/// evaluating with tail 0 reproduces the seed exactly.
struct CFWord {
    long long head = 0;
    std::vector<SignedDigit> digits;
    bool terminated = false;

    std::size_t size() const { return digits.size(); }

    std::string to_text() const { return detail::word_text(head, digits); }
    static CFWord from_text(std::string_view s) {
        CFWord w;
        detail::parse_word_text(s, w.head, w.digits);
        for (const auto& d : w.digits)
            if (!d.a.is_odd() || d.a.sign() <= 0)
                throw ParseError("CFWord: digits must be odd positive");
        return w;
    }

    friend bool operator==(const CFWord& x, const CFWord& y) {
        return x.head == y.head && x.digits == y.digits && x.terminated == y.terminated;
    }
};

/// Parity-unconstrained word (a >= 1): the intermediate states of
/// singularization/insertion chains live here.
struct GeneralWord {
    long long head = 0;
    std::vector<SignedDigit> digits;

    GeneralWord() = default;
    GeneralWord(long long h, std::vector<SignedDigit> d) : head(h), digits(std::move(d)) {}
    explicit GeneralWord(const CFWord& w) : head(w.head), digits(w.digits) {}

    std::size_t size() const { return digits.size(); }
    std::string to_text() const { return detail::word_text(head, digits); }

    friend bool operator==(const GeneralWord& x, const GeneralWord& y) {
        return x.head == y.head && x.digits == y.digits;
    }
};

/// Moebius matrix of the digit part (head excluded).
inline Mat2 word_matrix(const CFWord& w, std::size_t depth) {
    return detail::digits_matrix(w.digits, depth);
}
inline Mat2 word_matrix(const CFWord& w) { return word_matrix(w, w.digits.size()); }
inline Mat2 word_matrix(const GeneralWord& w) { return detail::digits_matrix(w.digits, w.digits.size()); }

namespace detail {

template <typename Word>
Scalar evaluate_word(const Word& w, const Scalar& tail) {
    Scalar v = tail;
    for (std::size_t i = w.digits.size(); i-- > 0;) {
        Scalar den = add(Scalar(Rational(w.digits[i].a)), v);
        if (den.is_zero()) throw PoleError("evaluate: intermediate pole");
        v = div(Scalar::from_int(w.digits[i].eps), den);
    }
    return add(Scalar::from_int(w.head), v);
}

}  // namespace detail

/// Evaluate head + digit fraction with the given tail appended after the last
/// digit. Exact when the tail is exact.
inline Scalar evaluate(const CFWord& w, const Scalar& tail) { return detail::evaluate_word(w, tail); }
inline Scalar evaluate(const GeneralWord& w, const Scalar& tail) {
    return detail::evaluate_word(w, tail);
}

}  // namespace oddcf
