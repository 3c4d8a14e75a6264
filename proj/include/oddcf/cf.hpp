#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "mat2.hpp"
#include "scalar.hpp"
#include "words.hpp"

namespace oddcf {

/// Parameter of the alpha-map T_alpha on I_alpha = [alpha-2, alpha).
/// Valid range 0 < alpha <= G. Orbits additionally accept the right endpoint
/// x = alpha (the orbit of alpha itself is needed by the matching analysis);
/// one step always re-enters [alpha-2, alpha).
class AlphaParam {
public:
    explicit AlphaParam(Scalar value) : value_(std::move(value)) {
        if (value_.sign() <= 0 || cmp(value_, scalar_G()) > 0)
            throw UnsupportedAlpha("alpha must lie in (0, G], got " + value_.to_string());
    }
    const Scalar& value() const { return value_; }
    Scalar lower() const { return sub(value_, Scalar::from_int(2)); }

    bool contains_closed(const Scalar& x) const {
        return cmp(x, lower()) >= 0 && cmp(x, value_) <= 0;
    }

private:
    Scalar value_;
};

struct ConvergentPair {
    BigInt p, q;
};

namespace detail {

inline bool mixed_quad_fields(const Scalar& x, const Scalar& y) {
    return x.is_quad() && y.is_quad() && x.quad().d() != y.quad().d();
}

/// d_alpha(x) = 2*floor(1/(2|x|) + (1-alpha)/2) + 1 as a BigInt, without ever
/// forming a cross-field sum: the mixed case goes through ordered comparisons
/// R vs alpha + k only.
inline BigInt digit_value(const AlphaParam& alpha, const Scalar& R) {
    const Scalar& a = alpha.value();
    if (!mixed_quad_fields(R, a)) {
        Scalar arg = div(sub(add(R, Scalar::from_int(1)), a), Scalar::from_int(2));
        return (floor_exact(arg) << 1) + BigInt(1);
    }
    // d odd with alpha + d - 2 <= R < alpha + d
    double est = (R.to_double() + 1.0 - a.to_double()) / 2.0;
    est = std::min(std::max(est, -9.0e15), 9.0e15);
    BigInt d = (BigInt(static_cast<long long>(std::floor(est))) << 1) + BigInt(1);
    while (cmp(R, add(a, Scalar(Rational(d)))) >= 0) d += BigInt(2);
    while (cmp(R, add(a, Scalar(Rational(d - BigInt(2))))) < 0) d -= BigInt(2);
    return d;
}

inline void check_float_orbit_guard(const Scalar& x) {
    if (!x.is_float() || x.flt().is_zero()) return;
    const BigFloat& f = x.flt();
    if (float_mag_exp(f) < -(f.precision() / 2))
        throw PrecisionExhausted("float orbit reached |x| < 2^(-precision/2)");
}

}  // namespace detail

/// The digit pair (eps, a) = (sign x, d_alpha(x)).
inline SignedDigit digit(const AlphaParam& alpha, const Scalar& x) {
    if (x.is_zero()) throw ZeroInput("digit: x = 0 has no digit");
    if (!alpha.contains_closed(x))
        throw DomainError("digit: x = " + x.to_string() + " outside [alpha-2, alpha]");
    int eps = x.sign();
    Scalar R = recip(abs(x));
    return SignedDigit(eps, detail::digit_value(alpha, R));
}

/// One application of T_alpha: eps(x)/x - d_alpha(x), with T_alpha(0) = 0.
inline Scalar step(const AlphaParam& alpha, const Scalar& x) {
    if (x.is_zero()) return Scalar::from_int(0);
    if (!alpha.contains_closed(x))
        throw DomainError("step: x = " + x.to_string() + " outside [alpha-2, alpha]");
    Scalar R = recip(abs(x));  // eps/x = 1/|x|
    BigInt d = detail::digit_value(alpha, R);
    return sub(R, Scalar(Rational(d)));
}

/// Iterates of T_alpha starting at x0 (inclusive), halting at the first 0.
/// Float orbits abort with PrecisionExhausted when |x| < 2^(-prec/2).
inline std::vector<Scalar> orbit(const AlphaParam& alpha, const Scalar& x0, std::size_t n_max) {
    std::vector<Scalar> out;
    out.push_back(x0);
    Scalar x = x0;
    for (std::size_t i = 0; i < n_max; ++i) {
        if (x.is_zero()) break;
        detail::check_float_orbit_guard(x);
        x = step(alpha, x);
        out.push_back(x);
    }
    return out;
}

inline constexpr std::size_t kDefaultExpandDepth = 10000;

struct Expansion {
    CFWord word;
    std::vector<Scalar> points;  // points[k] = T_alpha^k(x), one longer than digits
};

/// Expansion together with the orbit that produced it.
inline Expansion expand_full(const AlphaParam& alpha, const Scalar& x,
                             std::size_t n_max = kDefaultExpandDepth) {
    if (!alpha.contains_closed(x))
        throw DomainError("expand: x = " + x.to_string() + " outside [alpha-2, alpha]");
    Expansion e;
    e.points.push_back(x);
    Scalar cur = x;
    for (std::size_t i = 0; i < n_max; ++i) {
        if (cur.is_zero()) {
            e.word.terminated = true;
            break;
        }
        detail::check_float_orbit_guard(cur);
        int eps = cur.sign();
        Scalar R = recip(abs(cur));
        BigInt d = detail::digit_value(alpha, R);
        e.word.digits.emplace_back(eps, d);
        cur = sub(R, Scalar(Rational(d)));
        e.points.push_back(cur);
    }
    if (cur.is_zero()) e.word.terminated = true;
    return e;
}

/// Odd CF word of x along the T_alpha orbit (head is always 0).
inline CFWord expand(const AlphaParam& alpha, const Scalar& x,
                     std::size_t n_max = kDefaultExpandDepth) {
    return expand_full(alpha, x, n_max).word;
}

/// Convergents p_k/q_k of a word, k = 0..n. p_0/q_0 = 0/1; for a terminated
/// word of x the last pair equals x in lowest terms.
inline std::vector<ConvergentPair> convergents(const CFWord& w) {
    std::vector<ConvergentPair> out;
    BigInt pm1(1), p0(0), qm1(0), q0(1);
    out.push_back({p0, q0});
    for (const auto& t : w.digits) {
        BigInt p = t.a * p0 + BigInt(t.eps) * pm1;
        BigInt q = t.a * q0 + BigInt(t.eps) * qm1;
        pm1 = std::exchange(p0, p);
        qm1 = std::exchange(q0, q);
        out.push_back({p0, q0});
    }
    return out;
}

/// Orbit admissibility of a word at the given alpha, tolerant of suffixes on
/// the closure boundary of I_alpha (measure-zero cylinder edges). In the
/// interior this is equivalent to "re-expansion reproduces the word".
inline bool validate_word(const AlphaParam& alpha, const CFWord& w) {
    for (const auto& t : w.digits)
        if (t.a.sign() <= 0 || !t.a.is_odd() || (t.eps != 1 && t.eps != -1)) return false;
    Scalar x = evaluate(w, Scalar::from_int(0));
    if (!alpha.contains_closed(x)) return false;
    for (std::size_t k = 0; k < w.digits.size(); ++k) {
        if (x.is_zero()) return false;  // digits continue past a terminated orbit
        if (x.sign() != w.digits[k].eps) return false;
        // next suffix value: eps/x - a
        x = sub(recip(abs(x)), Scalar(Rational(w.digits[k].a)));
        if (!alpha.contains_closed(x)) return false;
    }
    return true;
}

}  // namespace oddcf
