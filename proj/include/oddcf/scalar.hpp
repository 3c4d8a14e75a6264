#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "bigfloat.hpp"
#include "bigint.hpp"
#include "errors.hpp"
#include "quad.hpp"
#include "rational.hpp"

namespace oddcf {

/// Exact-or-float scalar: Rational | QuadExt | BigFloat.
///
/// Canonical invariant: a QuadExt payload is irrational (b != 0); quads that
/// collapse to rationals are demoted on construction, so "Quad" always means
/// "irrational element of Q(sqrt d)". Floats are exact dyadics carrying a
/// precision tag (see BigFloat).
///
/// Comparison is total. Exact-vs-exact within one field is algebraic, floats
/// compare exactly as dyadics, and the only escalating case is
/// Q(sqrt 5) vs Q(sqrt 13), certified by interval separation with precision
/// doubling up to kMaxPrecisionBits.
class Scalar {
public:
    enum class Kind { Rat, Quad, Float };

    Scalar() : v_(Rational(0)) {}
    Scalar(Rational r) : v_(std::move(r)) {}  // NOLINT: implicit by design
    Scalar(QuadExt q) : v_(Rational(0)) {     // NOLINT: implicit by design
        if (q.is_rational())
            v_ = q.rational_part();
        else
            v_ = std::move(q);
    }
    Scalar(BigFloat f) : v_(std::move(f)) {}  // NOLINT: implicit by design
    static Scalar from_int(long long n) { return Scalar(Rational(n)); }

    Kind kind() const { return static_cast<Kind>(v_.index()); }
    bool is_rat() const { return kind() == Kind::Rat; }
    bool is_quad() const { return kind() == Kind::Quad; }
    bool is_float() const { return kind() == Kind::Float; }
    bool is_exact() const { return !is_float(); }

    const Rational& rat() const { return std::get<Rational>(v_); }
    const QuadExt& quad() const { return std::get<QuadExt>(v_); }
    const BigFloat& flt() const { return std::get<BigFloat>(v_); }

    int sign() const {
        switch (kind()) {
            case Kind::Rat: return rat().sign();
            case Kind::Quad: return quad().sign();
            default: return flt().sign();
        }
    }
    bool is_zero() const { return sign() == 0; }

    double to_double() const {
        switch (kind()) {
            case Kind::Rat: return rat().to_double();
            case Kind::Quad: return quad().to_double();
            default: return flt().to_double();
        }
    }

    std::string to_string() const {
        switch (kind()) {
            case Kind::Rat: return rat().to_string();
            case Kind::Quad: return quad().to_string();
            default: return flt().to_string();
        }
    }

    /// Accepts "p/q", "(a+b*sqrt(d))/c", plain/decimal numerals (exact
    /// rationals), "<decimal>@<bits>" floats, and the shorthands g, G.
    static Scalar parse(std::string_view in);

private:
    std::variant<Rational, QuadExt, BigFloat> v_;
};

inline Scalar scalar_g() { return Scalar(golden_g()); }
inline Scalar scalar_G() { return Scalar(golden_G()); }
inline Scalar scalar_alpha_min() { return Scalar(alpha_min13()); }

inline BigFloat to_float(const Scalar& s, int prec) {
    switch (s.kind()) {
        case Scalar::Kind::Rat: return BigFloat::from_rational(s.rat(), prec);
        case Scalar::Kind::Quad: return BigFloat::from_quad(s.quad(), prec);
        default: return s.flt();
    }
}

namespace detail {

inline long long float_mag_exp(const BigFloat& f) {
    return static_cast<long long>(f.mantissa().bit_length()) + f.exponent();
}

/// Certified sign of (a - b) for irrationals from distinct quadratic fields.
inline int cmp_cross_field(const QuadExt& a, const QuadExt& b) {
    for (int prec = kDefaultPrecisionBits; prec <= kMaxPrecisionBits; prec *= 2) {
        BigFloat fa = BigFloat::from_quad(a, prec);
        BigFloat fb = BigFloat::from_quad(b, prec);
        BigFloat diff = sub_exact(fa, fb);
        if (diff.is_zero()) continue;
        long long scale = std::max(float_mag_exp(fa), float_mag_exp(fb));
        // conversion error of each side is below 2^(scale - prec + 2)
        if (float_mag_exp(diff) > scale - prec + 4) return diff.sign();
    }
    throw PrecisionExhausted(
        "cmp: values from Q(sqrt5) and Q(sqrt13) indistinguishable at max precision");
}

}  // namespace detail

/// Total order over all scalar kinds. Floats are exact dyadics, so every
/// comparison touching a float is exact; the single escalating case is
/// Q(sqrt5) vs Q(sqrt13).
inline int cmp(const Scalar& x, const Scalar& y) {
    if (x.is_float()) return cmp(Scalar(x.flt().to_rational()), y);
    if (y.is_float()) return cmp(x, Scalar(y.flt().to_rational()));
    if (x.is_rat() && y.is_rat()) return cmp(x.rat(), y.rat());
    if (x.is_rat()) return -cmp(y.quad(), x.rat());
    if (y.is_rat()) return cmp(x.quad(), y.rat());
    if (x.quad().d() == y.quad().d()) return cmp(x.quad(), y.quad());
    return detail::cmp_cross_field(x.quad(), y.quad());
}

inline bool scalar_eq(const Scalar& x, const Scalar& y) { return cmp(x, y) == 0; }
inline bool scalar_lt(const Scalar& x, const Scalar& y) { return cmp(x, y) < 0; }
inline bool scalar_le(const Scalar& x, const Scalar& y) { return cmp(x, y) <= 0; }

namespace detail {

template <typename RatOp, typename QuadOp, typename FloatOp>
Scalar binary_dispatch(const Scalar& x, const Scalar& y, RatOp rop, QuadOp qop, FloatOp fop) {
    using K = Scalar::Kind;
    if (x.kind() == K::Float || y.kind() == K::Float) {
        int prec = 0;
        if (x.is_float()) prec = std::max(prec, x.flt().precision());
        if (y.is_float()) prec = std::max(prec, y.flt().precision());
        return Scalar(fop(to_float(x, prec), to_float(y, prec), prec));
    }
    if (x.is_rat() && y.is_rat()) return Scalar(rop(x.rat(), y.rat()));
    if (x.is_quad() && y.is_quad()) return Scalar(qop(x.quad(), y.quad()));  // field-checked
    if (x.is_quad()) return Scalar(qop(x.quad(), QuadExt::from_rational(y.rat(), x.quad().d())));
    return Scalar(qop(QuadExt::from_rational(x.rat(), y.quad().d()), y.quad()));
}

}  // namespace detail

inline Scalar add(const Scalar& x, const Scalar& y) {
    return detail::binary_dispatch(
        x, y, [](const Rational& a, const Rational& b) { return a + b; },
        [](const QuadExt& a, const QuadExt& b) { return a + b; },
        [](const BigFloat& a, const BigFloat& b, int p) { return add(a, b, p); });
}
inline Scalar sub(const Scalar& x, const Scalar& y) {
    return detail::binary_dispatch(
        x, y, [](const Rational& a, const Rational& b) { return a - b; },
        [](const QuadExt& a, const QuadExt& b) { return a - b; },
        [](const BigFloat& a, const BigFloat& b, int p) { return sub(a, b, p); });
}
inline Scalar mul(const Scalar& x, const Scalar& y) {
    return detail::binary_dispatch(
        x, y, [](const Rational& a, const Rational& b) { return a * b; },
        [](const QuadExt& a, const QuadExt& b) { return a * b; },
        [](const BigFloat& a, const BigFloat& b, int p) { return mul(a, b, p); });
}
inline Scalar div(const Scalar& x, const Scalar& y) {
    if (y.is_zero()) throw PoleError("Scalar: division by zero");
    return detail::binary_dispatch(
        x, y, [](const Rational& a, const Rational& b) { return a / b; },
        [](const QuadExt& a, const QuadExt& b) { return a / b; },
        [](const BigFloat& a, const BigFloat& b, int p) { return div(a, b, p); });
}
inline Scalar neg(const Scalar& x) {
    switch (x.kind()) {
        case Scalar::Kind::Rat: return Scalar(-x.rat());
        case Scalar::Kind::Quad: return Scalar(-x.quad());
        default: return Scalar(-x.flt());
    }
}
inline Scalar recip(const Scalar& x) {
    switch (x.kind()) {
        case Scalar::Kind::Rat: return Scalar(x.rat().recip());
        case Scalar::Kind::Quad: return Scalar(x.quad().recip());
        default: {
            if (x.flt().is_zero()) throw PoleError("Scalar: reciprocal of zero");
            int p = x.flt().precision();
            return Scalar(div(BigFloat(1, p), x.flt(), p));
        }
    }
}
inline Scalar abs(const Scalar& x) { return x.sign() < 0 ? neg(x) : x; }

inline Scalar add_int(const Scalar& x, long long n) { return add(x, Scalar::from_int(n)); }
inline Scalar mul_int(const Scalar& x, long long n) { return mul(x, Scalar::from_int(n)); }

/// The unique n with n <= z < n+1.
///
/// For a Float the dyadic value is floored exactly, but the call refuses
/// (UncertainFloor) when the value is within 2^(-prec/2) of an integer
/// without being exactly integral: at that distance the float no longer
/// certifies which side of the jump the value it approximates is on.
inline BigInt floor_exact(const Scalar& z) {
    switch (z.kind()) {
        case Scalar::Kind::Rat: return z.rat().floor();
        case Scalar::Kind::Quad: return z.quad().floor();
        default: {
            const BigFloat& f = z.flt();
            if (f.is_integer()) return f.floor();
            BigFloat d = f.frac_distance();
            if (detail::float_mag_exp(d) < -(f.precision() / 2))
                throw UncertainFloor("floor_exact: float within margin of an integer");
            return f.floor();
        }
    }
}

inline Scalar Scalar::parse(std::string_view in) {
    std::string s;
    for (char c : in)
        if (c != ' ' && c != '\t') s.push_back(c);
    if (s.empty()) throw ParseError("Scalar: empty text");
    if (s == "g") return scalar_g();
    if (s == "G") return scalar_G();
    auto at = s.find('@');
    if (at != std::string::npos) {
        int bits = 0;
        try {
            bits = std::stoi(s.substr(at + 1));
        } catch (...) {
            throw ParseError("Scalar: bad precision annotation in '" + s + "'");
        }
        if (bits <= 0 || bits > kMaxPrecisionBits)
            throw ParseError("Scalar: precision out of range in '" + s + "'");
        Scalar dec = parse(s.substr(0, at));
        if (!dec.is_rat()) throw ParseError("Scalar: float literal must be decimal");
        return Scalar(BigFloat::from_rational(dec.rat(), bits));
    }
    if (s.find("sqrt") != std::string::npos) {
        // (a+b*sqrt(d))/c with optional signs on a and b
        auto fail = [&]() -> Scalar { throw ParseError("Scalar: bad surd literal '" + s + "'"); };
        if (s.front() != '(') return fail();
        std::size_t i = 1;
        auto read_int = [&](std::size_t& pos) -> BigInt {
            std::size_t start = pos;
            if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
            while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
            if (pos == start) throw ParseError("Scalar: bad integer in surd literal");
            return BigInt::from_string(s.substr(start, pos - start));
        };
        BigInt a = read_int(i);
        if (i >= s.size() || (s[i] != '+' && s[i] != '-')) return fail();
        bool b_neg = s[i] == '-';
        ++i;
        BigInt b = read_int(i);
        if (b_neg) b = -b;
        if (s.compare(i, 6, "*sqrt(") != 0) return fail();
        i += 6;
        BigInt d = read_int(i);
        if (s.compare(i, 3, "))/") != 0) return fail();
        i += 3;
        BigInt c = read_int(i);
        if (i != s.size()) return fail();
        if (!d.fits_int64()) return fail();
        return Scalar(QuadExt(a, b, c, static_cast<int>(d.to_int64())));
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t frac = s.size() - dot - 1;
        BigInt num = BigInt::from_string(digits);
        BigInt den(1);
        for (std::size_t i = 0; i < frac; ++i) den = den * BigInt(10);
        return Scalar(Rational(num, den));
    }
    if (s.find('/') != std::string::npos) return Scalar(Rational::from_string(s));
    return Scalar(Rational(BigInt::from_string(s)));
}

}  // namespace oddcf
