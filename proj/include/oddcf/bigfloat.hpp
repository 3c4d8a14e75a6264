#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "bigint.hpp"
#include "errors.hpp"
#include "quad.hpp"
#include "rational.hpp"

namespace oddcf {

inline constexpr int kDefaultPrecisionBits = 256;
inline constexpr int kMaxPrecisionBits = 8192;

/// Binary floating-point value mant * 2^exp with a precision tag.
///
/// The stored value is an exact dyadic rational; `prec` caps the mantissa
/// width of arithmetic *results* (round to nearest, ties away from zero).
/// Because the value itself is exact, comparisons against exact scalars are
/// exact; rounding enters only through arithmetic.
class BigFloat {
public:
    BigFloat() = default;
    explicit BigFloat(long long v, int prec = kDefaultPrecisionBits)
        : mant_(v), exp_(0), prec_(prec) {
        normalize();
    }
    BigFloat(BigInt mant, long long exp, int prec) : mant_(std::move(mant)), exp_(exp), prec_(prec) {
        normalize();
        round_to(prec_);
    }

    static BigFloat from_rational(const Rational& r, int prec) {
        if (r.is_zero()) return BigFloat(0, prec);
        // scale numerator so the quotient carries prec+2 significant bits
        long long nb = static_cast<long long>(r.num().bit_length());
        long long db = static_cast<long long>(r.den().bit_length());
        long long shift = db - nb + prec + 2;
        BigInt scaled = shift >= 0 ? (r.num() << static_cast<std::size_t>(shift))
                                   : (r.num() >> static_cast<std::size_t>(-shift));
        BigInt q, rem;
        divmod(scaled, r.den(), q, rem);
        // round the quotient toward nearest (error <= 1 ulp before final rounding)
        BigInt twice = rem.abs() << 1;
        if (cmp(twice, r.den()) >= 0) q += BigInt(q.sign() >= 0 ? 1 : -1);
        BigFloat out;
        out.mant_ = std::move(q);
        out.exp_ = -shift;
        out.prec_ = prec;
        out.normalize();
        out.round_to(prec);
        return out;
    }

    static BigFloat from_quad(const QuadExt& q, int prec) {
        if (q.is_zero()) return BigFloat(0, prec);
        int guard = 16;
        // sqrt(d) to prec+guard bits: isqrt(d * 2^(2k)) has error < 1 ulp
        std::size_t k = static_cast<std::size_t>(prec + guard);
        BigInt root = isqrt(BigInt(q.d()) << (2 * k));  // ≈ sqrt(d)*2^k
        BigFloat sq;
        sq.mant_ = std::move(root);
        sq.exp_ = -static_cast<long long>(k);
        sq.prec_ = prec + guard;
        sq.normalize();
        BigFloat av = from_rational(Rational(q.a()), prec + guard);
        BigFloat bv = from_rational(Rational(q.b()), prec + guard);
        BigFloat cv = from_rational(Rational(q.c()), prec + guard);
        BigFloat num = add(av, mul(bv, sq, prec + guard), prec + guard);
        BigFloat out = div(num, cv, prec + guard);
        out.round_to(prec);
        out.prec_ = prec;
        return out;
    }

    const BigInt& mantissa() const { return mant_; }
    long long exponent() const { return exp_; }
    int precision() const { return prec_; }
    int sign() const { return mant_.sign(); }
    bool is_zero() const { return mant_.is_zero(); }

    BigFloat operator-() const {
        BigFloat r = *this;
        r.mant_ = -r.mant_;
        return r;
    }

    /// Exact comparison of the underlying dyadic values.
    friend int cmp(const BigFloat& x, const BigFloat& y) {
        if (x.sign() != y.sign()) return x.sign() < y.sign() ? -1 : 1;
        if (x.is_zero()) return 0;
        if (x.top_exp() != y.top_exp()) {
            bool smaller = x.top_exp() < y.top_exp();
            return (smaller == (x.sign() > 0)) ? -1 : 1;
        }
        return sub_exact(x, y).sign();
    }

    friend BigFloat add(const BigFloat& x, const BigFloat& y, int prec) {
        BigFloat r = add_exact(x, y);
        r.prec_ = prec;
        r.round_to(prec);
        return r;
    }
    friend BigFloat sub(const BigFloat& x, const BigFloat& y, int prec) {
        return add(x, -y, prec);
    }
    friend BigFloat mul(const BigFloat& x, const BigFloat& y, int prec) {
        BigFloat r;
        r.mant_ = x.mant_ * y.mant_;
        r.exp_ = x.exp_ + y.exp_;
        r.prec_ = prec;
        r.normalize();
        r.round_to(prec);
        return r;
    }
    friend BigFloat div(const BigFloat& x, const BigFloat& y, int prec) {
        if (y.is_zero()) throw PoleError("BigFloat: division by zero");
        if (x.is_zero()) return BigFloat(0, prec);
        long long nb = static_cast<long long>(x.mant_.bit_length());
        long long db = static_cast<long long>(y.mant_.bit_length());
        long long shift = db - nb + prec + 2;
        BigInt scaled = shift >= 0 ? (x.mant_ << static_cast<std::size_t>(shift))
                                   : (x.mant_ >> static_cast<std::size_t>(-shift));
        BigInt q, rem;
        divmod(scaled, y.mant_, q, rem);
        BigInt twice = rem.abs() << 1;
        if (cmp(twice, y.mant_.abs()) >= 0) q += BigInt(q.sign() >= 0 ? 1 : -1);
        BigFloat r;
        r.mant_ = std::move(q);
        r.exp_ = x.exp_ - y.exp_ - shift;
        r.prec_ = prec;
        r.normalize();
        r.round_to(prec);
        return r;
    }

    /// Exact floor of the dyadic value.
    BigInt floor() const {
        if (exp_ >= 0) return mant_ << static_cast<std::size_t>(exp_);
        BigInt q = mant_ >> static_cast<std::size_t>(-exp_);
        if (mant_.sign() < 0) {
            // shifting truncates toward zero on magnitude; fix negative case
            BigInt back = q << static_cast<std::size_t>(-exp_);
            if (back != mant_) q -= BigInt(1);
        }
        return q;
    }

    bool is_integer() const { return exp_ >= 0; }  // mantissa has no trailing zeros

    /// Distance to the nearest integer, as an exact BigFloat.
    BigFloat frac_distance() const {
        BigInt f = floor();
        BigFloat lo = sub_exact(*this, from_int_exact(f, prec_));
        BigFloat hi = sub_exact(from_int_exact(f + BigInt(1), prec_), *this);
        return cmp_abs(lo, hi) <= 0 ? lo : hi;
    }

    double to_double() const { return is_zero() ? 0.0 : ldexp_double(); }

    std::string to_string() const {
        // decimal with enough digits for the precision, annotated with bits
        int digits = static_cast<int>(prec_ * 0.30103) + 2;
        return to_decimal(digits) + "@" + std::to_string(prec_);
    }

    /// Decimal rendering with `digits` significant digits (round-half-away).
    std::string to_decimal(int digits) const {
        if (is_zero()) return "0";
        // value = mant * 2^exp; round(|value| * 10^k) carries `digits` digits
        double log10v = (static_cast<double>(mant_.bit_length()) + static_cast<double>(exp_)) *
                        0.3010299956639812;
        long long int_digits = static_cast<long long>(std::ceil(log10v));
        long long k = digits - int_digits;
        BigInt pow10(1);
        for (long long i = 0; i < (k >= 0 ? k : -k); ++i) pow10 = pow10 * BigInt(10);
        BigInt num = mant_.abs(), den(1);
        if (k >= 0) num = num * pow10; else den = den * pow10;
        if (exp_ >= 0) num = num << static_cast<std::size_t>(exp_);
        else den = den << static_cast<std::size_t>(-exp_);
        BigInt scaled, rem;
        divmod(num, den, scaled, rem);
        if (cmp(rem << 1, den) >= 0) scaled += BigInt(1);
        std::string s = scaled.to_string();
        long long point = static_cast<long long>(s.size()) - k;  // digits before the decimal point
        std::string out = sign() < 0 ? "-" : "";
        if (point <= 0) {
            out += "0.";
            for (long long i = 0; i < -point; ++i) out += '0';
            out += s;
        } else if (point >= static_cast<long long>(s.size())) {
            out += s;
            for (long long i = 0; i < point - static_cast<long long>(s.size()); ++i) out += '0';
        } else {
            out += s.substr(0, static_cast<std::size_t>(point)) + "." +
                   s.substr(static_cast<std::size_t>(point));
        }
        return out;
    }

    static BigFloat from_int_exact(const BigInt& v, int prec) {
        BigFloat r;
        r.mant_ = v;
        r.exp_ = 0;
        r.prec_ = prec;
        r.normalize();
        return r;
    }

    /// Exact (unrounded) sum; mantissa may exceed the precision tag.
    friend BigFloat add_exact(const BigFloat& x, const BigFloat& y) {
        if (x.is_zero()) return y;
        if (y.is_zero()) return x;
        long long e = std::min(x.exp_, y.exp_);
        BigInt xm = x.mant_ << static_cast<std::size_t>(x.exp_ - e);
        BigInt ym = y.mant_ << static_cast<std::size_t>(y.exp_ - e);
        BigFloat r;
        r.mant_ = xm + ym;
        r.exp_ = e;
        r.prec_ = std::max(x.prec_, y.prec_);
        r.normalize();
        return r;
    }
    friend BigFloat sub_exact(const BigFloat& x, const BigFloat& y) { return add_exact(x, -y); }

    /// Exact conversion to a rational (every BigFloat is dyadic).
    Rational to_rational() const {
        if (exp_ >= 0) return Rational(mant_ << static_cast<std::size_t>(exp_));
        return Rational(mant_, BigInt(1) << static_cast<std::size_t>(-exp_));
    }

private:
    BigInt mant_;
    long long exp_ = 0;
    int prec_ = kDefaultPrecisionBits;

    // exponent of the top bit: value magnitude in [2^(top_exp-1), 2^top_exp)
    long long top_exp() const { return static_cast<long long>(mant_.bit_length()) + exp_; }

    static int cmp_abs(const BigFloat& x, const BigFloat& y) {
        BigFloat d = sub_exact(x.abs_(), y.abs_());
        return d.sign();
    }
    BigFloat abs_() const {
        BigFloat r = *this;
        r.mant_ = r.mant_.abs();
        return r;
    }

    double ldexp_double() const {
        // split the exponent so ldexp doesn't overflow prematurely
        std::size_t bl = mant_.bit_length();
        if (bl > 900) {
            BigInt top = mant_ >> (bl - 64);
            return std::ldexp(top.to_double(),
                              static_cast<int>(exp_ + static_cast<long long>(bl - 64)));
        }
        return std::ldexp(mant_.to_double(), static_cast<int>(exp_));
    }

    void normalize() {
        if (mant_.is_zero()) {
            exp_ = 0;
            return;
        }
        // strip trailing zero bits so dyadic equality is structural
        std::size_t tz = 0;
        while (!mant_.bit(tz)) ++tz;
        if (tz) {
            mant_ = mant_ >> tz;
            exp_ += static_cast<long long>(tz);
        }
    }

    void round_to(int prec) {
        std::size_t bl = mant_.bit_length();
        if (bl <= static_cast<std::size_t>(prec)) return;
        std::size_t drop = bl - static_cast<std::size_t>(prec);
        bool round_up = mant_.bit(drop - 1);
        BigInt m = mant_.abs() >> drop;
        if (round_up) m += BigInt(1);
        int s = mant_.sign();
        mant_ = s < 0 ? -m : m;
        exp_ += static_cast<long long>(drop);
        normalize();
    }
};

}  // namespace oddcf
