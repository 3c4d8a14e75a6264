#pragma once

#include <string>
#include <utility>

#include "bigint.hpp"
#include "errors.hpp"
#include "rational.hpp"

namespace oddcf {

/// Exact quadratic surd (a + b*sqrt(d))/c with integer a, b, c > 0 and
/// square-free radicand d in {5, 13}. Canonical form: gcd(a, b, c) = 1.
/// Ring and field operations stay inside a fixed radicand; the value is
/// irrational iff b != 0.
class QuadExt {
public:
    QuadExt(BigInt a, BigInt b, BigInt c, int d)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(d) {
        if (d_ != 5 && d_ != 13) throw Error("QuadExt: radicand must be 5 or 13");
        canon();
    }
    QuadExt(long long a, long long b, long long c, int d) : QuadExt(BigInt(a), BigInt(b), BigInt(c), d) {}

    static QuadExt from_rational(const Rational& r, int d) {
        return QuadExt(r.num(), BigInt(0), r.den(), d);
    }

    const BigInt& a() const { return a_; }
    const BigInt& b() const { return b_; }
    const BigInt& c() const { return c_; }
    int d() const { return d_; }
    bool is_rational() const { return b_.is_zero(); }
    Rational rational_part() const { return Rational(a_, c_); }  // exact iff b == 0

    friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
        x.check_field(y);
        return QuadExt(x.a_ * y.c_ + y.a_ * x.c_, x.b_ * y.c_ + y.b_ * x.c_, x.c_ * y.c_, x.d_);
    }
    friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
        x.check_field(y);
        return QuadExt(x.a_ * y.c_ - y.a_ * x.c_, x.b_ * y.c_ - y.b_ * x.c_, x.c_ * y.c_, x.d_);
    }
    friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
        x.check_field(y);
        return QuadExt(x.a_ * y.a_ + BigInt(x.d_) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_,
                       x.c_ * y.c_, x.d_);
    }
    friend QuadExt operator/(const QuadExt& x, const QuadExt& y) { return x * y.recip(); }
    QuadExt operator-() const { return QuadExt(-a_, -b_, c_, d_); }

    QuadExt recip() const {
        // 1/((a+b√d)/c) = c(a−b√d)/(a²−b²d)
        BigInt norm = a_ * a_ - BigInt(d_) * b_ * b_;
        if (norm.is_zero()) throw PoleError("QuadExt: reciprocal of zero");
        return QuadExt(c_ * a_, -(c_ * b_), norm, d_);
    }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    /// Exact sign via squared integer bounds; no floating point involved.
    int sign() const {
        int sa = a_.sign(), sb = b_.sign();
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // sign(a + b√d) with a, b of opposite signs: compare a² vs b²d
        int c = cmp(a_ * a_, BigInt(d_) * b_ * b_);
        if (c == 0) return 0;  // impossible for square-free d unless a=b=0
        return c > 0 ? sa : sb;
    }

    friend int cmp(const QuadExt& x, const QuadExt& y) { return (x - y).sign(); }
    friend int cmp(const QuadExt& x, const Rational& r) {
        return cmp(x, QuadExt::from_rational(r, x.d_));
    }
    friend bool operator==(const QuadExt& x, const QuadExt& y) {
        return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_;
    }
    friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

    /// Exact floor: starts from a double estimate, fixed up by exact compares.
    BigInt floor() const {
        if (b_.is_zero()) return Rational(a_, c_).floor();
        double est = to_double();
        est = std::min(std::max(est, -9.0e15), 9.0e15);
        BigInt n(static_cast<long long>(std::floor(est)));
        while (cmp_with_int(n) < 0) n -= BigInt(1);          // value < n: step down
        while (cmp_with_int(n + BigInt(1)) >= 0) n += BigInt(1);  // value >= n+1
        return n;
    }

    double to_double() const {
        static const double sq5 = std::sqrt(5.0), sq13 = std::sqrt(13.0);
        double root = d_ == 5 ? sq5 : sq13;
        // good enough as a seed for exact fix-ups; exact paths never rely on it
        return (a_.to_double() + b_.to_double() * root) / c_.to_double();
    }

    std::string to_string() const {
        return "(" + a_.to_string() + (b_.sign() < 0 ? "-" : "+") + b_.abs().to_string() +
               "*sqrt(" + std::to_string(d_) + "))/" + c_.to_string();
    }

private:
    BigInt a_, b_, c_;
    int d_;

    void check_field(const QuadExt& other) const {
        if (d_ != other.d_)
            throw MixedFieldError("QuadExt: arithmetic across sqrt(" + std::to_string(d_) +
                                  ") and sqrt(" + std::to_string(other.d_) + ")");
    }

    int cmp_with_int(const BigInt& n) const {
        // sign of (a - n c) + b√d
        QuadExt diff(a_ - n * c_, b_, c_, d_);
        return diff.sign();
    }

    void canon() {
        if (c_.is_zero()) throw PoleError("QuadExt: zero denominator");
        if (c_.sign() < 0) {
            a_ = -a_;
            b_ = -b_;
            c_ = -c_;
        }
        BigInt g = gcd(gcd(a_, b_), c_);
        if (!g.is_one() && !g.is_zero()) {
            a_ = a_ / g;
            b_ = b_ / g;
            c_ = c_ / g;
        }
    }
};

// Golden-mean constants: g = (√5−1)/2, G = (√5+1)/2 = g+1 = 1/g.
inline const QuadExt& golden_g() {
    static const QuadExt v(-1, 1, 2, 5);
    return v;
}
inline const QuadExt& golden_G() {
    static const QuadExt v(1, 1, 2, 5);
    return v;
}
/// (√13−1)/6, the left endpoint of the supported natural-extension range.
inline const QuadExt& alpha_min13() {
    static const QuadExt v(-1, 1, 6, 13);
    return v;
}

}  // namespace oddcf
