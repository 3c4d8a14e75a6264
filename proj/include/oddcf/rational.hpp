#pragma once

#include <string>
#include <string_view>
#include <utility>

#include "bigint.hpp"
#include "errors.hpp"

namespace oddcf {

/// Exact rational p/q in canonical form: q > 0, gcd(|p|, q) = 1.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) { canon(); }
    Rational(long long num, long long den) : num_(num), den_(den) { canon(); }
    explicit Rational(long long v) : num_(v), den_(1) {}
    explicit Rational(BigInt v) : num_(std::move(v)), den_(1) {}

    static Rational from_string(std::string_view s) {
        auto slash = s.find('/');
        if (slash == std::string_view::npos) return Rational(BigInt::from_string(s));
        return Rational(BigInt::from_string(s.substr(0, slash)),
                        BigInt::from_string(s.substr(slash + 1)));
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    int sign() const { return num_.sign(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_.is_one(); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw PoleError("Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational operator-() const {
        Rational r = *this;
        r.num_ = -r.num_;
        return r;
    }
    Rational recip() const {
        if (is_zero()) throw PoleError("Rational: reciprocal of zero");
        return Rational(den_, num_);
    }

    friend int cmp(const Rational& a, const Rational& b) {
        return cmp(a.num_ * b.den_, b.num_ * a.den_);
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a, b) >= 0; }

    /// The unique n with n <= p/q < n+1.
    BigInt floor() const {
        BigInt q, r;
        divmod(num_, den_, q, r);
        if (r.sign() < 0) q -= BigInt(1);
        return q;
    }

    double to_double() const {
        // scale so the quotient lands in double range with ~60 significant bits
        std::size_t nb = num_.bit_length(), db = den_.bit_length();
        if (nb == 0) return 0.0;
        long long shift = static_cast<long long>(db) - static_cast<long long>(nb) + 62;
        BigInt scaled = shift >= 0 ? (num_ << static_cast<std::size_t>(shift))
                                   : (num_ >> static_cast<std::size_t>(-shift));
        BigInt q = scaled / den_;
        return std::ldexp(q.to_double(), static_cast<int>(-shift));
    }

    std::string to_string() const {
        if (is_integer()) return num_.to_string();
        return num_.to_string() + "/" + den_.to_string();
    }

private:
    BigInt num_, den_;

    void canon() {
        if (den_.is_zero()) throw PoleError("Rational: zero denominator");
        if (den_.sign() < 0) {
            den_ = -den_;
            num_ = -num_;
        }
        if (num_.is_zero()) {
            den_ = BigInt(1);
            return;
        }
        BigInt g = gcd(num_, den_);
        if (!g.is_one()) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
    }
};

}  // namespace oddcf
