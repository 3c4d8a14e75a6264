#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace oddcf {

/// Arbitrary-precision signed integer, sign-magnitude over 64-bit limbs
/// (little-endian). Division truncates toward zero, like built-in integers.
class BigInt {
public:
    BigInt() = default;

    BigInt(long long v) {  // NOLINT: implicit by design
        if (v == 0) return;
        sign_ = v < 0 ? -1 : 1;
        // avoid UB on LLONG_MIN
        unsigned long long m = v < 0 ? ~static_cast<unsigned long long>(v) + 1ULL
                                     : static_cast<unsigned long long>(v);
        mag_.push_back(static_cast<std::uint64_t>(m));
    }
    BigInt(int v) : BigInt(static_cast<long long>(v)) {}
    BigInt(long v) : BigInt(static_cast<long long>(v)) {}
    BigInt(unsigned long long v) {
        if (v != 0) {
            sign_ = 1;
            mag_.push_back(v);
        }
    }
    BigInt(unsigned long v) : BigInt(static_cast<unsigned long long>(v)) {}
    BigInt(unsigned v) : BigInt(static_cast<unsigned long long>(v)) {}

    static BigInt from_string(std::string_view s) {
        BigInt out;
        bool neg = false;
        std::size_t i = 0;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            neg = s[i] == '-';
            ++i;
        }
        if (i >= s.size()) throw ParseError("BigInt: empty numeral");
        for (; i < s.size();) {
            // consume up to 19 decimal digits per round
            std::uint64_t chunk = 0, scale = 1;
            int took = 0;
            while (i < s.size() && took < 19) {
                char c = s[i];
                if (c < '0' || c > '9') throw ParseError("BigInt: bad digit in numeral");
                chunk = chunk * 10 + static_cast<std::uint64_t>(c - '0');
                scale *= 10;
                ++i;
                ++took;
            }
            out = out.mul_u64(scale);
            out = out.add_mag_u64(chunk);
        }
        if (neg && !out.is_zero()) out.sign_ = -1;
        return out;
    }

    int sign() const { return sign_; }
    bool is_zero() const { return sign_ == 0; }
    bool is_one() const { return sign_ == 1 && mag_.size() == 1 && mag_[0] == 1; }
    bool is_odd() const { return !mag_.empty() && (mag_[0] & 1U); }

    BigInt abs() const {
        BigInt r = *this;
        if (r.sign_ < 0) r.sign_ = 1;
        return r;
    }
    BigInt operator-() const {
        BigInt r = *this;
        r.sign_ = -r.sign_;
        return r;
    }

    friend int cmp(const BigInt& a, const BigInt& b) {
        if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
        int c = cmp_mag(a.mag_, b.mag_);
        return a.sign_ >= 0 ? c : -c;
    }
    friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return cmp(a, b) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return cmp(a, b) >= 0; }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        BigInt r;
        if (a.sign_ == b.sign_) {
            r.mag_ = add_mag(a.mag_, b.mag_);
            r.sign_ = a.sign_;
        } else {
            int c = cmp_mag(a.mag_, b.mag_);
            if (c == 0) return BigInt();
            if (c > 0) {
                r.mag_ = sub_mag(a.mag_, b.mag_);
                r.sign_ = a.sign_;
            } else {
                r.mag_ = sub_mag(b.mag_, a.mag_);
                r.sign_ = b.sign_;
            }
        }
        return r;
    }
    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
        BigInt r;
        r.mag_ = mul_mag(a.mag_, b.mag_);
        r.sign_ = a.sign_ * b.sign_;
        return r;
    }

    BigInt& operator+=(const BigInt& b) { return *this = *this + b; }
    BigInt& operator-=(const BigInt& b) { return *this = *this - b; }
    BigInt& operator*=(const BigInt& b) { return *this = *this * b; }

    /// Truncating division: q = trunc(a/b), r = a - q*b (sign of r follows a).
    friend void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
        if (b.sign_ == 0) throw Error("BigInt: division by zero");
        int c = cmp_mag(a.mag_, b.mag_);
        if (c < 0) {
            q = BigInt();
            r = a;
            return;
        }
        std::vector<std::uint64_t> qm, rm;
        divmod_mag(a.mag_, b.mag_, qm, rm);
        q = BigInt();
        q.mag_ = std::move(qm);
        q.trim();
        if (!q.mag_.empty()) q.sign_ = a.sign_ * b.sign_;
        r = BigInt();
        r.mag_ = std::move(rm);
        r.trim();
        if (!r.mag_.empty()) r.sign_ = a.sign_;
    }
    friend BigInt operator/(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return q;
    }
    friend BigInt operator%(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return r;
    }

    friend BigInt gcd(BigInt a, BigInt b) {
        a.sign_ = a.mag_.empty() ? 0 : 1;
        b.sign_ = b.mag_.empty() ? 0 : 1;
        while (!b.is_zero()) {
            BigInt q, r;
            divmod(a, b, q, r);
            a = std::move(b);
            b = std::move(r);
        }
        return a;
    }

    BigInt operator<<(std::size_t bits) const {
        if (is_zero() || bits == 0) return bits == 0 ? *this : BigInt();
        std::size_t limb_shift = bits / 64, bit_shift = bits % 64;
        BigInt r;
        r.sign_ = sign_;
        r.mag_.assign(limb_shift, 0);
        if (bit_shift == 0) {
            r.mag_.insert(r.mag_.end(), mag_.begin(), mag_.end());
        } else {
            std::uint64_t carry = 0;
            for (std::uint64_t limb : mag_) {
                r.mag_.push_back((limb << bit_shift) | carry);
                carry = limb >> (64 - bit_shift);
            }
            if (carry) r.mag_.push_back(carry);
        }
        return r;
    }
    BigInt operator>>(std::size_t bits) const {
        if (is_zero()) return BigInt();
        std::size_t limb_shift = bits / 64, bit_shift = bits % 64;
        if (limb_shift >= mag_.size()) return BigInt();
        BigInt r;
        r.mag_.assign(mag_.begin() + static_cast<std::ptrdiff_t>(limb_shift), mag_.end());
        if (bit_shift != 0) {
            for (std::size_t i = 0; i < r.mag_.size(); ++i) {
                r.mag_[i] >>= bit_shift;
                if (i + 1 < r.mag_.size())
                    r.mag_[i] |= r.mag_[i + 1] << (64 - bit_shift);
            }
        }
        r.trim();
        r.sign_ = r.mag_.empty() ? 0 : sign_;
        return r;
    }

    /// Number of bits in |x|; 0 for x = 0.
    std::size_t bit_length() const {
        if (mag_.empty()) return 0;
        std::uint64_t top = mag_.back();
        std::size_t b = (mag_.size() - 1) * 64;
        while (top) {
            ++b;
            top >>= 1;
        }
        return b;
    }

    bool bit(std::size_t i) const {
        std::size_t limb = i / 64;
        if (limb >= mag_.size()) return false;
        return (mag_[limb] >> (i % 64)) & 1U;
    }

    /// Floor of sqrt(|x|); requires x >= 0.
    friend BigInt isqrt(const BigInt& x) {
        if (x.sign_ < 0) throw Error("isqrt of negative value");
        if (x.is_zero()) return BigInt();
        std::size_t bl = x.bit_length();
        BigInt guess = BigInt(1) << (bl / 2 + 1);
        // Newton iteration, monotone from above once past the first step
        for (;;) {
            BigInt next = (guess + x / guess) >> 1;
            if (cmp(next, guess) >= 0) break;
            guess = std::move(next);
        }
        if (guess * guess > x) guess -= BigInt(1);
        return guess;
    }

    long long to_int64() const {
        if (mag_.empty()) return 0;
        if (mag_.size() > 1 || mag_[0] > static_cast<std::uint64_t>(std::numeric_limits<long long>::max()))
            throw Error("BigInt: value does not fit in int64");
        long long v = static_cast<long long>(mag_[0]);
        return sign_ < 0 ? -v : v;
    }
    bool fits_int64() const {
        return mag_.size() <= 1 &&
               (mag_.empty() ||
                mag_[0] <= static_cast<std::uint64_t>(std::numeric_limits<long long>::max()));
    }

    double to_double() const {
        if (mag_.empty()) return 0.0;
        double v = 0.0;
        std::size_t n = mag_.size();
        std::size_t start = n > 2 ? n - 2 : 0;
        for (std::size_t i = n; i-- > start;) v = v * 18446744073709551616.0 + static_cast<double>(mag_[i]);
        v = std::ldexp(v, static_cast<int>(start) * 64);
        return sign_ < 0 ? -v : v;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::vector<std::uint64_t> tmp = mag_;
        std::string digits;
        while (!tmp.empty()) {
            // divide magnitude by 10^19, collect remainder
            constexpr std::uint64_t base = 10000000000000000000ULL;
            unsigned __int128 rem = 0;
            for (std::size_t i = tmp.size(); i-- > 0;) {
                unsigned __int128 cur = (rem << 64) | tmp[i];
                tmp[i] = static_cast<std::uint64_t>(cur / base);
                rem = cur % base;
            }
            while (!tmp.empty() && tmp.back() == 0) tmp.pop_back();
            std::uint64_t r = static_cast<std::uint64_t>(rem);
            for (int k = 0; k < 19; ++k) {
                digits.push_back(static_cast<char>('0' + r % 10));
                r /= 10;
            }
        }
        while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
        if (sign_ < 0) digits.push_back('-');
        std::reverse(digits.begin(), digits.end());
        return digits;
    }

private:
    int sign_ = 0;
    std::vector<std::uint64_t> mag_;

    void trim() {
        while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
        if (mag_.empty()) sign_ = 0;
    }

    BigInt mul_u64(std::uint64_t m) const {
        if (is_zero() || m == 0) return BigInt();
        BigInt r;
        r.sign_ = sign_;
        r.mag_.reserve(mag_.size() + 1);
        std::uint64_t carry = 0;
        for (std::uint64_t limb : mag_) {
            unsigned __int128 cur = static_cast<unsigned __int128>(limb) * m + carry;
            r.mag_.push_back(static_cast<std::uint64_t>(cur));
            carry = static_cast<std::uint64_t>(cur >> 64);
        }
        if (carry) r.mag_.push_back(carry);
        return r;
    }
    BigInt add_mag_u64(std::uint64_t v) const {
        if (v == 0) return *this;
        if (is_zero()) return BigInt(v);
        BigInt r = *this;
        std::uint64_t carry = v;
        for (std::size_t i = 0; i < r.mag_.size() && carry; ++i) {
            std::uint64_t old = r.mag_[i];
            r.mag_[i] = old + carry;
            carry = r.mag_[i] < old ? 1 : 0;
        }
        if (carry) r.mag_.push_back(carry);
        return r;
    }

    static int cmp_mag(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (std::size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }
    static std::vector<std::uint64_t> add_mag(const std::vector<std::uint64_t>& a,
                                              const std::vector<std::uint64_t>& b) {
        const auto &big = a.size() >= b.size() ? a : b, &small = a.size() >= b.size() ? b : a;
        std::vector<std::uint64_t> r;
        r.reserve(big.size() + 1);
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < big.size(); ++i) {
            std::uint64_t x = big[i], y = i < small.size() ? small[i] : 0;
            std::uint64_t s = x + y;
            std::uint64_t c1 = s < x ? 1 : 0;
            std::uint64_t s2 = s + carry;
            std::uint64_t c2 = s2 < s ? 1 : 0;
            r.push_back(s2);
            carry = c1 | c2;
        }
        if (carry) r.push_back(carry);
        return r;
    }
    // requires |a| >= |b|
    static std::vector<std::uint64_t> sub_mag(const std::vector<std::uint64_t>& a,
                                              const std::vector<std::uint64_t>& b) {
        std::vector<std::uint64_t> r;
        r.reserve(a.size());
        std::uint64_t borrow = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::uint64_t x = a[i], y = i < b.size() ? b[i] : 0;
            std::uint64_t d = x - y;
            std::uint64_t b1 = x < y ? 1 : 0;
            std::uint64_t d2 = d - borrow;
            std::uint64_t b2 = d < borrow ? 1 : 0;
            r.push_back(d2);
            borrow = b1 | b2;
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
    static std::vector<std::uint64_t> mul_mag(const std::vector<std::uint64_t>& a,
                                              const std::vector<std::uint64_t>& b) {
        std::vector<std::uint64_t> r(a.size() + b.size(), 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j < b.size(); ++j) {
                unsigned __int128 cur = static_cast<unsigned __int128>(a[i]) * b[j] + r[i + j] + carry;
                r[i + j] = static_cast<std::uint64_t>(cur);
                carry = static_cast<std::uint64_t>(cur >> 64);
            }
            std::size_t k = i + b.size();
            while (carry) {
                unsigned __int128 cur = static_cast<unsigned __int128>(r[k]) + carry;
                r[k] = static_cast<std::uint64_t>(cur);
                carry = static_cast<std::uint64_t>(cur >> 64);
                ++k;
            }
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    // Knuth algorithm D on normalized limbs; |a| >= |b|, b nonzero.
    static void divmod_mag(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b,
                           std::vector<std::uint64_t>& q, std::vector<std::uint64_t>& r) {
        if (b.size() == 1) {
            q.assign(a.size(), 0);
            unsigned __int128 rem = 0;
            for (std::size_t i = a.size(); i-- > 0;) {
                unsigned __int128 cur = (rem << 64) | a[i];
                q[i] = static_cast<std::uint64_t>(cur / b[0]);
                rem = cur % b[0];
            }
            r.clear();
            if (rem) r.push_back(static_cast<std::uint64_t>(rem));
            return;
        }
        // normalize so the divisor's top bit is set
        int shift = 0;
        {
            std::uint64_t top = b.back();
            while (!(top & (1ULL << 63))) {
                top <<= 1;
                ++shift;
            }
        }
        auto shl = [&](std::vector<std::uint64_t>& v) {
            if (shift == 0) return;
            std::uint64_t carry = 0;
            for (auto& limb : v) {
                std::uint64_t nxt = limb >> (64 - shift);
                limb = (limb << shift) | carry;
                carry = nxt;
            }
            if (carry) v.push_back(carry);
        };
        shl(a);
        shl(b);
        std::size_t n = b.size(), m = a.size() - n;
        a.push_back(0);
        q.assign(m + 1, 0);
        for (std::size_t j = m + 1; j-- > 0;) {
            unsigned __int128 num = (static_cast<unsigned __int128>(a[j + n]) << 64) | a[j + n - 1];
            unsigned __int128 qhat = num / b[n - 1];
            unsigned __int128 rhat = num % b[n - 1];
            constexpr unsigned __int128 B = static_cast<unsigned __int128>(1) << 64;
            if (qhat >= B) {  // normalized divisor keeps the true digit < B
                qhat = B - 1;
                rhat = num - qhat * b[n - 1];
            }
            while (rhat < B && qhat * b[n - 2] > ((rhat << 64) | a[j + n - 2])) {
                --qhat;
                rhat += b[n - 1];
            }
            // multiply-subtract qhat*b from a[j .. j+n]
            unsigned __int128 borrow = 0, carry = 0;
            for (std::size_t i = 0; i < n; ++i) {
                unsigned __int128 p = qhat * b[i] + carry;
                carry = p >> 64;
                std::uint64_t plo = static_cast<std::uint64_t>(p);
                std::uint64_t ai = a[i + j];
                std::uint64_t d = ai - plo;
                std::uint64_t br = ai < plo ? 1 : 0;
                std::uint64_t d2 = d - static_cast<std::uint64_t>(borrow);
                if (d < static_cast<std::uint64_t>(borrow)) br += 1;
                a[i + j] = d2;
                borrow = br;
            }
            unsigned __int128 top = static_cast<unsigned __int128>(a[j + n]) - carry - borrow;
            a[j + n] = static_cast<std::uint64_t>(top);
            if (top >> 127) {  // went negative: add back
                --qhat;
                std::uint64_t c = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    std::uint64_t s = a[i + j] + b[i];
                    std::uint64_t c1 = s < a[i + j] ? 1 : 0;
                    std::uint64_t s2 = s + c;
                    std::uint64_t c2 = s2 < s ? 1 : 0;
                    a[i + j] = s2;
                    c = c1 | c2;
                }
                a[j + n] += c;
            }
            q[j] = static_cast<std::uint64_t>(qhat);
        }
        r.assign(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(n));
        if (shift) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                r[i] >>= shift;
                if (i + 1 < r.size()) r[i] |= r[i + 1] << (64 - shift);
            }
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        while (!q.empty() && q.back() == 0) q.pop_back();
    }
};

inline BigInt operator*(long long a, const BigInt& b) { return BigInt(a) * b; }
inline BigInt operator+(long long a, const BigInt& b) { return BigInt(a) + b; }
inline BigInt operator-(long long a, const BigInt& b) { return BigInt(a) - b; }

}  // namespace oddcf
