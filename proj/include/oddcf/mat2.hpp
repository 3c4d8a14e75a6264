#pragma once

#include <string>
#include <utility>

#include "bigint.hpp"
#include "errors.hpp"
#include "scalar.hpp"

namespace oddcf {

/// 2x2 integer matrix acting as a Moebius transformation
/// z -> (e1 z + e2)/(e3 z + e4). Row-major entries.
struct Mat2 {
    BigInt e1, e2, e3, e4;

    Mat2() : e1(1), e2(0), e3(0), e4(1) {}
    Mat2(BigInt a, BigInt b, BigInt c, BigInt d)
        : e1(std::move(a)), e2(std::move(b)), e3(std::move(c)), e4(std::move(d)) {}
    Mat2(long long a, long long b, long long c, long long d) : e1(a), e2(b), e3(c), e4(d) {}

    static Mat2 identity() { return Mat2(); }

    BigInt det() const { return e1 * e4 - e2 * e3; }

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return Mat2(x.e1 * y.e1 + x.e2 * y.e3, x.e1 * y.e2 + x.e2 * y.e4,
                    x.e3 * y.e1 + x.e4 * y.e3, x.e3 * y.e2 + x.e4 * y.e4);
    }
    Mat2& operator*=(const Mat2& y) { return *this = *this * y; }

    friend bool operator==(const Mat2& x, const Mat2& y) {
        return x.e1 == y.e1 && x.e2 == y.e2 && x.e3 == y.e3 && x.e4 == y.e4;
    }
    friend bool operator!=(const Mat2& x, const Mat2& y) { return !(x == y); }

    /// Equal as Moebius maps: m == n or m == -n.
    friend bool same_action(const Mat2& x, const Mat2& y) {
        return x == y || (x.e1 == -y.e1 && x.e2 == -y.e2 && x.e3 == -y.e3 && x.e4 == -y.e4);
    }

    std::string to_string() const {
        return "[[" + e1.to_string() + "," + e2.to_string() + "],[" + e3.to_string() + "," +
               e4.to_string() + "]]";
    }
};

// The SL2(Z) generators used throughout: R = shift, S = inversion, V = x-flip,
// and the digit matrix B_{eps,d} realizing z -> eps/(z + d).
inline Mat2 mat_R() { return Mat2(1, 1, 0, 1); }
inline Mat2 mat_S() { return Mat2(0, 1, 1, 0); }
inline Mat2 mat_V() { return Mat2(-1, 0, 0, 1); }
inline Mat2 mat_B(int eps, const BigInt& d) { return Mat2(BigInt(0), BigInt(eps), BigInt(1), d); }
inline Mat2 mat_R_pow(long long k) {
    return Mat2(BigInt(1), BigInt(k), BigInt(0), BigInt(1));
}

inline Mat2 mat_mul(const Mat2& a, const Mat2& b) { return a * b; }

inline Scalar mobius_apply(const Mat2& m, const Scalar& z) {
    Scalar den = add(mul(Scalar(Rational(m.e3)), z), Scalar(Rational(m.e4)));
    if (den.is_zero()) throw PoleError("mobius_apply: denominator vanished");
    Scalar num = add(mul(Scalar(Rational(m.e1)), z), Scalar(Rational(m.e2)));
    return div(num, den);
}

}  // namespace oddcf
