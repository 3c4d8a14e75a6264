#include <doctest.h>

#include <oddcf/bigfloat.hpp>
#include <oddcf/bigint.hpp>
#include <oddcf/quad.hpp>
#include <oddcf/rational.hpp>

#include "test_helpers.hpp"

using namespace oddcf;
using oddcf::testing::Rng;

TEST_CASE("BigInt round-trips and small arithmetic agree with int64") {
    Rng rng(42);
    for (int i = 0; i < 2000; ++i) {
        long long a = rng.range(-1000000000LL, 1000000000LL);
        long long b = rng.range(-1000000000LL, 1000000000LL);
        BigInt A(a), B(b);
        CHECK((A + B).to_int64() == a + b);
        CHECK((A - B).to_int64() == a - b);
        CHECK((A * B) == BigInt(a * b));
        if (b != 0) {
            CHECK((A / B).to_int64() == a / b);
            CHECK((A % B).to_int64() == a % b);
        }
        CHECK(BigInt::from_string(A.to_string()) == A);
    }
}

TEST_CASE("BigInt wide division identity q*b + r == a") {
    Rng rng(7);
    for (int i = 0; i < 400; ++i) {
        BigInt a(1), b(1);
        int la = static_cast<int>(rng.below(6)) + 1, lb = static_cast<int>(rng.below(4)) + 1;
        for (int k = 0; k < la; ++k) a = a * BigInt(rng.next() | 1ULL) + BigInt(rng.next() & 0xffff);
        for (int k = 0; k < lb; ++k) b = b * BigInt(rng.next() | 1ULL) + BigInt(rng.next() & 0xffff);
        if (rng.below(2)) a = -a;
        if (rng.below(2)) b = -b;
        BigInt q, r;
        divmod(a, b, q, r);
        CHECK(q * b + r == a);
        CHECK(cmp(r.abs(), b.abs()) < 0);
        if (!r.is_zero()) CHECK(r.sign() == a.sign());
    }
}

TEST_CASE("BigInt shifts, gcd, isqrt") {
    BigInt one(1);
    CHECK(((one << 200) >> 200) == one);
    CHECK((BigInt(12) << 3) == BigInt(96));
    CHECK(gcd(BigInt(48), BigInt(-36)) == BigInt(12));
    CHECK(gcd(BigInt(0), BigInt(-7)) == BigInt(7));
    BigInt n = (BigInt(1) << 130) + BigInt(12345);
    BigInt r = isqrt(n);
    CHECK(r * r <= n);
    CHECK((r + BigInt(1)) * (r + BigInt(1)) > n);
    CHECK(isqrt(BigInt(143)) == BigInt(11));
    CHECK(isqrt(BigInt(144)) == BigInt(12));
}

TEST_CASE("BigInt decimal strings on large values") {
    BigInt a = BigInt::from_string("123456789012345678901234567890123456789");
    BigInt b = BigInt::from_string("-987654321098765432109876543210");
    CHECK(a.to_string() == "123456789012345678901234567890123456789");
    CHECK((a * b).to_string() ==
          "-121932631137021795226185032733744855963362292333223746380111126352690");
}

TEST_CASE("Rational canonical form and ordering") {
    CHECK(Rational(2, -4).to_string() == "-1/2");
    CHECK(Rational(6, 3).to_string() == "2");
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(-5, 3).floor() == BigInt(-2));
    CHECK(Rational(5, 3).floor() == BigInt(1));
    CHECK(Rational(-6, 3).floor() == BigInt(-2));
    CHECK(cmp(Rational(22, 7), Rational(355, 113)) > 0);
    CHECK(doctest::Approx(Rational(-5, 3).to_double()) == -5.0 / 3.0);
}

TEST_CASE("QuadExt golden-mean identities") {
    const QuadExt& g = golden_g();
    const QuadExt& G = golden_G();
    CHECK(g * G == QuadExt(1, 0, 1, 5));        // g*G = 1
    CHECK(g + QuadExt(1, 0, 1, 5) == G);        // G = g+1
    CHECK(g * g == QuadExt(3, -1, 2, 5));       // g^2 = 1-g = (3-sqrt5)/2
    CHECK((g * g + g) == QuadExt(1, 0, 1, 5));  // g^2 + g = 1
    CHECK(g.recip() == G);
    CHECK(g.sign() == 1);
    CHECK((-g).sign() == -1);
    CHECK(g.floor() == BigInt(0));
    CHECK(G.floor() == BigInt(1));
    CHECK((G * G * G).floor() == BigInt(4));  // G^3 = 2G+1 ~ 4.236
    CHECK(cmp(g, Rational(61, 100)) > 0);
    CHECK(cmp(g, Rational(62, 100)) < 0);
}

TEST_CASE("QuadExt demotion and sqrt13 values") {
    QuadExt x(2, 0, 4, 13);
    CHECK(x.is_rational());
    CHECK(x.rational_part() == Rational(1, 2));
    const QuadExt& a13 = alpha_min13();
    CHECK(a13.floor() == BigInt(0));
    CHECK(a13.sign() == 1);
    // (sqrt13-1)/6 ~ 0.434259
    CHECK(cmp(a13, Rational(43, 100)) > 0);
    CHECK(cmp(a13, Rational(44, 100)) < 0);
}

TEST_CASE("BigFloat basics: exact dyadics, rounding, floors") {
    BigFloat half = BigFloat::from_rational(Rational(1, 2), 64);
    CHECK(half.to_rational() == Rational(1, 2));
    CHECK(half.is_integer() == false);
    CHECK(half.floor() == BigInt(0));
    BigFloat x = BigFloat::from_rational(Rational(1, 3), 128);
    // |x - 1/3| <= 2^-128 scale
    Rational err = x.to_rational() - Rational(1, 3);
    Rational bound(BigInt(1), BigInt(1) << 125);
    CHECK(cmp(err.sign() < 0 ? -err : err, bound) < 0);
    BigFloat minus = BigFloat::from_rational(Rational(-7, 2), 64);
    CHECK(minus.floor() == BigInt(-4));
    CHECK(BigFloat(5, 32).floor() == BigInt(5));
}

TEST_CASE("BigFloat arithmetic error stays within a few ulps") {
    Rng rng(99);
    for (int i = 0; i < 200; ++i) {
        Rational a = testing::random_rational(rng, 1000);
        Rational b = testing::random_rational(rng, 1000);
        if (b.is_zero()) continue;
        int prec = 192;
        BigFloat fa = BigFloat::from_rational(a, prec);
        BigFloat fb = BigFloat::from_rational(b, prec);
        Rational exact[3] = {a + b, a * b, a / b};
        BigFloat approx[3] = {add(fa, fb, prec), mul(fa, fb, prec), div(fa, fb, prec)};
        for (int k = 0; k < 3; ++k) {
            Rational diff = approx[k].to_rational() - exact[k];
            if (diff.sign() < 0) diff = -diff;
            Rational mag = exact[k].sign() < 0 ? -exact[k] : exact[k];
            Rational bound = (mag + Rational(1)) / Rational(BigInt(1) << 180);
            CHECK(cmp(diff, bound) < 0);
        }
    }
}

TEST_CASE("BigFloat from_quad matches known digits of g") {
    BigFloat fg = BigFloat::from_quad(golden_g(), 256);
    // g = 0.6180339887498948482...
    std::string dec = fg.to_decimal(20);
    CHECK(dec.substr(0, 21) == "0.6180339887498948482");
    // exact comparison with the quad it came from brackets within 2^-250
    Rational lo = fg.to_rational() - Rational(BigInt(1), BigInt(1) << 250);
    Rational hi = fg.to_rational() + Rational(BigInt(1), BigInt(1) << 250);
    CHECK(cmp(golden_g(), lo) > 0);
    CHECK(cmp(golden_g(), hi) < 0);
}

TEST_CASE("BigFloat decimal rendering") {
    BigFloat q = BigFloat::from_rational(Rational(1, 4), 64);
    CHECK(q.to_decimal(3) == "0.250");
    BigFloat big = BigFloat::from_rational(Rational(12345, 1), 64);
    CHECK(big.to_decimal(5) == "12345");
}
