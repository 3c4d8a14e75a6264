#include <doctest.h>

#include <oddcf/mat2.hpp>
#include <oddcf/words.hpp>

#include "test_helpers.hpp"

using namespace oddcf;
using oddcf::testing::Rng;

TEST_CASE("generator matrices and hand products") {
    CHECK(mat_R() == Mat2(1, 1, 0, 1));
    CHECK(mat_S() == Mat2(0, 1, 1, 0));
    CHECK(mat_V() == Mat2(-1, 0, 0, 1));
    CHECK(mat_B(1, BigInt(3)) == Mat2(0, 1, 1, 3));
    CHECK(mat_B(-1, BigInt(5)).det() == BigInt(1));  // det B = -eps
    CHECK(mat_B(1, BigInt(7)).det() == BigInt(-1));
    // S R^2 S and V S R^2 S
    Mat2 srrs = mat_S() * mat_R_pow(2) * mat_S();
    CHECK(srrs == Mat2(1, 0, 2, 1));
    CHECK(mat_V() * srrs == Mat2(-1, 0, 2, 1));
    CHECK(Mat2::identity() * srrs == srrs);
}

TEST_CASE("mobius_apply examples") {
    CHECK(scalar_eq(mobius_apply(mat_R(), Scalar(Rational(1, 3))), Scalar(Rational(4, 3))));
    // [[-1,0],[2,1]] applied to -2/5 -> 2
    Mat2 m(-1, 0, 2, 1);
    CHECK(scalar_eq(mobius_apply(m, Scalar(Rational(-2, 5))), Scalar::from_int(2)));
    // S(G) = 1/G = g
    CHECK(scalar_eq(mobius_apply(mat_S(), scalar_G()), scalar_g()));
    CHECK_THROWS_AS(mobius_apply(Mat2(1, 0, 2, 1), Scalar(Rational(-1, 2))), PoleError);
}

TEST_CASE("composition property: apply(m1*m2, z) == apply(m1, apply(m2, z))") {
    Rng rng(1234);
    for (int it = 0; it < 300; ++it) {
        Mat2 m1, m2;
        int k1 = 1 + static_cast<int>(rng.below(10));
        int k2 = 1 + static_cast<int>(rng.below(10));
        for (int i = 0; i < k1; ++i)
            m1 *= mat_B(rng.below(2) ? 1 : -1, BigInt(2 * rng.range(0, 8) + 1));
        for (int i = 0; i < k2; ++i)
            m2 *= mat_B(rng.below(2) ? 1 : -1, BigInt(2 * rng.range(0, 8) + 1));
        CHECK((m1.det() == BigInt(1) || m1.det() == BigInt(-1)));
        Scalar z(testing::random_rational(rng, 50));
        Scalar lhs, rhs;
        bool pole_l = false, pole_r = false;
        try {
            lhs = mobius_apply(m1 * m2, z);
        } catch (const PoleError&) {
            pole_l = true;
        }
        try {
            rhs = mobius_apply(m1, mobius_apply(m2, z));
        } catch (const PoleError&) {
            pole_r = true;
        }
        if (!pole_l && !pole_r) CHECK(scalar_eq(lhs, rhs));
    }
}

TEST_CASE("word text form round-trips") {
    CFWord w = CFWord::from_text("[0; -1,-3,-3,-1]");
    CHECK(w.digits.size() == 4);
    CHECK(w.digits[0] == SignedDigit(-1, 1));
    CHECK(w.digits[1] == SignedDigit(-1, 3));
    CHECK(w.to_text() == "[0; -1,-3,-3,-1]");
    CFWord v = CFWord::from_text("[0; +3]");
    CHECK(v.digits[0] == SignedDigit(1, 3));
    CHECK(v.to_text() == "[0; +3]");
    CHECK_THROWS_AS(CFWord::from_text("[0; 3]"), ParseError);   // sign required
    CHECK_THROWS_AS(CFWord::from_text("[0; +2]"), ParseError);  // odd required
}

TEST_CASE("evaluate against hand values") {
    CFWord w = CFWord::from_text("[0; -1]");
    CHECK(scalar_eq(evaluate(w, Scalar(Rational(-1, 2))), Scalar::from_int(-2)));
    CFWord t = CFWord::from_text("[0; +3]");
    CHECK(scalar_eq(evaluate(t, Scalar::from_int(0)), Scalar(Rational(1, 3))));
    CFWord empty;
    CHECK(scalar_eq(evaluate(empty, Scalar::from_int(0)), Scalar::from_int(0)));
}
