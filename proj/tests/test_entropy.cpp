#include <doctest.h>

#include <cmath>

#include <oddcf/entropy.hpp>

using namespace oddcf;

TEST_CASE("plateau value at alpha = 1 (abridged run)") {
    auto e = entropy_rokhlin(1.0, std::nullopt, 2000000, 1000, 42);
    CHECK(std::fabs(e.h - entropy_plateau()) < 0.02);
    CHECK(e.stderr_value > 0.0);
    CHECK(e.stderr_value < 0.01);
    CHECK(e.method == "rokhlin");
    CHECK_FALSE(e.unproven_regime);
}

TEST_CASE("estimator consistency: rokhlin vs levy on 20 random parameters") {
    detail::SplitMix rng{2024};
    for (int i = 0; i < 20; ++i) {
        double alpha = 0.2 + (kGoldenG - 0.201) * rng.unit();  // (0.2, G)
        auto r = entropy_rokhlin(alpha, std::nullopt, 500000, 1000, 7 + i);
        auto l = entropy_levy(alpha, std::nullopt, 500000, 7 + i);
        double tol = 3.0 * std::sqrt(r.stderr_value * r.stderr_value +
                                     l.stderr_value * l.stderr_value) +
                     2e-4;
        INFO("alpha = ", alpha, " rokhlin = ", r.h, " levy = ", l.h);
        CHECK(std::fabs(r.h - l.h) < tol);
    }
}

TEST_CASE("seeded determinism") {
    auto a = entropy_rokhlin(0.9, std::nullopt, 100000, 1000, 123);
    auto b = entropy_rokhlin(0.9, std::nullopt, 100000, 1000, 123);
    CHECK(a.h == b.h);
    CHECK(a.stderr_value == b.stderr_value);
    auto c = entropy_rokhlin(0.9, std::nullopt, 100000, 1000, 124);
    CHECK(a.h != c.h);
}

TEST_CASE("scan grid: deterministic, flags the unproven regime") {
    auto rows = entropy_scan(0.30, 0.55, 6, 50000, 99);
    REQUIRE(rows.size() == 6);
    CHECK(rows.front().alpha == 0.30);
    CHECK(rows.back().alpha == 0.55);
    CHECK(rows[0].unproven_regime);        // 0.30 < (sqrt13-1)/6
    CHECK_FALSE(rows[5].unproven_regime);  // 0.55 above it
    auto again = entropy_scan(0.30, 0.55, 6, 50000, 99);
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].h == again[i].h);
}

TEST_CASE("rational seed degenerates") {
    CHECK_THROWS_AS(entropy_levy(1.0, 0.5, 100000, 1), OrbitDegenerate);
}

TEST_CASE("plateau flatness over 20 grid points in [0.45, 1.6]") {
    double h_min = 1e9, h_max = -1e9, worst_stderr = 0.0;
    for (int i = 0; i < 20; ++i) {
        double a = 0.45 + (1.60 - 0.45) * i / 19.0;
        auto e = entropy_rokhlin(a, std::nullopt, 1000000, 1000, 1100 + i);
        h_min = std::min(h_min, e.h);
        h_max = std::max(h_max, e.h);
        worst_stderr = std::max(worst_stderr, e.stderr_value);
    }
    CHECK(h_max - h_min <= 4.0 * worst_stderr);
    CHECK(std::fabs(0.5 * (h_max + h_min) - entropy_plateau()) < 0.01);
}

TEST_CASE("the profile on [1/4, 1/3] is genuinely non-constant") {
    double h_min = 1e9, h_max = -1e9, worst_stderr = 0.0;
    for (int i = 0; i < 6; ++i) {
        double a = 0.25 + (1.0 / 3.0 - 0.25) * i / 5.0;
        auto e = entropy_rokhlin(a, std::nullopt, 300000, 1000, 50 + i);
        h_min = std::min(h_min, e.h);
        h_max = std::max(h_max, e.h);
        worst_stderr = std::max(worst_stderr, e.stderr_value);
        CHECK(e.unproven_regime);
    }
    CHECK(h_max - h_min > 20.0 * worst_stderr);       // rises ~0.2 across the window
    CHECK(h_max < entropy_plateau());                 // everywhere below the plateau
}
