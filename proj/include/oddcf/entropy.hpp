#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace oddcf {

/// Monte-Carlo entropy estimation of the odd alpha-continued-fraction map.
///
/// The estimators run hardware-double orbits: estimator noise at the
/// supported iteration counts is orders of magnitude above double rounding,
/// and a pseudo-orbit is as good as an orbit for Birkhoff averages over an
/// ergodic system. Everything is seeded and bit-reproducible.

inline constexpr double kAlphaMin13 = 0.43425854591066487;  // (sqrt13 - 1)/6
inline constexpr double kGoldenG = 1.6180339887498949;

struct EntropyEstimate {
    double alpha = 0.0;
    double h = 0.0;
    double stderr_value = 0.0;
    std::uint64_t n_iters = 0;
    std::uint64_t burn_in = 0;
    std::uint64_t seed = 0;
    std::string method;
    bool unproven_regime = false;  // alpha below (sqrt13-1)/6
};

namespace detail {

struct SplitMix {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// T_alpha in doubles; also reports the digit and sign
inline double t_alpha_double(double alpha, double x, double& digit, double& eps) {
    double ax = std::fabs(x);
    eps = x < 0 ? -1.0 : 1.0;
    digit = 2.0 * std::floor(0.5 / ax + 0.5 * (1.0 - alpha)) + 1.0;
    return 1.0 / ax - digit;
}

/// Default seed draw: uniform over I_alpha away from 0 and from rationals
/// p/q with q <= 8 (their orbits die or linger near cylinder edges).
inline double draw_seed(SplitMix& rng, double alpha) {
    for (;;) {
        double x = alpha - 2.0 + 2.0 * rng.unit();
        if (std::fabs(x) < 1e-6) continue;
        bool near_rational = false;
        for (int q = 1; q <= 8 && !near_rational; ++q) {
            double scaled = x * q;
            if (std::fabs(scaled - std::round(scaled)) < 1e-6 * q) near_rational = true;
        }
        if (!near_rational) return x;
    }
}

struct BatchAccumulator {
    explicit BatchAccumulator(std::uint64_t n, int batches = 100)
        : batch_size(n / static_cast<std::uint64_t>(batches)) {
        if (batch_size == 0) batch_size = 1;
    }
    std::uint64_t batch_size;
    std::uint64_t in_batch = 0;
    double batch_sum = 0.0;
    std::vector<double> means;

    void push(double v) {
        batch_sum += v;
        if (++in_batch == batch_size) {
            means.push_back(batch_sum / static_cast<double>(batch_size));
            batch_sum = 0.0;
            in_batch = 0;
        }
    }
    double mean() const {
        double s = 0.0;
        for (double m : means) s += m;
        return s / static_cast<double>(means.size());
    }
    double stderr_of_mean() const {
        if (means.size() < 2) return 0.0;
        double m = mean(), ss = 0.0;
        for (double v : means) ss += (v - m) * (v - m);
        return std::sqrt(ss / (static_cast<double>(means.size()) *
                               static_cast<double>(means.size() - 1)));
    }
};

}  // namespace detail

/// Birkhoff average of log|T'| = -2 log|x| along the orbit.
inline EntropyEstimate entropy_rokhlin(double alpha, std::optional<double> x0,
                                       std::uint64_t n_iters, std::uint64_t burn_in,
                                       std::uint64_t seed) {
    if (!(alpha > 0.0) || alpha > kGoldenG + 1e-15)
        throw UnsupportedAlpha("entropy: alpha out of (0, G]");
    detail::SplitMix rng{seed ^ 0x6f4a9d3c2b1e5870ULL};
    double x = x0 ? *x0 : detail::draw_seed(rng, alpha);
    detail::BatchAccumulator acc(n_iters);
    double digit = 0.0, eps = 0.0;
    for (std::uint64_t i = 0; i < burn_in + n_iters; ++i) {
        if (x == 0.0)
            throw OrbitDegenerate("entropy_rokhlin: orbit hit 0 after " + std::to_string(i) +
                                  " steps");
        if (i >= burn_in) acc.push(-2.0 * std::log(std::fabs(x)));
        x = detail::t_alpha_double(alpha, x, digit, eps);
    }
    EntropyEstimate e;
    e.alpha = alpha;
    e.h = acc.mean();
    e.stderr_value = acc.stderr_of_mean();
    e.n_iters = n_iters;
    e.burn_in = burn_in;
    e.seed = seed;
    e.method = "rokhlin";
    e.unproven_regime = alpha < kAlphaMin13;
    return e;
}

/// Levy-constant estimator h ~ (2/n) log q_n, accumulated through the
/// bounded ratio r = q_{n-1}/q_n (never the huge integers themselves).
inline EntropyEstimate entropy_levy(double alpha, std::optional<double> x0,
                                    std::uint64_t n_iters, std::uint64_t seed) {
    if (!(alpha > 0.0) || alpha > kGoldenG + 1e-15)
        throw UnsupportedAlpha("entropy: alpha out of (0, G]");
    detail::SplitMix rng{seed ^ 0x23c5f0a18e9d47b6ULL};
    double x = x0 ? *x0 : detail::draw_seed(rng, alpha);
    detail::BatchAccumulator acc(n_iters);
    double r = 0.0;  // q_{n-1}/q_n
    double digit = 0.0, eps = 0.0;
    for (std::uint64_t i = 0; i < n_iters; ++i) {
        if (x == 0.0)
            throw OrbitDegenerate("entropy_levy: orbit hit 0 after " + std::to_string(i) +
                                  " steps");
        x = detail::t_alpha_double(alpha, x, digit, eps);
        double growth = digit + eps * r;  // q_n / q_{n-1}
        acc.push(2.0 * std::log(growth));
        r = 1.0 / growth;
    }
    EntropyEstimate e;
    e.alpha = alpha;
    e.h = acc.mean();
    e.stderr_value = acc.stderr_of_mean();
    e.n_iters = n_iters;
    e.burn_in = 0;
    e.seed = seed;
    e.method = "levy";
    e.unproven_regime = alpha < kAlphaMin13;
    return e;
}

/// Independent estimates over an inclusive parameter grid; deterministic
/// per-point seeds derived from (seed, index).
inline std::vector<EntropyEstimate> entropy_scan(double alpha_lo, double alpha_hi, int steps,
                                                 std::uint64_t n_iters, std::uint64_t seed,
                                                 const std::string& method = "rokhlin",
                                                 std::uint64_t burn_in = 1000) {
    if (steps < 1) throw Error("entropy_scan: steps >= 1 required");
    std::vector<EntropyEstimate> out;
    out.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        double a = steps == 1
                       ? alpha_lo
                       : alpha_lo + (alpha_hi - alpha_lo) * static_cast<double>(i) /
                                        static_cast<double>(steps - 1);
        detail::SplitMix mix{seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(i + 1))};
        std::uint64_t point_seed = mix.next();
        out.push_back(method == "levy"
                          ? entropy_levy(a, std::nullopt, n_iters, point_seed)
                          : entropy_rokhlin(a, std::nullopt, n_iters, burn_in, point_seed));
    }
    return out;
}

/// pi^2 / (9 log G): the plateau value on [(sqrt13-1)/6, G].
inline double entropy_plateau() {
    return M_PI * M_PI / (9.0 * std::log(kGoldenG));
}

}  // namespace oddcf
