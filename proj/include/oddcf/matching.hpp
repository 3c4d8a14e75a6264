#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cf.hpp"
#include "errors.hpp"
#include "mat2.hpp"
#include "scalar.hpp"
#include "words.hpp"

namespace oddcf {

/// Matching analysis: detection of T_alpha^N(alpha) = T_alpha^M(alpha-2),
/// the four rational families with their exponent formulas, digit tables,
/// matrix identities, and the neighborhood transfer.

enum class MatchKind { exact_zero_hit, numeric_collision };
enum class Monotonicity { Increasing, Constant, Decreasing };

inline const char* to_string(MatchKind k) {
    return k == MatchKind::exact_zero_hit ? "exact_zero_hit" : "numeric_collision";
}
inline const char* to_string(Monotonicity m) {
    switch (m) {
        case Monotonicity::Increasing: return "Increasing";
        case Monotonicity::Constant: return "Constant";
        default: return "Decreasing";
    }
}

struct MatchReport {
    Scalar alpha;
    bool matched = false;
    std::uint64_t N = 0;
    std::uint64_t M = 0;
    long long delta = 0;  // N - M
    MatchKind kind = MatchKind::exact_zero_hit;
    Monotonicity classification = Monotonicity::Constant;
};

inline Monotonicity classify(long long delta) {
    if (delta < 0) return Monotonicity::Increasing;
    if (delta > 0) return Monotonicity::Decreasing;
    return Monotonicity::Constant;
}

/// a_n = 1/n, b_n = (2n+1)/(2n^2+2n+1), c_n = (5n-1)/(n(5n-1)+5),
/// d_n = n/(n^2+1); interleaved a_{n+1} < b_n < c_n < d_n < a_n.
inline Rational seq_abcd(char family, long long n) {
    if (n < 3) throw Error("seq_abcd: n >= 3 required");
    switch (family) {
        case 'a': return Rational(1, n);
        case 'b': return Rational(2 * n + 1, 2 * n * n + 2 * n + 1);
        case 'c': return Rational(5 * n - 1, n * (5 * n - 1) + 5);
        case 'd': return Rational(n, n * n + 1);
        default: throw Error("seq_abcd: family must be one of a, b, c, d");
    }
}

inline constexpr std::uint64_t kMatchingStepGuard = 1000000;

/// Exact matching exponents of a rational parameter: minimal (N, M), N
/// first, over all collisions of the orbits of alpha and alpha-2. Both
/// orbits terminate at 0, so a match always exists (the zero-hit).
inline MatchReport find_matching_exact(const Rational& alpha_rat) {
    AlphaParam alpha{Scalar(alpha_rat)};
    auto run = [&](const Scalar& x0) {
        std::vector<Scalar> pts;
        pts.push_back(x0);
        Scalar x = x0;
        for (std::uint64_t i = 0; i < kMatchingStepGuard; ++i) {
            if (x.is_zero()) return pts;
            x = step(alpha, x);
            pts.push_back(x);
        }
        throw NonTerminatingGuard("find_matching_exact: orbit exceeded step guard");
    };
    std::vector<Scalar> xs = run(alpha.value());
    std::vector<Scalar> ys = run(alpha.lower());
    MatchReport rep;
    rep.alpha = alpha.value();
    for (std::size_t i = 0; i < xs.size() && !rep.matched; ++i)
        for (std::size_t j = 0; j < ys.size(); ++j)
            if (scalar_eq(xs[i], ys[j])) {
                rep.matched = true;
                rep.N = i;
                rep.M = j;
                rep.kind = xs[i].is_zero() ? MatchKind::exact_zero_hit
                                           : MatchKind::numeric_collision;
                break;
            }
    rep.delta = static_cast<long long>(rep.N) - static_cast<long long>(rep.M);
    rep.classification = classify(rep.delta);
    return rep;
}

/// Closed-form matching exponents of the four families.
inline std::pair<std::uint64_t, std::uint64_t> prop41_exponents(char family, long long n) {
    bool odd = (n % 2) != 0;
    auto u = [](long long v) { return static_cast<std::uint64_t>(v); };
    switch (family) {
        case 'a':
            return odd ? std::pair{u(1), u(3 * (n - 1) / 2 + 1)}
                       : std::pair{u(2), u(3 * (n - 2) / 2 + 2)};
        case 'b': {
            long long k = odd ? 3 * (n + 1) / 2 + 1 : 3 * n / 2 + 1;
            return {u(k), u(k)};
        }
        case 'c':
            return odd ? std::pair{u(3 * (n - 1) / 2 + 6), u(3 * (n - 1) / 2 + 3)}
                       : std::pair{u(3 * n / 2 + 4), u(3 * n / 2 + 1)};
        case 'd': {
            long long k = odd ? 3 * (n - 1) / 2 + 2 : 3 * n / 2;
            return {u(k), u(k)};
        }
        default: throw Error("prop41_exponents: bad family");
    }
}

struct Prop41Row {
    char family;
    long long n;
    std::uint64_t expect_N, expect_M, got_N, got_M;
    bool pass;
};

inline std::vector<Prop41Row> verify_prop41(long long n_min, long long n_max) {
    if (n_min < 3 || n_max < n_min) throw Error("verify_prop41: need 3 <= n_min <= n_max");
    std::vector<Prop41Row> rows;
    for (char f : {'a', 'b', 'c', 'd'})
        for (long long n = n_min; n <= n_max; ++n) {
            auto [eN, eM] = prop41_exponents(f, n);
            MatchReport rep = find_matching_exact(seq_abcd(f, n));
            rows.push_back({f, n, eN, eM, rep.N, rep.M,
                            rep.matched && rep.kind == MatchKind::exact_zero_hit &&
                                rep.N == eN && rep.M == eM});
        }
    return rows;
}

namespace detail {

inline void append_block(std::vector<SignedDigit>& out, long long reps,
                         std::initializer_list<long long> block) {
    for (long long r = 0; r < reps; ++r)
        for (long long a : block) out.emplace_back(1, a);  // signs fixed afterwards
}

inline CFWord with_signs(std::vector<SignedDigit> digits, bool first_positive) {
    CFWord w;
    w.terminated = true;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        int eps = (i == 0 && first_positive) ? 1 : -1;
        w.digits.emplace_back(eps, digits[i].a);
    }
    return w;
}

}  // namespace detail

/// Closed-form digit strings of the expansions of alpha and alpha - 2 for
/// the four families (eps_1(alpha) = +1, all other signs -1).
inline std::pair<CFWord, CFWord> table1_expected(char family, long long n) {
    using detail::append_block;
    bool odd = (n % 2) != 0;
    std::vector<SignedDigit> a, a2;
    auto push = [](std::vector<SignedDigit>& v, std::initializer_list<long long> xs) {
        for (long long x : xs) v.emplace_back(1, x);
    };
    switch (family) {
        case 'a':
            if (odd) {
                push(a, {n});
                append_block(a2, (n - 1) / 2, {1, 3, 3});
                push(a2, {1});
            } else {
                push(a, {n + 1, 1});
                append_block(a2, (n - 2) / 2, {1, 3, 3});
                push(a2, {1, 3});
            }
            break;
        case 'b':
            if (odd) {
                push(a, {n + 2, 1, 5});
                append_block(a, (n - 1) / 2, {1, 3, 3});
                push(a, {1});
                append_block(a2, (n - 1) / 2, {1, 3, 3});
                push(a2, {1, 5, 1, n + 2});
            } else {
                push(a, {n + 1});
                append_block(a, n / 2, {3, 3, 1});
                append_block(a2, n / 2, {1, 3, 3});
                push(a2, {n + 1});
            }
            break;
        case 'c':
            if (odd) {
                push(a, {n + 2});
                append_block(a, (n - 1) / 2, {1, 3, 3});
                push(a, {3, 1, 3, 3, 1});
                append_block(a2, (n - 1) / 2, {1, 3, 3});
                push(a2, {1, n + 2, 5});
            } else {
                push(a, {n + 1, 3});
                append_block(a, (n - 2) / 2, {1, 3, 3});
                push(a, {3, 1, 3, 3, 1});
                append_block(a2, (n - 2) / 2, {1, 3, 3});
                push(a2, {1, 3, n + 1, 5});
            }
            break;
        case 'd':
            if (odd) {
                push(a, {n + 2});
                append_block(a, (n - 1) / 2, {1, 3, 3});
                push(a, {1});
                append_block(a2, (n - 1) / 2, {1, 3, 3});
                push(a2, {1, n + 2});
            } else {
                push(a, {n + 1, 3});
                append_block(a, (n - 2) / 2, {1, 3, 3});
                push(a, {1});
                append_block(a2, (n - 2) / 2, {1, 3, 3});
                push(a2, {1, 3, n + 1});
            }
            break;
        default: throw Error("table1_expected: bad family");
    }
    return {detail::with_signs(std::move(a), true), detail::with_signs(std::move(a2), false)};
}

struct Table1Check {
    bool pass = false;
    std::string diff;  // empty when pass
};

inline Table1Check verify_table1(char family, long long n) {
    Rational alpha_rat = seq_abcd(family, n);
    AlphaParam alpha{Scalar(alpha_rat)};
    auto [expect_a, expect_a2] = table1_expected(family, n);
    CFWord got_a = expand(alpha, alpha.value());
    CFWord got_a2 = expand(alpha, alpha.lower());
    Table1Check c;
    c.pass = got_a.terminated && got_a2.terminated && got_a.digits == expect_a.digits &&
             got_a2.digits == expect_a2.digits;
    if (!c.pass)
        c.diff = "alpha: expected " + expect_a.to_text() + " got " + got_a.to_text() +
                 "; alpha-2: expected " + expect_a2.to_text() + " got " + got_a2.to_text();
    return c;
}

/// M_{alpha,x,n}: product of the first n digit matrices of x's expansion;
/// equals [[p_{n-1}, p_n], [q_{n-1}, q_n]].
inline Mat2 build_M_matrix(const AlphaParam& alpha, const Scalar& x, std::size_t n) {
    if (n == 0) return Mat2::identity();
    CFWord w = expand(alpha, x, n);
    if (w.digits.size() < n)
        throw DomainError("build_M_matrix: orbit terminated before n digits");
    return word_matrix(w, n);
}

/// Table 2: the two convergent matrices at the matching exponents, as
/// closed forms in n.
inline std::pair<Mat2, Mat2> table2_expected(char family, long long n) {
    bool odd = (n % 2) != 0;
    auto B = [](long long a, long long b, long long c, long long d) { return Mat2(a, b, c, d); };
    switch (family) {
        case 'a':
            return odd ? std::pair{B(0, 1, 1, n), B(4 - 4 * n, 1 - 2 * n, 2 * n - 1, n)}
                       : std::pair{B(1, 1, n + 1, n), B(3 - 2 * n, 1 - 2 * n, n - 1, n)};
        case 'b':
            return {B(4 * n, 2 * n + 1, 4 * n * n + 2 * n + 1, 2 * n * n + 2 * n + 1),
                    B(-4 * n, -4 * n * n - 2 * n - 1, 2 * n + 1, 2 * n * n + 2 * n + 1)};
        case 'c':
            return {B(9 * n - 2, 5 * n - 1, 9 * n * n - 2 * n + 9, n * (5 * n - 1) + 5),
                    B(-2 * n * n + n - 2, 7 * n - 10 * n * n - 11, n * n + 1,
                      n * (5 * n - 1) + 5)};
        case 'd':
            return {B(2 * n - 1, n, 2 * n * n - n + 2, n * n + 1),
                    B(1 - 2 * n, n - 2 * n * n - 2, n, n * n + 1)};
        default: throw Error("table2_expected: bad family");
    }
}

/// Lemma identity M_{a,a,N} = R^2 M_{a,a-2,M} V S R^2 S as exact integers.
inline bool verify_alg2(const Rational& alpha_rat) {
    MatchReport rep = find_matching_exact(alpha_rat);
    if (!rep.matched || rep.kind != MatchKind::exact_zero_hit) return false;
    AlphaParam alpha{Scalar(alpha_rat)};
    Mat2 lhs = build_M_matrix(alpha, alpha.value(), rep.N);
    Mat2 rhs = mat_R_pow(2) * build_M_matrix(alpha, alpha.lower(), rep.M) * mat_V() * mat_S() *
               mat_R_pow(2) * mat_S();
    return lhs == rhs;
}

struct Alg1Report {
    bool pass = false;
    std::uint64_t N1 = 0, M1 = 0;  // the transferred exponents (N+1, M+1)
    int samples_checked = 0;
    int shrinks = 0;
    Rational delta_used;
    std::string failure;
};

/// Lemma transfer: points x near a family alpha match with exponents
/// (N+1, M+1) and satisfy M_{x,x,N+1} = R^2 M_{x,x-2,M+1}. Samples are
/// exact rationals x = alpha +- delta (plus interior points); delta is
/// auto-shrunk until the digit prefixes agree with alpha's.
inline Alg1Report verify_alg1_neighborhood(const Rational& alpha_rat, const Rational& delta0,
                                           int samples, int precision_bits = 256) {
    Alg1Report out;
    if (!verify_alg2(alpha_rat)) {
        out.failure = "alg2 precondition failed";
        return out;
    }
    MatchReport rep = find_matching_exact(alpha_rat);
    AlphaParam alpha{Scalar(alpha_rat)};
    CFWord head_a = expand(alpha, alpha.value(), rep.N);
    CFWord head_a2 = expand(alpha, alpha.lower(), rep.M);
    out.N1 = rep.N + 1;
    out.M1 = rep.M + 1;

    Rational delta = delta0;
    for (int shrink = 0; shrink <= 20; ++shrink, delta = delta / Rational(16)) {
        out.shrinks = shrink;
        out.delta_used = delta;
        out.samples_checked = 0;
        bool prefix_ok = true;
        for (int s = 0; s < samples && prefix_ok; ++s) {
            // samples on both sides, shrinking toward alpha: +-delta/(s+1)
            Rational off = delta / Rational(s + 1);
            Rational x_rat = (s % 2 == 0) ? alpha_rat + off : alpha_rat - off;
            AlphaParam xp{Scalar(x_rat)};
            Scalar x = xp.value();
            Scalar x2 = xp.lower();
            CFWord wx = expand(xp, x, rep.N);
            CFWord wx2 = expand(xp, x2, rep.M);
            if (wx.digits.size() < rep.N || wx2.digits.size() < rep.M ||
                !std::equal(head_a.digits.begin(), head_a.digits.end(), wx.digits.begin()) ||
                !std::equal(head_a2.digits.begin(), head_a2.digits.end(), wx2.digits.begin())) {
                prefix_ok = false;
                break;
            }
            // exact transfer: T_x^{N+1}(x) == T_x^{M+1}(x-2)
            Scalar tx = x, tx2 = x2;
            for (std::uint64_t k = 0; k < rep.N + 1; ++k) tx = step(xp, tx);
            for (std::uint64_t k = 0; k < rep.M + 1; ++k) tx2 = step(xp, tx2);
            if (!scalar_eq(tx, tx2)) {
                out.failure = "transfer equality failed at x = " + x_rat.to_string();
                return out;
            }
            Mat2 lhs = build_M_matrix(xp, x, rep.N + 1);
            Mat2 rhs = mat_R_pow(2) * build_M_matrix(xp, x2, rep.M + 1);
            if (!(lhs == rhs)) {
                out.failure = "matrix identity failed at x = " + x_rat.to_string();
                return out;
            }
            // high-precision float replica of the same sample: digit strings
            // are exact over dyadics, the transfer holds within 2^(-prec/2)
            try {
                AlphaParam xf{Scalar(BigFloat::from_rational(x_rat, precision_bits))};
                Scalar fx = xf.value(), fx2 = xf.lower();
                for (std::uint64_t k = 0; k < rep.N + 1; ++k) fx = step(xf, fx);
                for (std::uint64_t k = 0; k < rep.M + 1; ++k) fx2 = step(xf, fx2);
                BigFloat fdiff = sub_exact(fx.flt(), fx2.flt());
                if (!fdiff.is_zero() &&
                    detail::float_mag_exp(fdiff) >= -(precision_bits / 2)) {
                    out.failure = "float transfer exceeded tolerance at x = " + x_rat.to_string();
                    return out;
                }
                Mat2 flhs = build_M_matrix(xf, xf.value(), rep.N + 1);
                Mat2 frhs = mat_R_pow(2) * build_M_matrix(xf, xf.lower(), rep.M + 1);
                if (!(flhs == frhs)) {
                    out.failure = "float matrix identity failed at x = " + x_rat.to_string();
                    return out;
                }
            } catch (const UncertainFloor&) {
                // the float replica straddled a cylinder edge; rational leg stands
            }
            ++out.samples_checked;
        }
        if (prefix_ok) {
            out.pass = true;
            return out;
        }
    }
    throw NeighborhoodTooWide("verify_alg1_neighborhood: digit prefixes never stabilized");
}

/// Grid scan for matching. Exact grid points (rationals, quads) use exact
/// collision detection; float points use high-precision orbits with the
/// |difference| < tol test certified by 10 further identical digits.
inline std::vector<MatchReport> scan_matching(const Scalar& lo, const Scalar& hi, int steps,
                                              std::uint64_t max_iter, double tol,
                                              int precision_bits) {
    std::vector<MatchReport> out;
    out.reserve(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) {
        Scalar a = steps == 1 ? lo
                              : add(lo, div(mul_int(sub(hi, lo), k), Scalar::from_int(steps - 1)));
        MatchReport rep;
        rep.alpha = a;
        if (a.is_rat()) {
            MatchReport exact = find_matching_exact(a.rat());
            if (exact.matched && exact.N <= max_iter && exact.M <= max_iter)
                rep = exact;
            else
                rep.matched = false;
        } else {
            // exact quads and floats: bounded two-orbit collision search
            AlphaParam alpha{a};
            std::vector<Scalar> xs{a}, ys{alpha.lower()};
            bool aborted = false;
            try {
                for (std::uint64_t i = 0; i < max_iter && !xs.back().is_zero(); ++i)
                    xs.push_back(step(alpha, xs.back()));
                for (std::uint64_t i = 0; i < max_iter && !ys.back().is_zero(); ++i)
                    ys.push_back(step(alpha, ys.back()));
            } catch (const PrecisionExhausted&) {
                aborted = true;
            } catch (const UncertainFloor&) {
                aborted = true;
            }
            auto close = [&](const Scalar& u, const Scalar& v) {
                if (u.is_exact() && v.is_exact()) return scalar_eq(u, v);
                // exact dyadic difference; compare binary magnitudes with tol
                BigFloat diff = sub_exact(to_float(u, precision_bits), to_float(v, precision_bits));
                if (diff.is_zero()) return true;
                return detail::float_mag_exp(diff) <= std::ilogb(tol);
            };
            // 10 subsequent identical digits certify the collision; a float
            // orbit shadowing a terminating rational may run out of certifiable
            // digits early (precision guard), in which case both orbits must
            // agree on every digit they produced
            auto partial_digits = [&](const Scalar& start) {
                std::vector<SignedDigit> ds;
                Scalar x = start;
                try {
                    for (int k = 0; k < 10 && !x.is_zero(); ++k) {
                        detail::check_float_orbit_guard(x);
                        ds.push_back(digit(alpha, x));
                        x = step(alpha, x);
                    }
                } catch (const PrecisionExhausted&) {
                } catch (const UncertainFloor&) {
                }
                return ds;
            };
            auto digits_agree = [&](const Scalar& u, const Scalar& v) {
                if (u.is_exact() && v.is_exact()) return true;
                std::vector<SignedDigit> du = partial_digits(u), dv = partial_digits(v);
                std::size_t n = std::min(du.size(), dv.size());
                if (n == 0) return u.is_zero() == v.is_zero();
                for (std::size_t k = 0; k < n; ++k)
                    if (!(du[k] == dv[k])) return false;
                return true;
            };
            if (!aborted) {
                for (std::size_t i = 0; i < xs.size() && !rep.matched; ++i)
                    for (std::size_t j = 0; j < ys.size(); ++j)
                        if (close(xs[i], ys[j]) && digits_agree(xs[i], ys[j])) {
                            rep.matched = true;
                            rep.N = i;
                            rep.M = j;
                            rep.kind = xs[i].is_zero() && ys[j].is_zero()
                                           ? MatchKind::exact_zero_hit
                                           : MatchKind::numeric_collision;
                            break;
                        }
            }
        }
        rep.delta = static_cast<long long>(rep.N) - static_cast<long long>(rep.M);
        rep.classification = classify(rep.delta);
        out.push_back(std::move(rep));
    }
    (void)precision_bits;
    return out;
}

/// Empirically detected stability interval around a family point: the
/// maximal dyadic-probed interval whose rationals match with exponents
/// (N+1, M+1). Experimental; probes are exact.
struct MatchingInterval {
    Rational lo, hi;
    std::uint64_t N1 = 0, M1 = 0;
};

inline MatchingInterval detect_matching_interval(const Rational& alpha_rat, int refine_bits = 40) {
    MatchReport base = find_matching_exact(alpha_rat);
    std::uint64_t N1 = base.N + 1, M1 = base.M + 1;
    auto probe = [&](const Rational& x) {
        if (x.sign() <= 0 || cmp(x, Rational(1)) >= 0) return false;
        MatchReport r = find_matching_exact(x);
        return r.matched && r.N == N1 && r.M == M1;
    };
    auto search = [&](int dir) {
        Rational step_out(1, 64);
        // find an excluded offset
        while (probe(alpha_rat + Rational(dir) * step_out) && cmp(step_out, Rational(1)) < 0)
            step_out = step_out * Rational(2);
        Rational in(0), out = step_out;
        for (int i = 0; i < refine_bits; ++i) {
            Rational mid = (in + out) / Rational(2);
            if (probe(alpha_rat + Rational(dir) * mid))
                in = mid;
            else
                out = mid;
        }
        return alpha_rat + Rational(dir) * in;
    };
    MatchingInterval iv;
    iv.N1 = N1;
    iv.M1 = M1;
    iv.lo = search(-1);
    iv.hi = search(+1);
    return iv;
}

}  // namespace oddcf
