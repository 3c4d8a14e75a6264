// Acceptance suite: end-to-end checks of the library against its contract,
// one pass/fail line per criterion. Exit code = number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <oddcf/cf.hpp>
#include <oddcf/entropy.hpp>
#include <oddcf/matching.hpp>
#include <oddcf/natext.hpp>
#include <oddcf/rewrite.hpp>

using namespace oddcf;

namespace {

struct Harness {
    int failures = 0;
    int index = 0;

    void run(const std::string& name, const std::function<std::string()>& body) {
        ++index;
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool pass = false;
        try {
            detail = body();
            pass = detail.empty() || detail.rfind("OK", 0) == 0;
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %02d  %-28s  %s  (%.2fs)%s%s\n", index, name.c_str(),
                    pass ? "PASS" : "FAIL", secs, detail.empty() ? "" : "  ", detail.c_str());
        std::fflush(stdout);
        if (!pass) ++failures;
    }
};

struct Rng {
    std::uint64_t s;
    std::uint64_t next() {
        std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

Scalar random_float_seed(Rng& rng, const Scalar& alpha, int prec = 256) {
    for (;;) {
        BigInt mant(1);
        for (int b = 0; b < prec; b += 64) mant = (mant << 64) + BigInt(rng.next());
        BigFloat u(mant, -(prec + 8), prec);
        double du = u.to_double();
        while (du >= 2.0) {
            u = BigFloat(u.mantissa(), u.exponent() - 1, prec);
            du = u.to_double();
        }
        while (du < 1.0) {
            u = BigFloat(u.mantissa(), u.exponent() + 1, prec);
            du = u.to_double();
        }
        Scalar x = add(sub(alpha, Scalar::from_int(3)), Scalar(mul(u, BigFloat(2, prec), prec)));
        double dx = x.to_double(), da = alpha.to_double();
        if (std::fabs(dx) < 1e-6 || dx < da - 2 + 1e-6 || dx > da - 1e-6) continue;
        return x;
    }
}

std::string criterion_table1() {
    for (char f : {'a', 'b', 'c', 'd'})
        for (long long n = 3; n <= 12; ++n) {
            auto c = verify_table1(f, n);
            if (!c.pass)
                return std::string("family ") + f + " n=" + std::to_string(n) + ": " + c.diff;
        }
    return "OK 4 families x n=3..12";
}

std::string criterion_prop41() {
    auto rows = verify_prop41(3, 20);
    for (const auto& r : rows)
        if (!r.pass)
            return std::string("family ") + r.family + " n=" + std::to_string(r.n) +
                   ": expected (" + std::to_string(r.expect_N) + "," +
                   std::to_string(r.expect_M) + ") got (" + std::to_string(r.got_N) + "," +
                   std::to_string(r.got_M) + ")";
    return "OK 72/72 exponent pairs";
}

std::string criterion_alg2_table2() {
    for (char f : {'a', 'b', 'c', 'd'})
        for (long long n = 3; n <= 20; ++n) {
            Rational alpha = seq_abcd(f, n);
            if (!verify_alg2(alpha))
                return std::string("alg2 failed at family ") + f + " n=" + std::to_string(n);
            MatchReport rep = find_matching_exact(alpha);
            AlphaParam ap{Scalar(alpha)};
            auto [m1, m2] = table2_expected(f, n);
            if (!(build_M_matrix(ap, ap.value(), rep.N) == m1) ||
                !(build_M_matrix(ap, ap.lower(), rep.M) == m2))
                return std::string("table2 mismatch at family ") + f + " n=" + std::to_string(n);
        }
    return "OK identity + Table 2 at 72 points";
}

std::string criterion_alg1() {
    Rational delta(BigInt(1), BigInt::from_string("1000000000"));  // 1e-9
    for (char f : {'a', 'b', 'c', 'd'})
        for (long long n = 3; n <= 8; ++n) {
            auto rep = verify_alg1_neighborhood(seq_abcd(f, n), delta, 2, 256);
            if (!rep.pass)
                return std::string("family ") + f + " n=" + std::to_string(n) + ": " +
                       rep.failure;
        }
    return "OK transfer at 24 family points";
}

std::string criterion_mass() {
    const double target = total_invariant_mass();
    // 50 closed-form points in [g, G]: g, 1, G and 47 interior quads g + k/48
    std::vector<Scalar> highs{scalar_g(), Scalar::from_int(1), scalar_G()};
    for (int k = 1; k <= 47; ++k) highs.push_back(add(scalar_g(), Scalar(Rational(k, 48))));
    int count = 0;
    for (const auto& a : highs) {
        double m = domain_mass(build_domain(AlphaParam(a)));
        if (std::fabs(m - target) > 1e-12)
            return "closed form off at alpha=" + a.to_string() + " err=" +
                   std::to_string(std::fabs(m - target));
        ++count;
    }
    // 20 band-regime points in [(sqrt13-1)/6, g) at truncation 40
    std::vector<Scalar> lows{scalar_alpha_min(), Scalar(QuadExt(-9, 9, 20, 5))};  // amin, 0.9g
    for (int k = 0; k <= 17; ++k)
        lows.push_back(Scalar(Rational(4360 + k * (6170 - 4360) / 17, 10000)));
    for (const auto& a : lows) {
        Domain d = build_domain(AlphaParam(a), 40);
        double m = domain_mass(d);
        if (std::fabs(m - target) > 1e-4)
            return "band regime off at alpha=" + a.to_string() + " err=" +
                   std::to_string(std::fabs(m - target));
        ++count;
    }
    return "OK " + std::to_string(count) + " parameters (50 exact-form, 20 truncated)";
}

std::string criterion_membership() {
    Rng rng{20260808};
    std::vector<Scalar> alphas{Scalar(QuadExt(-9, 9, 20, 5)),  // 0.9 g
                               Scalar(Rational(14, 25)),
                               scalar_g(),
                               Scalar(Rational(4, 5)),
                               Scalar::from_int(1),
                               Scalar(Rational(13, 10)),
                               scalar_G()};
    std::uint64_t grand_total = 0;
    for (const auto& a : alphas) {
        AlphaParam alpha(a);
        for (int seed_i = 0; seed_i < 3; ++seed_i) {
            Scalar x0 = random_float_seed(rng, a);
            auto rep = simulate_membership(alpha, x0, 100000, 1000, 1e-10, 40);
            grand_total += rep.total;
            if (rep.violations != 0)
                return "alpha=" + a.to_string() + " seed#" + std::to_string(seed_i) + ": " +
                       std::to_string(rep.violations) + " violations, worst excess " +
                       std::to_string(rep.worst_excess);
        }
    }
    return "OK 0 violations in " + std::to_string(grand_total) + " iterates (7 alphas x 3 seeds)";
}

std::string criterion_entropy_plateau() {
    const double target = entropy_plateau();
    std::vector<double> alphas{0.45, 0.6180339887498949, 0.8, 1.0, 1.3, 1.6};
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        auto e = entropy_rokhlin(alphas[i], std::nullopt, 10000000, 1000, 4242 + i);
        if (std::fabs(e.h - target) > 0.01)
            return "alpha=" + std::to_string(alphas[i]) + " h=" + std::to_string(e.h) +
                   " target=" + std::to_string(target);
    }
    return "OK 6 points within 0.01 of pi^2/(9 log G)";
}

std::string criterion_monotonicity() {
    struct FamilyCase {
        char family;
        Monotonicity expect;
    };
    const FamilyCase cases[] = {{'a', Monotonicity::Increasing},
                                {'b', Monotonicity::Constant},
                                {'c', Monotonicity::Decreasing},
                                {'d', Monotonicity::Constant}};
    // exact fallback first: classifications from sign(N - M) must match
    for (const auto& c : cases) {
        MatchReport rep = find_matching_exact(seq_abcd(c.family, 4));
        if (!rep.matched || rep.classification != c.expect)
            return std::string("exact classification failed for family ") + c.family;
    }
    // statistical branch: entropy at inner quartiles of the detected intervals
    std::string stat_notes;
    bool statistical_ok = true;
    for (const auto& c : cases) {
        MatchingInterval iv = detect_matching_interval(seq_abcd(c.family, 4), 40);
        double lo = iv.lo.to_double(), hi = iv.hi.to_double();
        double q1 = lo + 0.25 * (hi - lo), q3 = lo + 0.75 * (hi - lo);
        auto e1 = entropy_rokhlin(q1, std::nullopt, 100000000, 1000,
                                  9200 + static_cast<std::uint64_t>(c.family));
        auto e3 = entropy_rokhlin(q3, std::nullopt, 100000000, 1000,
                                  9300 + static_cast<std::uint64_t>(c.family));
        double diff = e3.h - e1.h;
        double sigma = 3.0 * std::sqrt(e1.stderr_value * e1.stderr_value +
                                       e3.stderr_value * e3.stderr_value);
        bool ok = false;
        switch (c.expect) {
            case Monotonicity::Increasing: ok = diff > sigma; break;
            case Monotonicity::Decreasing: ok = diff < -sigma; break;
            case Monotonicity::Constant: ok = std::fabs(diff) <= sigma; break;
        }
        char buf[160];
        std::snprintf(buf, sizeof buf, " %c:dh=%+.2e(3s=%.1e)%s", c.family, diff, sigma,
                      ok ? "ok" : "inconclusive");
        stat_notes += buf;
        if (!ok) statistical_ok = false;
    }
    if (statistical_ok) return "OK statistical signatures at 1e8 iters:" + stat_notes;
    return "OK exact sign(N-M) fallback (statistical branch inconclusive:" + stat_notes + ")";
}

std::string criterion_rewrites() {
    Rng rng{777};
    long long applied[7] = {0, 0, 0, 0, 0, 0, 0};
    const long long per_op = 10000;
    // primitives: generate words matching each precondition, apply, certify
    // (the rewrites throw if their matrix certificates fail), and evaluate
    // both sides under a shared random tail
    auto random_tail = [&]() { return Scalar(Rational(rng.range(-93, 93), 97)); };
    auto check_value = [&](const GeneralWord& before, const GeneralWord& after) {
        Scalar tail = random_tail();
        try {
            Scalar vb = evaluate(before, tail);
            Scalar va = evaluate(after, tail);
            return scalar_eq(vb, va);
        } catch (const PoleError&) {
            return true;  // tail hit a pole; the matrix certificate still ran
        }
    };
    while (applied[0] < per_op || applied[1] < per_op || applied[2] < per_op ||
           applied[3] < per_op) {
        GeneralWord w;
        w.head = rng.range(0, 2);
        int len = 2 + static_cast<int>(rng.next() % 6);
        for (int k = 0; k < len; ++k)
            w.digits.emplace_back(rng.next() % 2 ? 1 : -1, rng.range(1, 9));
        std::size_t i = rng.next() % w.digits.size();
        for (int op = 0; op < 4; ++op) {
            if (applied[op] >= per_op) continue;
            try {
                GeneralWord out;
                switch (op) {
                    case 0: out = singularize_plus(w, i); break;
                    case 1: out = insert_minus(w, i); break;
                    case 2: out = singularize_minus(w, i); break;
                    default: out = insert_plus(w, i); break;
                }
                if (!check_value(w, out)) return "primitive op value mismatch";
                ++applied[op];
            } catch (const PatternMismatch&) {
            }
        }
    }
    // composites: sample admissible odd words per regime
    for (long long it = 0; applied[4] < per_op || applied[5] < per_op || applied[6] < per_op;
         ++it) {
        CFWord w;
        int lead = static_cast<int>(rng.next() % 3);
        for (int k = 0; k < lead; ++k)
            w.digits.emplace_back(rng.next() % 2 ? 1 : -1, 2 * rng.range(0, 4) + 1);
        std::size_t site = w.digits.size();
        int regime = static_cast<int>(rng.next() % 3);
        if (regime == 0) {
            w.digits.emplace_back(1, 1);
            w.digits.emplace_back(1, 2 * rng.range(0, 4) + 1);
        } else if (regime == 1) {
            w.digits.emplace_back(1, 1);
            w.digits.emplace_back(-1, 2 * rng.range(1, 5) + 1);
        } else {
            w.digits.emplace_back(1, 3);
            w.digits.emplace_back(-1, 1);
            w.digits.emplace_back(-1, 2 * rng.range(2, 6) + 1);
        }
        int trail = static_cast<int>(rng.next() % 3);
        for (int k = 0; k < trail; ++k)
            w.digits.emplace_back(rng.next() % 2 ? 1 : -1, 2 * rng.range(0, 4) + 1);
        if (applied[4 + regime] >= per_op) continue;
        CFWord out = shift_block(
            w, site, regime == 0 ? ShiftRegime::ge_g
                                 : (regime == 1 ? ShiftRegime::gt_one : ShiftRegime::lt_g));
        if (!check_value(GeneralWord(w), GeneralWord(out))) return "shift_block value mismatch";
        ++applied[4 + regime];
    }
    return "OK 10^4 certified applications of each of 7 rewrites";
}

std::string criterion_fixed_point() {
    AlphaParam g_param(scalar_g());
    Scalar x = scalar_alpha_min();
    Scalar y = step(g_param, step(g_param, x));
    if (!scalar_eq(y, x)) return "T_g^2((sqrt13-1)/6) != (sqrt13-1)/6";
    if (!y.is_quad() || y.quad().d() != 13) return "fixed point left Q(sqrt13)";
    return "OK exact two-cycle in Q(sqrt13)";
}

std::string criterion_sequences() {
    Scalar g = scalar_g(), G = scalar_G();
    for (long long n = 0; n <= 200; ++n) {
        if (cmp(seq_m(n), seq_m(n + 1)) >= 0 || cmp(seq_m(n + 1), G) >= 0)
            return "seq_m monotonicity failed at n=" + std::to_string(n);
        if (cmp(seq_ell(n), seq_ell(n + 1)) >= 0 || cmp(seq_ell(n + 1), g) >= 0)
            return "seq_ell monotonicity failed at n=" + std::to_string(n);
        if (cmp(seq_L(n + 1), seq_L(n)) >= 0 || cmp(g, seq_L(n + 1)) >= 0)
            return "seq_L monotonicity failed at n=" + std::to_string(n);
        if (cmp(seq_ell(n), seq_u(n)) >= 0 || cmp(seq_u(n), seq_ell(n + 1)) >= 0)
            return "l < u < l' interleaving failed at n=" + std::to_string(n);
        if (cmp(seq_L(n + 1), seq_U(n + 1)) >= 0 || cmp(seq_U(n + 1), seq_L(n)) >= 0)
            return "L' < U' < L interleaving failed at n=" + std::to_string(n);
    }
    return "OK exact monotone interleaving to n=200";
}

}  // namespace

int main() {
    Harness h;
    h.run("table1-reproduction", criterion_table1);
    h.run("prop41-exponents", criterion_prop41);
    h.run("lemma41-matrix-identity", criterion_alg2_table2);
    h.run("lemma42-transfer", criterion_alg1);
    h.run("mass-normalization", criterion_mass);
    h.run("natext-membership", criterion_membership);
    h.run("entropy-plateau", criterion_entropy_plateau);
    h.run("monotonicity-signatures", criterion_monotonicity);
    h.run("rewrite-soundness", criterion_rewrites);
    h.run("exact-fixed-point", criterion_fixed_point);
    h.run("sequence-limits", criterion_sequences);
    if (h.failures == 0)
        std::printf("acceptance: all %d criteria passed\n", h.index);
    else
        std::printf("acceptance: %d of %d criteria FAILED\n", h.failures, h.index);
    return h.failures;
}
