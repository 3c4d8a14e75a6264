#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cf.hpp"
#include "errors.hpp"
#include "scalar.hpp"

namespace oddcf {

/// Axis-aligned rectangle with exact corners; half-open in x, closed in y
/// (boundaries carry no mass). Mass is taken against the density
/// (1+xy)^-2, so 1 + x*y must stay positive on the rectangle.
struct Rect {
    Scalar x_lo, x_hi, y_lo, y_hi;
};

struct PlanarPoint {
    Scalar t, v;
};

/// Finite union of interior-disjoint rectangles approximating a natural
/// extension domain. For the band regimes the infinite families are cut at
/// `truncation_level`; the closure rectangles that plug the accumulation
/// gaps over-cover by at most `tail_mass_bound` (unnormalized mass).
struct Domain {
    Scalar alpha;
    std::string regime;
    std::size_t truncation_level = 0;
    double tail_mass_bound = 0.0;
    std::vector<Rect> rects;

    // double mirror of rects for fast membership scans
    struct FastRect {
        double xl, xh, yl, yh;
    };
    std::vector<FastRect> fast;

    void finalize() {
        fast.clear();
        fast.reserve(rects.size());
        for (const auto& r : rects)
            fast.push_back({r.x_lo.to_double(), r.x_hi.to_double(), r.y_lo.to_double(),
                            r.y_hi.to_double()});
    }
};

/// One step of the planar extension: (t, v) -> (T_alpha t, 1/(d + eps*v)).
inline PlanarPoint natext_step(const AlphaParam& alpha, const PlanarPoint& p) {
    if (p.t.is_zero()) throw ZeroFuture("natext_step: t = 0 has no image");
    SignedDigit sd = digit(alpha, p.t);
    Scalar den = add(Scalar(Rational(sd.a)), mul(Scalar::from_int(sd.eps), p.v));
    if (den.sign() <= 0) throw PoleError("natext_step: d + eps*v <= 0");
    Scalar t_next = sub(recip(abs(p.t)), Scalar(Rational(sd.a)));
    return {t_next, recip(den)};
}

/// The rearrangement map: `shift` moves (t,v) to (t-2, v/(1+2v)); `flip`
/// applies (-1/t - 1, 1/(1-v)) (one T_alpha step on the shifted strip).
enum class MBranch { shift, flip };

inline PlanarPoint map_M(const AlphaParam&, const PlanarPoint& p, MBranch branch) {
    if (branch == MBranch::shift) {
        Scalar den = add(Scalar::from_int(1), mul_int(p.v, 2));
        if (den.is_zero()) throw PoleError("map_M: 1 + 2v = 0");
        return {sub(p.t, Scalar::from_int(2)), div(p.v, den)};
    }
    if (p.t.sign() >= 0) throw DomainError("map_M(flip): requires t < 0");
    if (cmp(p.v, Scalar::from_int(1)) >= 0) throw DomainError("map_M(flip): requires v < 1");
    Scalar den = sub(Scalar::from_int(1), p.v);
    if (den.is_zero()) throw PoleError("map_M: 1 - v = 0");
    return {sub(neg(recip(p.t)), Scalar::from_int(1)), recip(den)};
}

/// Auxiliary island map (xi, eta) -> (-1/xi - 3, 1/(3 - eta)); agrees with
/// T_g on the strips it is applied to.
inline PlanarPoint aux_A(const PlanarPoint& p) {
    if (p.t.is_zero()) throw PoleError("aux_A: xi = 0");
    Scalar den = sub(Scalar::from_int(3), p.v);
    if (den.is_zero()) throw PoleError("aux_A: eta = 3");
    return {sub(neg(recip(p.t)), Scalar::from_int(3)), recip(den)};
}

namespace detail {

inline BigInt fib(long long n) {  // F_{-1} = 1, F_0 = 0, F_1 = 1, ...
    if (n == -1) return BigInt(1);
    BigInt a(0), b(1);  // F_0, F_1
    for (long long i = 0; i < n; ++i) {
        BigInt t = a + b;
        a = std::exchange(b, t);
    }
    return a;
}

// (2+g)*F(k) + F(k-1) as a QuadExt numerator/denominator helper:
// equals ((3F_k + 2F_{k-1}) + F_k*sqrt5)/2
inline QuadExt tail_comb(long long k) {
    BigInt fk = fib(k), fk1 = fib(k - 1);
    return QuadExt(BigInt(3) * fk + (fk1 << 1), fk, BigInt(2), 5);
}

}  // namespace detail

/// m_n = [1; 1^(2n-2)] increasing to G; m_0 = 0, m_1 = 1, m_2 = 3/2.
inline Scalar seq_m(long long n) {
    if (n < 0) throw Error("seq_m: n >= 0 required");
    if (n == 0) return Scalar::from_int(0);
    return Scalar(Rational(detail::fib(2 * n), detail::fib(2 * n - 1)));
}
/// l_n = [0; 1^(2n)] increasing to g; l_0 = 0.
inline Scalar seq_ell(long long n) {
    if (n < 0) throw Error("seq_ell: n >= 0 required");
    return Scalar(Rational(detail::fib(2 * n), detail::fib(2 * n + 1)));
}
/// u_n = [0; 1^(2n), 2, 1bar]; u_0 = g^2.
inline Scalar seq_u(long long n) {
    if (n < 0) throw Error("seq_u: n >= 0 required");
    return Scalar(detail::tail_comb(2 * n) / detail::tail_comb(2 * n + 1));
}
/// L_n = [0; 1^(2n+1)] decreasing to g; L_0 = 1.
inline Scalar seq_L(long long n) {
    if (n < 0) throw Error("seq_L: n >= 0 required");
    return Scalar(Rational(detail::fib(2 * n + 1), detail::fib(2 * n + 2)));
}
/// U_n = [0; 1^(2n-1), 2, 1bar] for n >= 1; U_0 = G (band top).
inline Scalar seq_U(long long n) {
    if (n < 0) throw Error("seq_U: n >= 0 required");
    if (n == 0) return scalar_G();
    return Scalar(detail::tail_comb(2 * n - 1) / detail::tail_comb(2 * n));
}

namespace detail {

// second-coordinate transforms of the band construction
inline Scalar band_s(const Scalar& v) {  // v -> v/(2v+1)
    return div(v, add(Scalar::from_int(1), mul_int(v, 2)));
}
inline Scalar band_m(const Scalar& v) {  // v -> (2v+1)/(v+1)
    return div(add(Scalar::from_int(1), mul_int(v, 2)), add(Scalar::from_int(1), v));
}
inline Scalar band_h(const Scalar& v) {  // v -> 1/(3+v)
    return recip(add(Scalar::from_int(3), v));
}
inline Scalar band_H(const Scalar& v) {  // v -> (3+v)/(2+v)
    return div(add(Scalar::from_int(3), v), add(Scalar::from_int(2), v));
}

struct DomainBuilder {
    Domain d;

    void rect(const Scalar& xl, const Scalar& xh, const Scalar& yl, const Scalar& yh) {
        if (cmp(xl, xh) >= 0 || cmp(yl, yh) >= 0) return;  // degenerate: skip
        d.rects.push_back({xl, xh, yl, yh});
    }
};

}  // namespace detail

inline double rect_mass(const Rect& r);

/// V(x) = (1+x)/(2+x), the monotone band recursion with fixed point g.
inline Scalar v_fun(const Scalar& x) {
    return div(add(Scalar::from_int(1), x), add(Scalar::from_int(2), x));
}

/// Natural-extension domain for alpha in [(sqrt13-1)/6, G].
///
/// Regimes: alpha = 1 and alpha = G use the classical two/one-rectangle
/// domains; [g, 1) and (1, G) the three-rectangle closed forms; below g the
/// five band families cut at `truncation` with closure rectangles spanning
/// the accumulation gaps (their total mass is the recorded tail bound).
inline Domain build_domain(const AlphaParam& alpha_param, std::size_t truncation = 40) {
    const Scalar& a = alpha_param.value();
    if (cmp(a, scalar_alpha_min()) < 0)
        throw UnsupportedAlpha("build_domain: alpha below (sqrt13-1)/2/3 not supported");
    Scalar one = Scalar::from_int(1);
    Scalar g = scalar_g(), G = scalar_G();
    Scalar g2 = mul(g, g);
    detail::DomainBuilder b;
    b.d.alpha = a;
    b.d.truncation_level = truncation;

    if (scalar_eq(a, one)) {
        b.d.regime = "one";
        b.rect(Scalar::from_int(-1), Scalar::from_int(0), Scalar::from_int(0), g2);
        b.rect(Scalar::from_int(0), one, Scalar::from_int(0), G);
    } else if (scalar_eq(a, G)) {
        b.d.regime = "G";
        b.rect(neg(g2), G, Scalar::from_int(0), one);
    } else if (cmp(a, one) > 0) {
        b.d.regime = "one_to_G";
        Scalar lo = alpha_param.lower();
        Scalar split1 = sub(recip(a), one);          // 1/alpha - 1
        Scalar split2 = step(alpha_param, lo);       // T_alpha(alpha - 2)
        b.rect(lo, split1, Scalar::from_int(0), g2);
        b.rect(split1, split2, Scalar::from_int(0), one);
        b.rect(split2, a, Scalar::from_int(0), G);
    } else if (cmp(a, g) >= 0) {
        b.d.regime = "g_to_one";
        Scalar lo = alpha_param.lower();
        Scalar mid_lo = div(sub(one, a), a);          // (1-alpha)/alpha
        Scalar top_lo = step(alpha_param, lo);        // T_alpha(alpha - 2)
        b.rect(lo, a, Scalar::from_int(0), g2);
        b.rect(mid_lo, a, g2, one);
        b.rect(top_lo, a, one, G);
    } else {
        b.d.regime = "below_g";
        const long long K = static_cast<long long>(truncation);
        Scalar lo = alpha_param.lower();
        Scalar g_m2 = sub(g, Scalar::from_int(2));
        Scalar t_lo = step(alpha_param, lo);                       // T_alpha(alpha-2)
        Scalar neg_corner = neg(div(g2, add(one, g2)));            // -g^2/(1+g^2)
        Scalar hole_b_end = sub(recip(a), Scalar::from_int(3));    // (1-3alpha)/alpha
        Scalar hole_d_end = div(sub(one, mul_int(a, 2)), sub(mul_int(a, 3), one));
        Scalar island_lo = div(sub(mul_int(a, 2), one), sub(one, a));

        // cached band endpoints
        std::vector<Scalar> ell(K + 1), u(K + 1), L(K + 1), U(K + 1);
        for (long long n = 0; n <= K; ++n) {
            ell[n] = seq_ell(n);
            u[n] = seq_u(n);
            L[n] = seq_L(n);
            U[n] = seq_U(n);
        }

        std::size_t closure_begin = 0;
        auto mark_closure = [&]() { closure_begin = b.d.rects.size(); };
        double tail = 0.0;

        // P1: shifted strip, bands s([l_n, u_n]) and s([L_n, U_n])
        for (long long n = 0; n <= K; ++n)
            b.rect(lo, g_m2, detail::band_s(ell[n]), detail::band_s(u[n]));
        for (long long n = 0; n <= K; ++n)
            b.rect(lo, g_m2, detail::band_s(L[n]), detail::band_s(U[n]));
        mark_closure();
        b.rect(lo, g_m2, detail::band_s(u[K]), detail::band_s(L[K]));
        for (std::size_t i = closure_begin; i < b.d.rects.size(); ++i)
            tail += rect_mass(b.d.rects[i]);

        // P3: once-mapped strip, bands m([l_n, u_n]) and m([L_n, U_n])
        for (long long n = 0; n <= K; ++n)
            b.rect(t_lo, neg_corner, detail::band_m(ell[n]), detail::band_m(u[n]));
        for (long long n = 0; n <= K; ++n)
            b.rect(t_lo, neg_corner, detail::band_m(L[n]), detail::band_m(U[n]));
        mark_closure();
        b.rect(t_lo, neg_corner, detail::band_m(u[K]), detail::band_m(L[K]));
        for (std::size_t i = closure_begin; i < b.d.rects.size(); ++i)
            tail += rect_mass(b.d.rects[i]);

        // P5: islands between the base rectangles, bands [l_n, u_n], [L_n, U_n], n >= 1
        for (long long n = 1; n <= K; ++n) b.rect(island_lo, a, ell[n], u[n]);
        for (long long n = 1; n <= K; ++n) b.rect(island_lo, a, L[n], U[n]);
        mark_closure();
        b.rect(island_lo, a, u[K], L[K]);
        for (std::size_t i = closure_begin; i < b.d.rects.size(); ++i)
            tail += rect_mass(b.d.rects[i]);

        // P2: lower base rectangle [g-2, alpha) x [0, g^2] minus the
        // h-bands holes over (g-2, (1-3a)/a]; keeps listed explicitly
        b.rect(hole_b_end, a, Scalar::from_int(0), g2);  // hole-free part
        b.rect(g_m2, hole_b_end, Scalar::from_int(0), detail::band_h(U[0]));
        for (long long n = 0; n < K; ++n)
            b.rect(g_m2, hole_b_end, detail::band_h(L[n]), detail::band_h(U[n + 1]));
        for (long long n = 0; n < K; ++n)
            b.rect(g_m2, hole_b_end, detail::band_h(ell[n + 1]), detail::band_h(u[n]));
        b.rect(g_m2, hole_b_end, detail::band_h(ell[0]), g2);
        mark_closure();
        b.rect(g_m2, hole_b_end, detail::band_h(L[K]), detail::band_h(u[K]));
        for (std::size_t i = closure_begin; i < b.d.rects.size(); ++i)
            tail += rect_mass(b.d.rects[i]);

        // P4: upper base rectangle [-g^2/(1+g^2), alpha) x [1, G] minus the
        // H-bands holes over (-g^2/(1+g^2), (1-2a)/(3a-1)]
        b.rect(hole_d_end, a, one, G);  // hole-free part
        b.rect(neg_corner, hole_d_end, one, detail::band_H(U[0]));
        for (long long n = 0; n < K; ++n)
            b.rect(neg_corner, hole_d_end, detail::band_H(L[n]), detail::band_H(U[n + 1]));
        for (long long n = 0; n < K; ++n)
            b.rect(neg_corner, hole_d_end, detail::band_H(ell[n + 1]), detail::band_H(u[n]));
        b.rect(neg_corner, hole_d_end, detail::band_H(ell[0]), G);
        mark_closure();
        b.rect(neg_corner, hole_d_end, detail::band_H(L[K]), detail::band_H(u[K]));
        for (std::size_t i = closure_begin; i < b.d.rects.size(); ++i)
            tail += rect_mass(b.d.rects[i]);

        b.d.tail_mass_bound = tail;
    }
    b.d.finalize();
    return b.d;
}

/// Finite-stage domain of the (1, G) construction after n rounds of the
/// remove/add rearrangement starting from the G-domain; a debugging view of
/// the limit returned by build_domain (stage masses are all 3 log G).
inline Domain build_domain_stage(const AlphaParam& alpha_param, std::size_t n) {
    const Scalar& a = alpha_param.value();
    Scalar one = Scalar::from_int(1);
    if (cmp(a, one) <= 0 || cmp(a, scalar_G()) >= 0)
        throw UnsupportedAlpha("build_domain_stage: requires 1 < alpha < G");
    Scalar g2 = mul(scalar_g(), scalar_g());
    Scalar lo = alpha_param.lower();
    Scalar split1 = div(sub(one, a), a);      // (1-alpha)/alpha
    Scalar T = step(alpha_param, lo);         // T_alpha(alpha-2)
    detail::DomainBuilder b;
    b.d.alpha = a;
    b.d.regime = "one_to_G_stage_" + std::to_string(n);
    b.d.truncation_level = n;
    if (n == 0) {
        b.rect(neg(g2), scalar_G(), Scalar::from_int(0), one);
    } else {
        Scalar m_n = seq_m(static_cast<long long>(n));
        Scalar m_n1 = seq_m(static_cast<long long>(n) + 1);
        b.rect(lo, neg(g2), Scalar::from_int(0), detail::band_s(m_n));
        b.rect(neg(g2), split1, Scalar::from_int(0), recip(add(one, m_n)));
        b.rect(split1, T, Scalar::from_int(0), one);
        b.rect(T, a, Scalar::from_int(0), m_n1);
        b.rect(a, scalar_G(), m_n, m_n1);
    }
    b.d.finalize();
    return b.d;
}

/// Unnormalized mass of a rectangle under (1+xy)^-2:
/// log((1+x_hi y_hi)(1+x_lo y_lo) / ((1+x_hi y_lo)(1+x_lo y_hi))).
/// The cross-ratio is evaluated in 192-bit floats (the corners may mix
/// the sqrt5 and sqrt13 fields), the log in hardware doubles.
inline double rect_mass(const Rect& r) {
    constexpr int prec = 192;
    BigFloat xl = to_float(r.x_lo, prec), xh = to_float(r.x_hi, prec);
    BigFloat yl = to_float(r.y_lo, prec), yh = to_float(r.y_hi, prec);
    BigFloat one(1, prec);
    BigFloat c_hh = add(one, mul(xh, yh, prec), prec);
    BigFloat c_ll = add(one, mul(xl, yl, prec), prec);
    BigFloat c_hl = add(one, mul(xh, yl, prec), prec);
    BigFloat c_lh = add(one, mul(xl, yh, prec), prec);
    for (const BigFloat* c : {&c_hh, &c_ll, &c_hl, &c_lh})
        if (c->sign() <= 0) throw DensitySingular("rect_mass: 1 + x*y <= 0 on the rectangle");
    BigFloat ratio = div(mul(c_hh, c_ll, prec), mul(c_hl, c_lh, prec), prec);
    return std::log(ratio.to_double());
}

inline double domain_mass(const Domain& d) {
    double m = 0.0;
    for (const auto& r : d.rects) m += rect_mass(r);
    return m;
}

/// 3 log G, the total invariant mass of every supported domain.
inline double total_invariant_mass() { return 3.0 * std::log((1.0 + std::sqrt(5.0)) / 2.0); }

/// Membership with tol-thickened boundaries (boundaries are measure zero).
inline bool contains(const Domain& d, double t, double v, double tol) {
    for (const auto& r : d.fast)
        if (t >= r.xl - tol && t <= r.xh + tol && v >= r.yl - tol && v <= r.yh + tol) return true;
    return false;
}
inline bool contains(const Domain& d, const PlanarPoint& p, double tol) {
    return contains(d, p.t.to_double(), p.v.to_double(), tol);
}

struct MembershipReport {
    std::uint64_t violations = 0;
    std::uint64_t total = 0;
    double worst_excess = 0.0;  // largest distance outside, for diagnostics
};

namespace detail {

inline double domain_distance_outside(const Domain& d, double t, double v) {
    double best = 1e300;
    for (const auto& r : d.fast) {
        double dx = std::max({r.xl - t, t - r.xh, 0.0});
        double dy = std::max({r.yl - v, v - r.yh, 0.0});
        best = std::min(best, std::max(dx, dy));
    }
    return best;
}

}  // namespace detail

/// Iterate the planar extension from (x0, 0) and count post-burn-in points
/// that fall outside the truncated domain. Float seeds run a dedicated
/// big-float loop (alpha converted once, digits floored on dyadics); exact
/// seeds run exactly until the orbit dies at t = 0.
inline MembershipReport simulate_membership(const AlphaParam& alpha, const Scalar& x0,
                                            std::uint64_t n, std::uint64_t burn_in, double tol,
                                            std::size_t truncation = 40) {
    Domain d = build_domain(alpha, truncation);
    MembershipReport rep;
    auto record = [&](double t, double v) {
        ++rep.total;
        if (!contains(d, t, v, tol)) {
            ++rep.violations;
            rep.worst_excess =
                std::max(rep.worst_excess, detail::domain_distance_outside(d, t, v));
        }
    };
    if (x0.is_float()) {
        const int prec = x0.flt().precision();
        BigFloat af = to_float(alpha.value(), prec);
        BigFloat one(1, prec), two(2, prec);
        BigFloat t = x0.flt(), v(0, prec);
        for (std::uint64_t i = 0; i < n + burn_in; ++i) {
            if (t.is_zero() || detail::float_mag_exp(t) < -(prec / 2))
                throw PrecisionExhausted("simulate_membership: |t| fell below 2^(-prec/2)");
            int eps = t.sign();
            BigFloat R = div(one, eps < 0 ? -t : t, prec);
            BigInt dd = div(sub(add(R, one, prec), af, prec), two, prec).floor();
            dd = (dd << 1) + BigInt(1);
            BigFloat df = BigFloat::from_int_exact(dd, prec);
            t = sub(R, df, prec);
            BigFloat den = eps > 0 ? add(df, v, prec) : sub(df, v, prec);
            if (den.sign() <= 0) throw PoleError("simulate_membership: d + eps*v <= 0");
            v = div(one, den, prec);
            if (i >= burn_in) record(t.to_double(), v.to_double());
        }
        return rep;
    }
    PlanarPoint p{x0, Scalar::from_int(0)};
    for (std::uint64_t i = 0; i < n + burn_in; ++i) {
        if (p.t.is_zero()) break;  // rational seed died; orbit complete
        p = natext_step(alpha, p);
        if (i >= burn_in) record(p.t.to_double(), p.v.to_double());
    }
    return rep;
}

}  // namespace oddcf
