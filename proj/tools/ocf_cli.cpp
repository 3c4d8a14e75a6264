// ocf: command-line laboratory for odd alpha-continued fractions.
// Subcommands: expand, orbit, natext {build|mass|check}, entropy,
// matching {verify|scan|alg2|alg1}, tables {table1|table2}.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <oddcf/cf.hpp>
#include <oddcf/entropy.hpp>
#include <oddcf/matching.hpp>
#include <oddcf/natext.hpp>
#include <oddcf/rewrite.hpp>

using namespace oddcf;
using nlohmann::json;

namespace {

int env_precision_bits() {
    if (const char* e = std::getenv("OCF_PRECISION_BITS")) {
        int v = std::atoi(e);
        if (v >= 16 && v <= kMaxPrecisionBits) return v;
    }
    return kDefaultPrecisionBits;
}

std::ostream& out_stream(const std::string& path, std::ofstream& file) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw Error("cannot open output file " + path);
    return file;
}

json word_to_json(const CFWord& w) {
    json digits = json::array();
    for (const auto& d : w.digits) {
        if (d.a.fits_int64())
            digits.push_back(json::array({d.eps, d.a.to_int64()}));
        else
            digits.push_back(json::array({d.eps, d.a.to_string()}));
    }
    return json{{"head", w.head}, {"digits", digits}, {"terminated", w.terminated}};
}

json match_to_json(const MatchReport& r) {
    return json{{"alpha", r.alpha.to_string()},
                {"matched", r.matched},
                {"N", r.N},
                {"M", r.M},
                {"delta", r.delta},
                {"kind", to_string(r.kind)},
                {"classification", to_string(r.classification)}};
}

struct ExpandOpts {
    std::string alpha, x, format = "text";
    std::size_t max_digits = kDefaultExpandDepth;
};

int cmd_expand(const ExpandOpts& o) {
    AlphaParam alpha(Scalar::parse(o.alpha));
    Scalar x = Scalar::parse(o.x);
    CFWord w = expand(alpha, x, o.max_digits);
    auto cs = convergents(w);
    if (o.format == "json") {
        json j{{"alpha", alpha.value().to_string()},
               {"x", x.to_string()},
               {"word", word_to_json(w)}};
        json conv = json::array();
        for (const auto& c : cs) conv.push_back(json::array({c.p.to_string(), c.q.to_string()}));
        j["convergents"] = conv;
        std::cout << j.dump() << "\n";
    } else if (o.format == "csv") {
        std::cout << "k,eps,a,p,q\n";
        for (std::size_t k = 0; k < w.digits.size(); ++k)
            std::cout << k + 1 << "," << w.digits[k].eps << "," << w.digits[k].a.to_string()
                      << "," << cs[k + 1].p.to_string() << "," << cs[k + 1].q.to_string() << "\n";
    } else {
        std::cout << w.to_text() << (w.terminated ? "  (terminated)" : "  (truncated)") << "\n";
        for (std::size_t k = 1; k < cs.size(); ++k)
            std::cout << "  p_" << k << "/q_" << k << " = " << cs[k].p.to_string() << "/"
                      << cs[k].q.to_string() << "\n";
    }
    return 0;
}

struct OrbitOpts {
    std::string alpha, x, format = "text";
    std::size_t n = 50;
};

int cmd_orbit(const OrbitOpts& o) {
    AlphaParam alpha(Scalar::parse(o.alpha));
    auto pts = orbit(alpha, Scalar::parse(o.x), o.n);
    if (o.format == "json") {
        json arr = json::array();
        for (const auto& p : pts) arr.push_back(p.to_string());
        std::cout << json{{"alpha", alpha.value().to_string()}, {"orbit", arr}}.dump() << "\n";
    } else {
        for (std::size_t i = 0; i < pts.size(); ++i)
            std::cout << "T^" << i << " = " << pts[i].to_string() << "\n";
    }
    return 0;
}

json domain_to_json(const Domain& d) {
    json rects = json::array();
    for (const auto& r : d.rects)
        rects.push_back(json{{"x_lo", r.x_lo.to_string()},
                             {"x_hi", r.x_hi.to_string()},
                             {"y_lo", r.y_lo.to_string()},
                             {"y_hi", r.y_hi.to_string()}});
    return json{{"alpha", d.alpha.to_string()},
                {"regime", d.regime},
                {"truncation", d.truncation_level},
                {"tail_mass_bound", d.tail_mass_bound},
                {"rects", rects}};
}

struct NatextOpts {
    std::string alpha, format = "json", emit_rects, action;
    std::size_t truncation = 40;
    std::uint64_t iters = 100000, burn_in = 1000, seeds = 1, seed = 0;
    double tol = 1e-10;
    int precision = 0, stage = -1;
};

int cmd_natext(const NatextOpts& o) {
    AlphaParam alpha(Scalar::parse(o.alpha));
    Domain d = o.stage >= 0 && o.action == "build"
                   ? build_domain_stage(alpha, static_cast<std::size_t>(o.stage))
                   : build_domain(alpha, o.truncation);
    if (o.action == "build") {
        if (!o.emit_rects.empty()) {
            std::ofstream f(o.emit_rects);
            if (!f) throw Error("cannot open " + o.emit_rects);
            f << "x_lo,x_hi,y_lo,y_hi\n";
            f.precision(17);
            for (const auto& r : d.fast)
                f << r.xl << "," << r.xh << "," << r.yl << "," << r.yh << "\n";
        }
        if (o.format == "json")
            std::cout << domain_to_json(d).dump() << "\n";
        else {
            std::cout << "regime " << d.regime << ", " << d.rects.size()
                      << " rectangles, tail bound " << d.tail_mass_bound << "\n";
            for (const auto& r : d.rects)
                std::cout << "  [" << r.x_lo.to_string() << ", " << r.x_hi.to_string() << ") x ["
                          << r.y_lo.to_string() << ", " << r.y_hi.to_string() << "]\n";
        }
        return 0;
    }
    if (o.action == "mass") {
        double m = domain_mass(d);
        double target = total_invariant_mass();
        double err = std::fabs(m - target);
        bool pass = err <= d.tail_mass_bound + 1e-10;
        if (o.format == "json")
            std::cout << json{{"alpha", d.alpha.to_string()},
                              {"mass", m},
                              {"target", target},
                              {"abs_error", err},
                              {"tail_mass_bound", d.tail_mass_bound},
                              {"pass", pass}}
                             .dump()
                      << "\n";
        else
            std::printf("mass = %.15f, 3 log G = %.15f, |err| = %.3e, tail bound = %.3e -> %s\n",
                        m, target, err, d.tail_mass_bound, pass ? "PASS" : "FAIL");
        return pass ? 0 : 1;
    }
    // action == "check": membership simulation
    int prec = o.precision > 0 ? o.precision : env_precision_bits();
    oddcf::detail::SplitMix mix{o.seed ^ 0x5bf03635f0a41b29ULL};
    std::uint64_t violations = 0, total = 0;
    json per_seed = json::array();
    for (std::uint64_t s = 0; s < o.seeds; ++s) {
        // generic dyadic seed inside I_alpha away from 0
        Scalar x0;
        for (;;) {
            BigInt mant(1);
            for (int b = 0; b < prec; b += 64) mant = (mant << 64) + BigInt(mix.next());
            BigFloat u(mant, -static_cast<long long>(mant.bit_length()), prec);  // in [1/2, 1)
            Scalar cand = add(alpha.lower(), Scalar(mul(u, BigFloat(2, prec), prec)));
            double dx = cand.to_double(), da = alpha.value().to_double();
            if (std::fabs(dx) > 1e-6 && dx > da - 2 + 1e-6 && dx < da - 1e-6) {
                x0 = cand;
                break;
            }
        }
        auto rep = simulate_membership(alpha, x0, o.iters, o.burn_in, o.tol, o.truncation);
        violations += rep.violations;
        total += rep.total;
        per_seed.push_back(json{{"seed_index", s},
                                {"x0", x0.to_double()},
                                {"violations", rep.violations},
                                {"total", rep.total},
                                {"worst_excess", rep.worst_excess}});
    }
    if (o.format == "json")
        std::cout << json{{"alpha", alpha.value().to_string()},
                          {"tol", o.tol},
                          {"truncation", o.truncation},
                          {"precision_bits", prec},
                          {"violations", violations},
                          {"total", total},
                          {"runs", per_seed}}
                         .dump()
                  << "\n";
    else
        std::printf("membership: %llu violations in %llu iterates (%llu seeds) -> %s\n",
                    static_cast<unsigned long long>(violations),
                    static_cast<unsigned long long>(total),
                    static_cast<unsigned long long>(o.seeds), violations == 0 ? "PASS" : "FAIL");
    return violations == 0 ? 0 : 1;
}

struct EntropyOpts {
    double alpha_lo = 0.45, alpha_hi = 1.6;
    int steps = 10;
    std::uint64_t iters = 1000000, burn_in = 1000, seed = 0;
    std::string method = "rokhlin", out;
};

int cmd_entropy(const EntropyOpts& o) {
    if (o.alpha_lo < 0.05)
        std::fprintf(stderr, "warning: alpha below 0.05 is outside the supported scan range\n");
    else if (o.alpha_lo < kAlphaMin13)
        std::fprintf(stderr,
                     "warning: alpha below (sqrt13-1)/6 = %.6f is outside the proven regime; "
                     "rows are flagged unproven_regime=1\n",
                     kAlphaMin13);
    auto rows =
        entropy_scan(o.alpha_lo, o.alpha_hi, o.steps, o.iters, o.seed, o.method, o.burn_in);
    std::ofstream file;
    std::ostream& os = out_stream(o.out, file);
    os << "alpha,h,stderr,n_iters,burn_in,seed,method,unproven_regime\n";
    char buf[256];
    for (const auto& e : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%llu,%llu,%llu,%s,%d\n", e.alpha, e.h,
                      e.stderr_value, static_cast<unsigned long long>(e.n_iters),
                      static_cast<unsigned long long>(e.burn_in),
                      static_cast<unsigned long long>(e.seed), e.method.c_str(),
                      e.unproven_regime ? 1 : 0);
        os << buf;
    }
    return 0;
}

struct MatchVerifyOpts {
    std::string family = "all", format = "text";
    long long n_min = 3, n_max = 12;
};

int cmd_matching_verify(const MatchVerifyOpts& o) {
    int failures = 0;
    json rows = json::array();
    std::string fams = o.family == "all" ? "abcd" : o.family;
    for (char f : fams)
        for (long long n = o.n_min; n <= o.n_max; ++n) {
            Rational alpha = seq_abcd(f, n);
            auto [eN, eM] = prop41_exponents(f, n);
            MatchReport rep = find_matching_exact(alpha);
            bool exponents_ok = rep.matched && rep.N == eN && rep.M == eM &&
                                rep.kind == MatchKind::exact_zero_hit;
            bool t1 = verify_table1(f, n).pass;
            AlphaParam ap{Scalar(alpha)};
            auto [m1, m2] = table2_expected(f, n);
            bool t2 = build_M_matrix(ap, ap.value(), rep.N) == m1 &&
                      build_M_matrix(ap, ap.lower(), rep.M) == m2;
            bool a2 = verify_alg2(alpha);
            bool pass = exponents_ok && t1 && t2 && a2;
            if (!pass) ++failures;
            json j = match_to_json(rep);
            j["family"] = std::string(1, f);
            j["n"] = n;
            j["certificates"] = json{{"alg2", a2}, {"table1", t1}, {"table2", t2}};
            j["pass"] = pass;
            rows.push_back(j);
            if (o.format == "text")
                std::printf(
                    "%c%-3lld alpha=%-12s (N,M)=(%llu,%llu) %-10s t1=%d t2=%d alg2=%d %s\n", f, n,
                    alpha.to_string().c_str(), static_cast<unsigned long long>(rep.N),
                    static_cast<unsigned long long>(rep.M), to_string(rep.classification),
                    t1 ? 1 : 0, t2 ? 1 : 0, a2 ? 1 : 0, pass ? "PASS" : "FAIL");
        }
    if (o.format == "json") std::cout << rows.dump() << "\n";
    if (o.format == "text")
        std::printf("matching verify: %s\n", failures == 0 ? "all rows PASS" : "FAILURES");
    return failures == 0 ? 0 : 1;
}

struct MatchScanOpts {
    std::string lo, hi, format = "csv", out;
    int steps = 100, precision = 0;
    std::uint64_t max_iter = 200;
    double tol = 1e-20;
};

int cmd_matching_scan(const MatchScanOpts& o) {
    int prec = o.precision > 0 ? o.precision : env_precision_bits();
    auto reports = scan_matching(Scalar::parse(o.lo), Scalar::parse(o.hi), o.steps, o.max_iter,
                                 o.tol, prec);
    std::ofstream file;
    std::ostream& os = out_stream(o.out, file);
    if (o.format == "json") {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(match_to_json(r));
        os << arr.dump() << "\n";
    } else {
        os << "alpha,matched,N,M,delta,kind,classification\n";
        for (const auto& r : reports)
            os << r.alpha.to_string() << "," << (r.matched ? 1 : 0) << "," << r.N << "," << r.M
               << "," << r.delta << "," << to_string(r.kind) << ","
               << to_string(r.classification) << "\n";
    }
    std::uint64_t matched = 0;
    for (const auto& r : reports) matched += r.matched ? 1 : 0;
    std::fprintf(stderr, "matched %llu of %zu grid points\n",
                 static_cast<unsigned long long>(matched), reports.size());
    return 0;
}

int cmd_matching_alg2(const std::string& alpha) {
    Scalar a = Scalar::parse(alpha);
    if (!a.is_rat()) throw Error("matching alg2: alpha must be rational");
    bool ok = verify_alg2(a.rat());
    MatchReport rep = find_matching_exact(a.rat());
    json j = match_to_json(rep);
    j["alg2"] = ok;
    std::cout << j.dump() << "\n";
    return ok ? 0 : 1;
}

struct Alg1Opts {
    std::string alpha, delta = "1/1000000000";
    int samples = 2, precision = 0;
};

int cmd_matching_alg1(const Alg1Opts& o) {
    Scalar a = Scalar::parse(o.alpha);
    Scalar d = Scalar::parse(o.delta);
    if (!a.is_rat() || !d.is_rat()) throw Error("matching alg1: rational alpha and delta");
    int prec = o.precision > 0 ? o.precision : env_precision_bits();
    auto rep = verify_alg1_neighborhood(a.rat(), d.rat(), o.samples, prec);
    std::cout << json{{"alpha", a.to_string()},
                      {"pass", rep.pass},
                      {"N1", rep.N1},
                      {"M1", rep.M1},
                      {"samples_checked", rep.samples_checked},
                      {"shrinks", rep.shrinks},
                      {"delta_used", rep.delta_used.to_string()},
                      {"failure", rep.failure}}
                     .dump()
              << "\n";
    return rep.pass ? 0 : 1;
}

struct TableOpts {
    std::string which, family = "a";
    long long n = 3;
};

int cmd_tables(const TableOpts& o) {
    char f = o.family[0];
    if (o.which == "table1") {
        auto [ea, ea2] = table1_expected(f, o.n);
        AlphaParam alpha{Scalar(seq_abcd(f, o.n))};
        CFWord ga = expand(alpha, alpha.value());
        CFWord ga2 = expand(alpha, alpha.lower());
        bool pass = ga.digits == ea.digits && ga2.digits == ea2.digits;
        std::cout << json{{"family", std::string(1, f)},
                          {"n", o.n},
                          {"alpha", alpha.value().to_string()},
                          {"expected_alpha_word", ea.to_text()},
                          {"computed_alpha_word", ga.to_text()},
                          {"expected_alpha_minus_2_word", ea2.to_text()},
                          {"computed_alpha_minus_2_word", ga2.to_text()},
                          {"pass", pass}}
                         .dump()
                  << "\n";
        return pass ? 0 : 1;
    }
    Rational alpha_rat = seq_abcd(f, o.n);
    MatchReport rep = find_matching_exact(alpha_rat);
    AlphaParam alpha{Scalar(alpha_rat)};
    auto [m1, m2] = table2_expected(f, o.n);
    Mat2 g1 = build_M_matrix(alpha, alpha.value(), rep.N);
    Mat2 g2 = build_M_matrix(alpha, alpha.lower(), rep.M);
    bool pass = g1 == m1 && g2 == m2;
    std::cout << json{{"family", std::string(1, f)},
                      {"n", o.n},
                      {"alpha", alpha.value().to_string()},
                      {"expected_M_alpha", m1.to_string()},
                      {"computed_M_alpha", g1.to_string()},
                      {"expected_M_alpha_minus_2", m2.to_string()},
                      {"computed_M_alpha_minus_2", g2.to_string()},
                      {"pass", pass}}
                     .dump()
              << "\n";
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"odd alpha-continued fraction laboratory"};
    app.require_subcommand(1);

    ExpandOpts eo;
    auto* expand_cmd = app.add_subcommand("expand", "odd CF expansion of x under T_alpha");
    expand_cmd->add_option("--alpha", eo.alpha)->required();
    expand_cmd->add_option("--x", eo.x)->required();
    expand_cmd->add_option("--max-digits", eo.max_digits);
    expand_cmd->add_option("--format", eo.format)->check(CLI::IsMember({"text", "json", "csv"}));

    OrbitOpts oo;
    auto* orbit_cmd = app.add_subcommand("orbit", "orbit of x under T_alpha");
    orbit_cmd->add_option("--alpha", oo.alpha)->required();
    orbit_cmd->add_option("--x", oo.x)->required();
    orbit_cmd->add_option("--n", oo.n);
    orbit_cmd->add_option("--format", oo.format)->check(CLI::IsMember({"text", "json"}));

    NatextOpts no;
    auto* natext_cmd = app.add_subcommand("natext", "natural-extension domains");
    natext_cmd->require_subcommand(1);
    for (const char* act : {"build", "mass", "check"}) {
        auto* sub = natext_cmd->add_subcommand(act);
        sub->add_option("--alpha", no.alpha)->required();
        sub->add_option("--truncation", no.truncation);
        sub->add_option("--format", no.format)->check(CLI::IsMember({"text", "json"}));
        if (std::string(act) == "build") {
            sub->add_option("--emit-rects", no.emit_rects);
            sub->add_option("--stage", no.stage,
                            "finite construction stage for alpha in (1,G); debugging view");
        }
        if (std::string(act) == "check") {
            sub->add_option("--iters", no.iters);
            sub->add_option("--burn-in", no.burn_in);
            sub->add_option("--seeds", no.seeds);
            sub->add_option("--seed", no.seed);
            sub->add_option("--tol", no.tol);
            sub->add_option("--precision", no.precision);
        }
        sub->callback([&no, act]() { no.action = act; });
    }

    EntropyOpts en;
    auto* entropy_cmd = app.add_subcommand("entropy", "Monte-Carlo entropy estimates");
    entropy_cmd->add_option("--alpha-lo", en.alpha_lo);
    entropy_cmd->add_option("--alpha-hi", en.alpha_hi);
    entropy_cmd->add_option("--steps", en.steps);
    entropy_cmd->add_option("--iters", en.iters);
    entropy_cmd->add_option("--burn-in", en.burn_in);
    entropy_cmd->add_option("--seed", en.seed);
    entropy_cmd->add_option("--method", en.method)->check(CLI::IsMember({"rokhlin", "levy"}));
    entropy_cmd->add_option("--out", en.out);

    MatchVerifyOpts mv;
    MatchScanOpts ms;
    std::string alg2_alpha;
    Alg1Opts a1;
    auto* matching_cmd = app.add_subcommand("matching", "matching analysis");
    matching_cmd->require_subcommand(1);
    auto* verify_cmd = matching_cmd->add_subcommand("verify", "family exponents + tables");
    verify_cmd->add_option("--family", mv.family)
        ->check(CLI::IsMember({"a", "b", "c", "d", "all"}));
    verify_cmd->add_option("--n-min", mv.n_min);
    verify_cmd->add_option("--n-max", mv.n_max);
    verify_cmd->add_option("--format", mv.format)->check(CLI::IsMember({"text", "json"}));
    auto* scan_cmd = matching_cmd->add_subcommand("scan", "grid matching scan");
    scan_cmd->add_option("--lo", ms.lo)->required();
    scan_cmd->add_option("--hi", ms.hi)->required();
    scan_cmd->add_option("--steps", ms.steps);
    scan_cmd->add_option("--max-iter", ms.max_iter);
    scan_cmd->add_option("--tol", ms.tol);
    scan_cmd->add_option("--precision", ms.precision);
    scan_cmd->add_option("--format", ms.format)->check(CLI::IsMember({"csv", "json"}));
    scan_cmd->add_option("--out", ms.out);
    auto* alg2_cmd = matching_cmd->add_subcommand("alg2", "matrix identity at one alpha");
    alg2_cmd->add_option("--alpha", alg2_alpha)->required();
    auto* alg1_cmd = matching_cmd->add_subcommand("alg1", "neighborhood transfer at one alpha");
    alg1_cmd->add_option("--alpha", a1.alpha)->required();
    alg1_cmd->add_option("--delta", a1.delta);
    alg1_cmd->add_option("--samples", a1.samples);
    alg1_cmd->add_option("--precision", a1.precision);

    TableOpts to;
    auto* tables_cmd = app.add_subcommand("tables", "digit and matrix tables");
    tables_cmd->require_subcommand(1);
    for (const char* which : {"table1", "table2"}) {
        auto* sub = tables_cmd->add_subcommand(which);
        sub->add_option("--family", to.family)->check(CLI::IsMember({"a", "b", "c", "d"}));
        sub->add_option("--n", to.n);
        sub->callback([&to, which]() { to.which = which; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (expand_cmd->parsed()) return cmd_expand(eo);
        if (orbit_cmd->parsed()) return cmd_orbit(oo);
        if (natext_cmd->parsed()) return cmd_natext(no);
        if (entropy_cmd->parsed()) return cmd_entropy(en);
        if (matching_cmd->parsed()) {
            if (verify_cmd->parsed()) return cmd_matching_verify(mv);
            if (scan_cmd->parsed()) return cmd_matching_scan(ms);
            if (alg2_cmd->parsed()) return cmd_matching_alg2(alg2_alpha);
            if (alg1_cmd->parsed()) return cmd_matching_alg1(a1);
        }
        if (tables_cmd->parsed()) return cmd_tables(to);
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 2;
    }
    return 0;
}
