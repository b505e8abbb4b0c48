// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "trife/cli.hpp"
#include "trife/lax.hpp"
#include "trife/limits.hpp"
#include "trife/three_body.hpp"
#include "trife/verification.hpp"

using namespace trife;

namespace
{

double uni(std::uint64_t seed, std::uint64_t n, double lo = -1.0, double hi = 1.0)
{
    return lo + (hi - lo) * counter_uniform(seed, n);
}

Complex cuni(std::uint64_t seed, std::uint64_t n, double half = 1.0)
{
    return {uni(seed, 2 * n, -half, half), uni(seed, 2 * n + 1, -half, half)};
}

SampleSpec box(std::uint64_t seed, int count, double half, double exclusion = 0.05)
{
    SampleSpec s;
    s.seed = seed;
    s.count = count;
    s.domain = {-half, half, -half, half};
    s.pole_exclusion_radius = exclusion;
    return s;
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *f, double a, double b = 0.0, double c = 0.0, double d = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome weierstrass_core()
{
    const auto t0 = std::chrono::steady_clock::now();
    double ode = 0.0, par = 0.0, hom = 0.0, closed = 0.0;
    int skipped = 0;
    for (int i = 0; i < 1000; ++i) {
        const WeierstrassEvaluator ev(WeierstrassParams{cuni(1, 4 * i), cuni(1, 4 * i + 1)});
        const Complex z = cuni(1, 4 * i + 2, 2.0);
        try {
            ode = std::max(ode, p_ode_residual(ev, z));
            par = std::max(par, parity_residual(ev, z));
            hom = std::max(hom, homogeneity_residual(ev, uni(1, 10000 + i, 0.5, 2.0), z));
        } catch (const PoleError &) {
            ++skipped;
        }
    }
    const WeierstrassEvaluator rational(WeierstrassParams{});
    for (int i = 0; i < 1000; ++i) {
        const double r = 0.05 * std::pow(200.0, uni(2, 2 * i, 0.0, 1.0));
        closed = std::max(closed, rational_closure_residual(rational, std::polar(r, uni(2, 2 * i + 1, 0.0, 6.283))));
    }
    const double t = seconds_since(t0);
    return {ode <= 1e-9 && par <= 1e-9 && hom <= 1e-9 && closed <= 1e-13 && skipped < 50 && t < 5.0,
            fmt("ode %.2e parity %.2e homogeneity %.2e rational %.2e", ode, par, hom, closed) +
                fmt(" skipped %.0f time %.2fs", skipped, t)};
}

Outcome addition_theorem()
{
    double worst = 0.0;
    bool pass = true;
    for (int i = 0; i < 10; ++i) {
        const WeierstrassEvaluator ev(WeierstrassParams{cuni(3, 2 * i), cuni(3, 2 * i + 1)});
        const ResidualReport r = addition54_residual(ev, box(100 + i, 500, 1.0));
        worst = std::max(worst, r.max_abs);
        pass = pass && r.pass && r.max_abs <= 1e-8;
    }
    return {pass, fmt("max %.2e over 10 lattices x 500 pairs", worst)};
}

EllipticTriadParams random_elliptic(std::uint64_t seed)
{
    EllipticTriadParams p;
    p.alpha = cuni(seed, 0);
    p.beta = cuni(seed, 1);
    p.gamma = {cuni(seed, 2), cuni(seed, 3), cuni(seed, 4)};
    p.a1 = cuni(seed, 5, 0.5);
    p.a2 = cuni(seed, 6, 0.5);
    p.weier = {cuni(seed, 7), cuni(seed, 8)};
    return p;
}

Outcome main_theorem()
{
    double fe = 0.0, det = 0.0, beta = 0.0;
    bool pass = true;
    for (std::uint64_t k = 0; k < 100; ++k) {
        EllipticTriadParams p = random_elliptic(1000 + k);
        const SolutionTriple s = make_elliptic_solution(p);
        const SampleSpec spec = box(k, 200, 1.5);
        const ResidualReport r = fe14_residual(s, spec);
        const ResidualReport d = det22_residual(s, spec, 1e-6);
        fe = std::max(fe, r.max_abs);
        det = std::max(det, d.max_abs);
        pass = pass && r.pass && d.pass;
        p.beta += cuni(2000 + k, 0);
        const SolutionTriple t = make_elliptic_solution(p);
        for (int i = 0; i < 20; ++i) {
            const Complex x = sample_point(spec, i, 0), y = sample_point(spec, i, 1);
            if (near_declared_pole(s, x, y, spec.pole_exclusion_radius)) {
                continue;
            }
            try {
                const double scale = 1.0 + std::abs(s.F(x)) + std::abs(s.G(y)) + std::abs(s.H(-x - y));
                beta = std::max(beta, std::abs(fe_mismatch(s, x, y) - fe_mismatch(t, x, y)) / scale);
            } catch (const PoleError &) {
            }
        }
    }
    pass = pass && fe <= 1e-8 && det <= 1e-6 && beta <= 1e-8;
    return {pass, fmt("fe14 %.2e det22 %.2e beta-shift %.2e", fe, det, beta)};
}

Outcome degenerate_families()
{
    const SampleSpec spec = box(40, 200, 2.0);
    DegenerateParams d1;
    d1.case_id = 1;
    d1.f0 = 0.2;
    d1.g0 = -0.1;
    d1.h0 = 0.4;
    d1.f1 = 0.3;
    d1.g1 = Complex{-0.2, 0.4};
    d1.h1 = 1.1;
    d1.b = 0.3;
    d1.big0_f = 0.1;
    d1.big0_g = 0.1;
    d1.big0_h = 0.05;
    DegenerateParams d2;
    d2.case_id = 2;
    d2.f_fn = [](Complex x) { return std::sin(x); };
    d2.f_d1 = [](Complex x) { return std::cos(x); };
    d2.f_d2 = [](Complex x) { return -std::sin(x); };
    d2.g0 = 0.3;
    d2.h0 = -0.7;
    d2.a = Complex{0.2, 0.1};
    d2.b = 0.5;
    DegenerateParams d3;
    d3.case_id = 3;
    d3.c = Complex{0.5, 0.2};
    d3.f0 = 0.1;
    d3.g0 = 0.3;
    d3.h0 = d3.c - 0.4;
    d3.big0_f = 0.2;
    d3.big0_g = -0.1;
    d3.big0_h = d3.c * d3.c - 0.1;
    d3.a = 0.4;
    d3.c1 = Complex{0.7, -0.2};
    d3.c2 = Complex{-0.4, 0.3};
    d3.lambda = Complex{0.6, 0.2};
    EntireFamilyParams e;
    e.alpha = {Complex{0.5, 0.2}, Complex{-0.7}, Complex{1.1, -0.3}};
    e.lambda = Complex{0.9, 0.4};
    e.beta = 0.6;
    e.gamma = {Complex{0.3, 0.1}, Complex{-0.2}, Complex{0.4, 0.4}};
    double worst = 0.0;
    bool pass = true;
    for (const SolutionTriple &s : {make_degenerate_solution(d1), make_degenerate_solution(d2),
                                    make_degenerate_solution(d3), make_entire_solution(e)}) {
        const ResidualReport r = fe14_residual(s, spec, 1e-10);
        worst = std::max(worst, r.max_abs);
        pass = pass && r.pass;
    }
    EntireFamilyParams lit;
    lit.gamma = {Complex{1.0}, Complex{}, Complex{}};
    const SolutionTriple l = make_entire_solution(lit, true);
    double lit_max = 0.0, gap = 0.0;
    for (int i = 0; i < 200; ++i) {
        const Complex x = sample_point(spec, i, 0), y = sample_point(spec, i, 1);
        const double m = std::abs(fe_mismatch(l, x, y));
        lit_max = std::max(lit_max, m);
        gap = std::max(gap, std::abs(m - std::abs(entire_literal_mismatch(lit, x, y))) / (1.0 + m));
    }
    pass = pass && lit_max > 0.1 && gap <= 1e-6;
    return {pass, fmt("fe14 %.2e literal max %.3g analytic gap %.2e", worst, lit_max, gap)};
}

Outcome reduction_chain()
{
    const auto t0 = std::chrono::steady_clock::now();
    double w34 = 0.0, w32 = 0.0, wode = 0.0, w50 = 0.0, wgroup = 0.0;
    bool pass = true;
    for (int i = 0; i < 50; ++i) {
        ChainConstants c{cuni(2024, 8 * i), cuni(2024, 8 * i + 1), cuni(2024, 8 * i + 2), cuni(2024, 8 * i + 3),
                         cuni(2024, 8 * i + 4)};
        if (std::abs(c.c3) < 0.3) {
            c.c3 *= 0.3 / std::abs(c.c3);
        }
        try {
            const PhiChain ch = PhiChain::make(c);
            const ChainFunctions fns = chain_functions(ch);
            const SampleSpec spec = box(i, 200, 0.3 * std::abs(ch.alpha()), 0.0);
            const ResidualReport r34 = eq34_residual(fns.phi, fns.tau_a.tau, fns.tau_a.A, spec);
            const ResidualReport r32 = eq32_residual(fns.quad, spec);
            const ResidualReport rode = ode40_suite(fns.u, fns.du, c, spec);
            pass = pass && r34.pass && r32.pass && rode.pass;
            w34 = std::max(w34, r34.max_abs);
            w32 = std::max(w32, r32.max_abs);
            wode = std::max(wode, rode.max_abs);
            for (int k = 0; k < 50; ++k) {
                const Complex x = sample_point(spec, k, 0);
                if (std::abs(x) < 1e-3) {
                    continue;
                }
                const Complex a = ch.u_difference(x), b = ch.u_psi(x);
                w50 = std::max(w50, std::abs(a - b) / (1.0 + std::abs(b)));
            }
            if (i < 5) {
                const std::pair<Complex, Complex> g1{cuni(77, 4 * i), Complex{1.0} + 0.5 * cuni(77, 4 * i + 1)};
                const std::pair<Complex, Complex> g2{cuni(77, 4 * i + 2), Complex{1.0} + 0.5 * cuni(77, 4 * i + 3)};
                const Quadruple twice =
                    group_action_33(group_action_33(fns.quad, g1.first, g1.second), g2.first, g2.second);
                const auto g = compose_33(g1, g2);
                const Quadruple once = group_action_33(fns.quad, g.first, g.second);
                for (int k = 0; k < 20; ++k) {
                    const Complex x = sample_point(spec, k, 0);
                    for (const auto &[a, b] : {std::pair{once.eta(x), twice.eta(x)}, std::pair{once.xi(x), twice.xi(x)},
                                               std::pair{once.gamma(x), twice.gamma(x)}}) {
                        wgroup = std::max(wgroup, std::abs(a - b) / (1.0 + std::abs(b)));
                    }
                }
            }
        } catch (const Error &e) {
            std::printf("  chain %d: %s\n", i, e.what());
            pass = false;
        }
    }
    pass = pass && w34 <= 1e-8 && w32 <= 1e-8 && wode <= 1e-8 && w50 <= 1e-8 && wgroup <= 1e-12;
    return {pass, fmt("eq34 %.2e eq32 %.2e ode40 %.2e forms %.2e", w34, w32, wode, w50) +
                      fmt(" group %.2e time %.2fs", wgroup, seconds_since(t0))};
}

Outcome limits()
{
    const auto eps = default_epsilons();
    const LimitLadder a = limit_c3(0.7, 1.0, 0.5, eps);
    const LimitLadder b = limit_c2(0.7, 1.0, eps);
    const LimitLadder c = limit_lambda(0.8, 0.3, {Complex{0.1}, Complex{0.2}, Complex{-0.3}}, eps);
    return {a.pass && b.pass && c.pass && a.slope >= 0.9 && b.slope >= 0.9 && c.slope >= 0.9,
            fmt("slopes c3 %.3f c2 %.3f lambda %.3f", a.slope, b.slope, c.slope)};
}

Outcome mixing()
{
    const PhiChain ch = PhiChain::make({Complex{0.3, 0.1}, Complex{-0.4}, Complex{0.2, 0.2}, Complex{0.8}, Complex{}});
    const MixingScan scan = mixing_determinant_scan(ch, Complex{0.3, 0.2}, box(8, 100, 0.5), 5);
    double zero = 0.0, interior = HUGE_VAL;
    for (const MixingCell &c : scan.cells) {
        if (c.expected_zero) {
            zero = std::max(zero, c.det_max);
        } else if (c.s1 > 0.0 && c.s1 < 1.0 && c.t1 > 0.0 && c.t1 < 1.0) {
            interior = std::min(interior, c.det_max);
        }
    }
    return {scan.pass, fmt("pure cells max %.2e interior min %.2e", zero, interior)};
}

Outcome sigma_determinant()
{
    const WeierstrassEvaluator ev(WeierstrassParams{Complex{0.9, -0.3}, Complex{0.2, 0.5}});
    const ResidualReport r = fs_sigma_determinant_residual(ev, box(5, 200, 1.0));
    const WeierstrassEvaluator rational(WeierstrassParams{});
    const auto [lhs, rhs] = fs_sigma_sides(rational, 1.0, 2.0, 4.0);
    const double oracle = std::max(std::abs(lhs - 21.0 / 256.0), std::abs(rhs - 21.0 / 256.0));
    return {r.pass && r.max_abs <= 1e-7 && oracle <= 1e-12, fmt("generic %.2e rational oracle %.2e", r.max_abs, oracle)};
}

Outcome three_body()
{
    EntireFamilyParams e;
    e.gamma = {Complex{0.2}, Complex{0.1}, Complex{-0.1}};
    e.beta = 0.3;
    PolynomialFamilyParams q;
    q.alpha = 0.5;
    q.beta = {Complex{0.2}, Complex{-0.1}, Complex{0.4}};
    DegenerateParams d;
    d.case_id = 1;
    d.f1 = 0.3;
    d.g1 = -0.2;
    d.h1 = 0.5;
    const SolutionTriple ell = make_elliptic_solution(random_elliptic(5));
    const SampleSpec spec = box(3, 100, 1.0);
    double worst = 0.0;
    bool pass = true;
    for (const SolutionTriple &s : {ell, make_entire_solution(e), make_polynomial_solution(q),
                                    make_degenerate_solution(d), make_identical_solution(0.7, 0.2, {0.5, 0.1}).as_triple()}) {
        const ResidualReport r = schrodinger_residual(s, potentials_from_triple(s, 0.1, 0.2, 0.5), spec);
        worst = std::max(worst, r.max_abs);
        pass = pass && r.pass && r.max_abs <= 1e-7;
    }
    const double ratio = fd_convergence_ratio(ell, box(3, 40, 1.0), 1e-2);
    pass = pass && ratio >= 3.5 && ratio <= 4.5;
    return {pass, fmt("schrodinger %.2e fd ratio %.3f", worst, ratio)};
}

Outcome lax()
{
    const auto t0 = std::chrono::steady_clock::now();
    const SampleSpec spec = box(1, 200, 2.0);
    const PairEntrySet rational = rational_preset();
    const PairEntrySet elliptic = elliptic_preset(Complex{0.0, 1.0}, Complex{0.3, 0.2},
                                                  {Complex{1.1, 0.2}, Complex{0.4, -0.3}},
                                                  {Complex{0.1}, Complex{-0.2}, Complex{0.1}});
    const ResidualReport e84 = eq84_residual(rational, spec);
    ThreeBodyState s0;
    s0.q = {-2.0, 0.0, 2.5};
    s0.p = {0.3, -0.1, -0.2};
    const SpectrumReport rep = isospectrality_report(rational, integrate_motion(potential_from_A(rational), s0, 1e-3, 10.0));
    const double drift = std::max({rep.drift[0], rep.drift[1], rep.drift[2]});
    const ResidualReport d91 = det91_residual(b_functions(elliptic), spec);
    double cocycle = 0.0;
    for (const PairEntrySet &set : {rational, hyperbolic_preset(), elliptic}) {
        cocycle = std::max(cocycle, phi_cocycle_residual(set, spec).max_abs);
    }
    const double control = phi_cocycle_residual(random_preset(7), spec).max_abs;
    const double t = seconds_since(t0);
    const bool pass =
        e84.max_abs <= 1e-8 && drift <= 1e-6 && d91.max_abs <= 1e-7 && cocycle <= 1e-9 && control > 1e-2 && t < 30.0;
    return {pass, fmt("eq84 %.2e drift %.2e det91 %.2e cocycle %.2e", e84.max_abs, drift, d91.max_abs, cocycle) +
                      fmt(" control %.3g time %.2fs", control, t)};
}

std::string slurp(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome cli()
{
    const std::string golden = TRIFE_GOLDEN_DIR;
    struct Case {
        std::vector<std::string> args;
        int code;
        std::string expected;
    };
    const std::vector<Case> cases{
        {{"eval", "--config", golden + "/rational.json"}, exit_pass, "eval_rational.json"},
        {{"eval", "--config", golden + "/elliptic.json", "--format", "csv"}, exit_pass, "eval_elliptic.csv"},
        {{"verify", "--config", golden + "/elliptic.json", "--suite", "fe14", "--suite", "det22"}, exit_pass,
         "verify_elliptic.json"},
        {{"verify", "--config", golden + "/entire_literal.json", "--suite", "fe14"}, exit_fail,
         "verify_entire_literal.json"},
        {{"limits"}, exit_pass, "limits.json"},
        {{"verify", "--config", golden + "/elliptic.json", "--suite", "bogus"}, exit_usage, ""},
        {{"eval", "--config", golden + "/malformed.json"}, exit_usage, ""},
        {{}, exit_usage, ""},
    };
    int ok = 0;
    for (const Case &c : cases) {
        std::ostringstream o1, e1, o2, e2;
        const int r1 = run_cli(c.args, o1, e1);
        const int r2 = run_cli(c.args, o2, e2);
        bool good = r1 == c.code && r2 == c.code && o1.str() == o2.str();
        if (!c.expected.empty()) {
            good = good && o1.str() == slurp(golden + "/" + c.expected);
        }
        ok += good ? 1 : 0;
    }
    return {ok == int(cases.size()), fmt("%.0f of %.0f cases", ok, double(cases.size()))};
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 weierstrass core", weierstrass_core},
        {"2 addition theorem", addition_theorem},
        {"3 elliptic family", main_theorem},
        {"4 degenerate families", degenerate_families},
        {"5 reduction chain", reduction_chain},
        {"6 limits", limits},
        {"7 mixing scan", mixing},
        {"8 sigma determinant", sigma_determinant},
        {"9 three-body", three_body},
        {"10 lax", lax},
        {"11 cli", cli},
    };
    int failures = 0;
    for (const auto &[name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception &e) {
            o = {false, std::string("error: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
