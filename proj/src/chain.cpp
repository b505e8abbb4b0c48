#include "trife/chain.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "trife/quadrature.hpp"

namespace trife
{

WeierstrassParams chain_invariants(const ChainConstants &c)
{
    const Complex e = 2.0 * c.c2 / 3.0;
    const Complex q = c.c0 * c.c3 / 4.0;
    return {3.0 * e * e - c.c1 * c.c3 / 2.0, -e * e * e + c.c1 * c.c2 * c.c3 / 6.0 - q * q};
}

namespace
{

struct AlphaTarget {
    Complex v; // p(alpha)
    Complex w; // p'(alpha)
};

double target_residual(const WeierstrassEvaluator &ev, const AlphaTarget &t, Complex a, Complex &rp, Complex &rdp,
                       Complex &jp, Complex &jdp)
{
    const auto vals = ev.evaluate(a);
    if (vals.overflow) {
        return HUGE_VAL;
    }
    rp = vals.p - t.v;
    rdp = vals.dp - t.w;
    jp = vals.dp;
    jdp = 6.0 * vals.p * vals.p - ev.params().g2 / 2.0;
    return std::hypot(std::abs(rp), std::abs(rdp));
}

bool gauss_newton(const WeierstrassEvaluator &ev, const AlphaTarget &t, Complex &a, int max_iter, double tol)
{
    Complex rp, rdp, jp, jdp;
    double res = target_residual(ev, t, a, rp, rdp, jp, jdp);
    const double scale = 1.0 + std::abs(t.v) + std::abs(t.w);
    for (int it = 0; it < max_iter; ++it) {
        if (res <= tol * scale) {
            return true;
        }
        const double jj = std::norm(jp) + std::norm(jdp);
        if (jj == 0.0 || !std::isfinite(jj)) {
            return false;
        }
        const Complex step = -(std::conj(jp) * rp + std::conj(jdp) * rdp) / jj;
        double damping = 1.0;
        bool improved = false;
        for (int k = 0; k < 30; ++k) {
            const Complex trial = a + damping * step;
            if (trial == Complex{}) {
                damping *= 0.5;
                continue;
            }
            Complex trp, trdp, tjp, tjdp;
            double tres;
            try {
                tres = target_residual(ev, t, trial, trp, trdp, tjp, tjdp);
            } catch (const Error &) {
                tres = HUGE_VAL;
            }
            if (tres < res) {
                a = trial;
                res = tres;
                rp = trp;
                rdp = trdp;
                jp = tjp;
                jdp = tjdp;
                improved = true;
                break;
            }
            damping *= 0.5;
        }
        if (!improved) {
            break;
        }
    }
    return res <= 1e3 * tol * scale;
}

} // namespace

Complex solve_alpha_point(const ChainConstants &c, const WeierstrassEvaluator &ev, int max_iter, double tol)
{
    const AlphaTarget t{c.c2 / 3.0, c.c0 * c.c3 / 4.0};
    const auto &g = ev.params();
    const Complex curve = 4.0 * t.v * t.v * t.v - g.g2 * t.v - g.g3;
    if (std::abs(t.w * t.w - curve) > 1e-9 * (1.0 + std::norm(t.w) + std::abs(curve))) {
        throw ConstraintError("target point is not on the curve of the chain invariants");
    }
    const Complex r = t.v == Complex{} ? Complex{1.0} : 1.0 / std::sqrt(t.v);
    std::vector<Complex> seeds;
    for (double mag : {1.0, 0.5, 2.0}) {
        for (double ang : {0.0, 0.25, 0.5, 0.75}) {
            seeds.push_back(mag * r * std::polar(1.0, ang * std::numbers::pi));
        }
    }
    // Every seed that converges gives a lattice translate of the same point;
    // keep the smallest one, which needs the fewest argument halvings later.
    bool found = false;
    Complex best{};
    for (Complex seed : seeds) {
        Complex a = seed;
        try {
            if (gauss_newton(ev, t, a, max_iter, tol) && (!found || std::abs(a) < std::abs(best))) {
                best = a;
                found = true;
            }
        } catch (const Error &) {
            continue;
        }
    }
    if (!found) {
        throw ConvergenceError("no alpha point found from any seed");
    }
    return best;
}

double ode40_residual(Complex u, Complex du, const ChainConstants &c)
{
    const Complex rhs = c.c3 * u * u * u + 4.0 * c.c2 * u * u + 2.0 * c.c1 * u + c.c0 * c.c0;
    return std::abs(du * du - rhs) / (1.0 + std::abs(u) * std::abs(u) * std::abs(u) + std::norm(du));
}

namespace
{

// (u, u') in the psi form.
std::pair<Complex, Complex> u_psi_pair(const ChainConstants &c, const WeierstrassEvaluator &ev, Complex x)
{
    if (x == Complex{}) {
        return {Complex{}, c.c0};
    }
    const auto v = ev.evaluate(x);
    if (v.overflow) {
        // Lattice point of p: u has a simple zero there with slope c0.
        return {Complex{}, c.c0};
    }
    const Complex d = v.p - c.c2 / 3.0;
    if (d == Complex{}) {
        throw PoleError("u has a pole where p(x) = c2/3");
    }
    const Complex ddp = 6.0 * v.p * v.p - ev.params().g2 / 2.0;
    const Complex psi = 0.5 / d;
    const Complex dpsi = -v.dp / (2.0 * d * d);
    const Complex d2psi = -ddp / (2.0 * d * d) + v.dp * v.dp / (d * d * d);
    const Complex k = c.c0 * c.c0 * c.c3 / 2.0;
    return {c.c1 * psi + k * psi * psi + c.c0 * dpsi, c.c1 * dpsi + 2.0 * k * psi * dpsi + c.c0 * d2psi};
}

} // namespace

Complex u_closed_form(const ChainConstants &c, const WeierstrassEvaluator &ev, Complex x)
{
    return u_psi_pair(c, ev, x).first;
}

Complex du_closed_form(const ChainConstants &c, const WeierstrassEvaluator &ev, Complex x)
{
    return u_psi_pair(c, ev, x).second;
}

PhiChain PhiChain::make(const ChainConstants &c, EllipticOptions options)
{
    for (Complex v : {c.c0, c.c1, c.c2, c.c3, c.b3}) {
        require_finite(v, "chain constant");
    }
    if (c.c3 == Complex{}) {
        throw ConstraintError("c3 = 0 has no alpha point; use phi_star or u_closed_form");
    }
    if (c.c0 == Complex{} && c.c1 == Complex{}) {
        throw ConstraintError("c0 = 0 requires c1 != 0");
    }
    PhiChain ch;
    ch.c_ = c;
    ch.ev_ = std::make_shared<const WeierstrassEvaluator>(chain_invariants(c), options);
    ch.alpha_ = solve_alpha_point(c, *ch.ev_);
    const auto v = ch.ev_->evaluate(ch.alpha_);
    ch.p_alpha_ = v.p;
    ch.zeta_alpha_ = v.zeta;
    return ch;
}

Complex PhiChain::u_difference(Complex x) const
{
    return 4.0 / c_.c3 * (ev_->p(x + alpha_) - p_alpha_);
}

Complex PhiChain::u_psi(Complex x) const { return u_closed_form(c_, *ev_, x); }

Complex PhiChain::u(Complex x) const
{
    return std::abs(x) < 0.5 * std::abs(alpha_) ? u_psi(x) : u_difference(x);
}

Complex PhiChain::du(Complex x) const
{
    if (std::abs(x) < 0.5 * std::abs(alpha_)) {
        return du_closed_form(c_, *ev_, x);
    }
    return 4.0 / c_.c3 * ev_->p_prime(x + alpha_);
}

Complex PhiChain::d2u(Complex x) const
{
    const Complex uu = u(x);
    return 1.5 * c_.c3 * uu * uu + 4.0 * c_.c2 * uu + c_.c1;
}

Complex PhiChain::phi(Complex x) const
{
    // The zeta difference cancels to O(x^2); a short Taylor series is exact
    // to rounding there.
    if (std::abs(x) < 1e-3 * std::min(1.0, std::abs(alpha_))) {
        const Complex x2 = x * x;
        return c_.c0 * x2 / 2.0 + c_.c1 * x2 * x / 6.0 + c_.c2 * c_.c0 * x2 * x2 / 6.0 +
               (3.0 * c_.c3 * c_.c0 * c_.c0 + 4.0 * c_.c2 * c_.c1) * x2 * x2 * x / 120.0;
    }
    const auto v = ev_->evaluate(x + alpha_);
    if (v.overflow) {
        throw PoleError("phi evaluated at a pole");
    }
    return 4.0 / c_.c3 * (zeta_alpha_ - v.zeta - p_alpha_ * x);
}

// ---------------------------------------------------------------------------
// Entire helpers.

namespace
{

constexpr double series_cut = 1.0;
constexpr int series_terms = 30;

// sum_{n>=0} w^n / (2n + offset)! scaled: offset 0 -> cosh, 1 -> sinhc,
// 2 -> (cosh - 1)/w, 3 -> (sinh - s)/s^3.
Complex even_odd_series(Complex w, int offset)
{
    Complex term = 1.0;
    for (int k = 1; k <= offset; ++k) {
        term /= double(k);
    }
    Complex sum = term;
    for (int n = 1; n < series_terms; ++n) {
        term *= w / (double(2 * n + offset - 1) * double(2 * n + offset));
        sum += term;
    }
    return sum;
}

} // namespace

Complex sinhc_sqrt(Complex w)
{
    if (std::abs(w) < series_cut) {
        return even_odd_series(w, 1);
    }
    const Complex s = std::sqrt(w);
    return std::sinh(s) / s;
}

Complex cosh_sqrt(Complex w)
{
    if (std::abs(w) < series_cut) {
        return even_odd_series(w, 0);
    }
    return std::cosh(std::sqrt(w));
}

Complex cosh1_sqrt(Complex w)
{
    if (std::abs(w) < series_cut) {
        return even_odd_series(w, 2);
    }
    return (std::cosh(std::sqrt(w)) - 1.0) / w;
}

Complex sinh3_sqrt(Complex w)
{
    if (std::abs(w) < series_cut) {
        return even_odd_series(w, 3);
    }
    const Complex s = std::sqrt(w);
    return (std::sinh(s) - s) / (w * s);
}

Complex StarChain::u(Complex x) const
{
    const Complex w = 4.0 * c2 * x * x;
    return c1 * x * x * cosh1_sqrt(w) + c0 * x * sinhc_sqrt(w);
}

Complex StarChain::du(Complex x) const
{
    const Complex w = 4.0 * c2 * x * x;
    return c1 * x * sinhc_sqrt(w) + c0 * cosh_sqrt(w);
}

Complex StarChain::phi(Complex x) const
{
    const Complex w = 4.0 * c2 * x * x;
    return c1 * x * x * x * sinh3_sqrt(w) + c0 * x * x * cosh1_sqrt(w);
}

Complex StarChain::tau(Complex x) const { return x * sinhc_sqrt(c2 * x * x); }

Complex StarChain::A(Complex x) const
{
    const Complex w = c2 * x * x;
    return c1 / 2.0 * x * sinhc_sqrt(w) + c0 * cosh_sqrt(w);
}

// ---------------------------------------------------------------------------

TauA tau_A_from_u(ScalarFn u, ScalarFn du, Complex c0, Complex c1, double abs_tol)
{
    TauA out;
    if (c0 == Complex{}) {
        if (c1 == Complex{}) {
            throw ConstraintError("c0 = 0 requires c1 != 0");
        }
        // u = (c1/2) tau^2, branch with tau ~ x at the origin.
        out.tau = [u, c1](Complex x) {
            if (x == Complex{}) {
                return Complex{};
            }
            Complex t = std::sqrt(2.0 * u(x) / c1);
            if (std::real(t / x) < 0.0) {
                t = -t;
            }
            return t;
        };
        out.dtau = [u, du, c1, tau = out.tau](Complex x) {
            if (x == Complex{}) {
                return Complex{1.0};
            }
            return du(x) / (c1 * tau(x));
        };
        out.A = [c1, tau = out.tau](Complex x) { return c1 / 2.0 * tau(x); };
        out.dA = [c1, dtau = out.dtau](Complex x) { return c1 / 2.0 * dtau(x); };
        return out;
    }

    // g(t) = tau'/tau - 1/t, analytic at 0 with g(0) = 0.
    auto g = [u, du, c0](Complex t) { return 0.5 * (du(t) + c0) / u(t) - 1.0 / t; };
    auto log_tau = [g, abs_tol](Complex x) {
        constexpr double start = 1e-4;
        const Complex t0 = std::abs(x) <= start ? x : x * (start / std::abs(x));
        Complex acc = 0.5 * g(t0) * t0;
        if (t0 != x) {
            acc += integrate_segment(g, t0, x, abs_tol);
        }
        return std::log(x) + acc;
    };
    out.tau = [log_tau](Complex x) { return x == Complex{} ? Complex{} : std::exp(log_tau(x)); };
    out.dtau = [u, du, c0, tau = out.tau](Complex x) {
        if (x == Complex{}) {
            return Complex{1.0};
        }
        return tau(x) * (du(x) + c0) / (2.0 * u(x));
    };
    out.A = [u, c0, log_tau](Complex x) {
        if (x == Complex{}) {
            return c0;
        }
        return u(x) * std::exp(-log_tau(x));
    };
    out.dA = [u, du, c0, c1, A = out.A](Complex x) {
        if (x == Complex{}) {
            return c1 / 2.0;
        }
        return A(x) * (du(x) - c0) / (2.0 * u(x));
    };
    return out;
}

Quadruple xi_eta_gamma_from_phi(ScalarFn phi, ScalarFn u, ScalarFn du, Complex b3, Complex c0)
{
    Quadruple q;
    q.phi = phi;
    q.xi = [u, du, b3, c0](Complex x) {
        const Complex uu = u(x);
        const Complex den = c0 - 2.0 * b3 * uu + du(x);
        if (den == Complex{}) {
            throw PoleError("xi has a pole: c0 - 2 b3 u + u' = 0");
        }
        return 2.0 * uu / den;
    };
    q.eta = [phi, u, xi = q.xi](Complex x) { return phi(x) - u(x) * xi(x); };
    q.gamma = [u, xi = q.xi](Complex x) {
        const Complex s = xi(x);
        return -u(x) * s * s;
    };
    return q;
}

ScalarFn xi_from_tau(const TauA &ta, Complex b3)
{
    return [ta, b3](Complex x) {
        if (x == Complex{}) {
            return Complex{};
        }
        const Complex t = ta.tau(x);
        const Complex den = ta.dtau(x) - b3 * t;
        if (den == Complex{}) {
            throw PoleError("xi has a pole: tau' = b3 tau");
        }
        return t / den;
    };
}

Quadruple chain_double_star(Complex c0, Complex c1, Complex b3)
{
    Quadruple q;
    auto u = [c0, c1](Complex x) { return c1 * x * x / 2.0 + c0 * x; };
    q.phi = [c0, c1](Complex x) { return c1 * x * x * x / 6.0 + c0 * x * x / 2.0; };
    q.xi = [b3](Complex x) {
        const Complex den = 1.0 - b3 * x;
        if (den == Complex{}) {
            throw PoleError("xi** has a pole at 1/b3");
        }
        return x / den;
    };
    q.eta = [u, phi = q.phi, xi = q.xi](Complex x) { return phi(x) - u(x) * xi(x); };
    q.gamma = [u, xi = q.xi](Complex x) {
        const Complex s = xi(x);
        return -u(x) * s * s;
    };
    return q;
}

Quadruple group_action_33(const Quadruple &q, Complex b1, Complex b2)
{
    if (b2 == Complex{}) {
        throw ConstraintError("group action requires b2 != 0");
    }
    Quadruple r;
    r.phi = q.phi;
    r.eta = [eta = q.eta, xi = q.xi, b1](Complex x) { return eta(x) + b1 * xi(x); };
    r.xi = [xi = q.xi, b2](Complex x) { return b2 * xi(x); };
    r.gamma = [gamma = q.gamma, xi = q.xi, b1, b2](Complex x) {
        const Complex s = xi(x);
        return b2 * (gamma(x) + b1 * s * s);
    };
    return r;
}

std::pair<Complex, Complex> compose_33(std::pair<Complex, Complex> first, std::pair<Complex, Complex> second)
{
    return {first.first + first.second * second.first, first.second * second.second};
}

Quadruple normalize(const Quadruple &q, double step)
{
    auto deriv0 = [step](const ScalarFn &fn) {
        const double h = step;
        return (fn(-2.0 * h) - 8.0 * fn(-h) + 8.0 * fn(h) - fn(2.0 * h)) / (12.0 * h);
    };
    const Complex dxi = deriv0(q.xi);
    if (std::abs(dxi) < 1e-12) {
        throw DegenerateError("xi'(0) vanishes; orbit has no normalised representative");
    }
    const Complex deta = deriv0(q.eta);
    return group_action_33(q, -deta / dxi, 1.0 / dxi);
}

ChainFunctions chain_functions(const PhiChain &chain)
{
    ChainFunctions out;
    const auto self = std::make_shared<const PhiChain>(chain);
    out.u = [self](Complex x) { return self->u(x); };
    out.du = [self](Complex x) { return self->du(x); };
    out.phi = [self](Complex x) { return self->phi(x); };
    const auto &c = chain.constants();
    out.tau_a = tau_A_from_u(out.u, out.du, c.c0, c.c1);
    out.quad = xi_eta_gamma_from_phi(out.phi, out.u, out.du, c.b3, c.c0);
    return out;
}

SolutionTriple triad_from_chain(const PhiChain &chain, Complex alpha1, Complex s1, Complex t1, bool allow_mixing)
{
    require_finite(alpha1, "alpha1");
    const bool pure = (s1 == Complex{1.0} && t1 == Complex{}) || (s1 == Complex{} && t1 == Complex{1.0});
    if (!pure && !allow_mixing) {
        throw ConstraintError("mixing coefficients other than (1,0) or (0,1) do not give a solution");
    }
    const auto &ev = chain.evaluator();
    const Complex k = 2.0 / chain.constants().c3;
    const Complex alpha = chain.alpha();

    EllipticTriadParams p;
    p.alpha = -k;
    p.beta = -k * chain.p_alpha();
    p.a1 = alpha1 - alpha / 2.0;
    p.a2 = -alpha1 - alpha / 2.0;
    p.weier = chain.weier();
    p.options = ev->options();
    const auto shifts = p.shifts();
    for (int j = 0; j < 3; ++j) {
        const auto v = ev->evaluate(shifts[j]);
        if (v.overflow) {
            throw ConstraintError("alpha1 places a shift on a lattice point");
        }
        p.gamma[j] = -k * v.zeta;
    }
    SolutionTriple base = make_elliptic_solution(p, ev);
    if (s1 == Complex{1.0} && t1 == Complex{}) {
        return base;
    }
    const Complex s2 = 1.0 - s1;
    const Complex t2 = 1.0 - t1;
    SolutionTriple mixed = base;
    auto mix = [](const Slot &a, const Slot &b, Complex wa, Complex wb) {
        Slot s;
        s.value = [fa = a.value, fb = b.value, wa, wb](Complex x) { return wa * fa(x) + wb * fb(x); };
        s.d1 = [fa = a.d1, fb = b.d1, wa, wb](Complex x) { return wa * fa(x) + wb * fb(x); };
        s.d2 = [fa = a.d2, fb = b.d2, wa, wb](Complex x) { return wa * fa(x) + wb * fb(x); };
        s.big = [fa = a.big, fb = b.big, wa, wb](Complex x) { return wa * fa(x) + wb * fb(x); };
        s.poles = a.poles;
        s.poles.insert(s.poles.end(), b.poles.begin(), b.poles.end());
        return s;
    };
    mixed.slots[0] = mix(base.slots[0], base.slots[1], s1, s2);
    mixed.slots[1] = mix(base.slots[0], base.slots[1], t1, t2);
    mixed.note = pure ? "swapped" : "mixed (not a solution in general)";
    return mixed;
}

} // namespace trife
