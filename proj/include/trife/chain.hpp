#ifndef TRIFE_CHAIN_HPP
#define TRIFE_CHAIN_HPP

#include <memory>

#include "trife/core.hpp"
#include "trife/elliptic.hpp"
#include "trife/families.hpp"

namespace trife
{

/// Constants of the reduction chain: phi''(0) = c0, phi'''(0) = c1,
/// tau'''(0) = c2, the cubic coefficient c3 of the first-order ODE for u,
/// and the free parameter b3 = xi''(0).
struct ChainConstants {
    Complex c0{};
    Complex c1{};
    Complex c2{};
    Complex c3{};
    Complex b3{};
};

/// Invariants of the p-function solving (u')^2 = c3 u^3 + 4 c2 u^2 + 2 c1 u + c0^2:
///   g2 = 3 (2 c2/3)^2 - c1 c3 / 2,
///   g3 = -(2 c2/3)^3 + c1 c2 c3 / 6 - (c0 c3 / 4)^2.
WeierstrassParams chain_invariants(const ChainConstants &c);

/// Point alpha with p(alpha) = c2/3 and p'(alpha) = c0 c3 / 4.
/// Damped Gauss-Newton on both conditions, seeded from the series inverse
/// alpha0 = (c2/3)^{-1/2} and rotated/scaled fallback seeds; the smallest
/// converged point is returned.
Complex solve_alpha_point(const ChainConstants &c, const WeierstrassEvaluator &ev, int max_iter = 100,
                          double tol = 1e-12);

/// (u')^2 - (c3 u^3 + 4 c2 u^2 + 2 c1 u + c0^2), normalised by 1 + |u|^3.
double ode40_residual(Complex u, Complex du, const ChainConstants &c);

/// u = c1 psi + (c0^2 c3 / 2) psi^2 + c0 psi', psi = 1 / (2 (p(x) - c2/3)).
/// Needs no alpha point, so it stays usable as c3 -> 0.
Complex u_closed_form(const ChainConstants &c, const WeierstrassEvaluator &ev, Complex x);
/// Derivative of the psi form.
Complex du_closed_form(const ChainConstants &c, const WeierstrassEvaluator &ev, Complex x);

/**
 * A fully resolved chain with c3 != 0: invariants, evaluator and alpha point.
 *
 *   u(x)   = (4/c3) (p(x + alpha) - p(alpha))
 *   phi(x) = (4/c3) (zeta(alpha) - zeta(x + alpha) - p(alpha) x)
 *
 * so that phi' = u, u(0) = 0, u'(0) = c0.
 */
class PhiChain
{
public:
    static PhiChain make(const ChainConstants &c, EllipticOptions options = {});

    const ChainConstants &constants() const { return c_; }
    const WeierstrassParams &weier() const { return ev_->params(); }
    const std::shared_ptr<const WeierstrassEvaluator> &evaluator() const { return ev_; }
    Complex alpha() const { return alpha_; }
    Complex p_alpha() const { return p_alpha_; }
    Complex zeta_alpha() const { return zeta_alpha_; }

    /// The difference form above. Loses relative accuracy near x = 0.
    Complex u_difference(Complex x) const;
    /// The psi form; accurate near the origin.
    Complex u_psi(Complex x) const;
    /// Picks whichever form is better conditioned at x.
    Complex u(Complex x) const;
    Complex du(Complex x) const;
    /// u'' from differentiating the ODE: 3 c3 u^2 / 2 + 4 c2 u + c1.
    Complex d2u(Complex x) const;
    Complex phi(Complex x) const;

private:
    ChainConstants c_;
    std::shared_ptr<const WeierstrassEvaluator> ev_;
    Complex alpha_{};
    Complex p_alpha_{};
    Complex zeta_alpha_{};
};

/// Hyperbolic degeneration (c3 = 0), entire in c2:
///   u*(x)   = c1 (cosh 2 s x - 1)/(2s)^2 + c0 sinh(2 s x)/(2 s)
///   phi*(x) = c1 (sinh 2 s x - 2 s x)/(2s)^3 + c0 (cosh 2 s x - 1)/(2s)^2
///   tau*(x) = sinh(s x)/s,   A*(x) = (c1/2) sinh(s x)/s + c0 cosh(s x)
/// with s = sqrt(c2). Evaluated through power series near w = 0, so c2 = 0
/// yields the polynomial limit without special casing.
struct StarChain {
    Complex c0{}, c1{}, c2{};

    Complex u(Complex x) const;
    Complex du(Complex x) const;
    Complex phi(Complex x) const;
    Complex tau(Complex x) const;
    Complex A(Complex x) const;
};

inline StarChain phi_star(Complex c0, Complex c1, Complex c2) { return {c0, c1, c2}; }

// Entire helpers: sinh(sqrt w)/sqrt w, cosh(sqrt w), (cosh sqrt w - 1)/w,
// (sinh sqrt w - sqrt w)/w^{3/2}. Exposed for tests.
Complex sinhc_sqrt(Complex w);
Complex cosh_sqrt(Complex w);
Complex cosh1_sqrt(Complex w);
Complex sinh3_sqrt(Complex w);

struct TauA {
    ScalarFn tau;
    ScalarFn dtau;
    ScalarFn A;
    ScalarFn dA;
};

/**
 * tau and A from u via tau'/tau = (u' + c0)/(2u), tau(0) = 0, tau'(0) = 1,
 * and A = u / tau. The log-derivative minus 1/t is integrated along the
 * segment 0 -> x by adaptive Simpson; the removable singularity at the
 * origin is bridged by a linear start on |t| <= 1e-4. For c0 = 0 the closed
 * forms u = (c1/2) tau^2, A = (c1/2) tau are used instead.
 */
TauA tau_A_from_u(ScalarFn u, ScalarFn du, Complex c0, Complex c1, double abs_tol = 1e-10);

/// Quadruple (phi, eta, xi, gamma) solving
///   phi(x+y) = eta(x) + eta(y) - (gamma(x) - gamma(y)) / (xi(x) - xi(y)).
struct Quadruple {
    ScalarFn phi;
    ScalarFn eta;
    ScalarFn xi;
    ScalarFn gamma;
};

/// xi = 2u / (c0 - 2 b3 u + u'), eta = phi - u xi, gamma = -u xi^2.
Quadruple xi_eta_gamma_from_phi(ScalarFn phi, ScalarFn u, ScalarFn du, Complex b3, Complex c0);

/// The alternative xi = tau / (tau' - b3 tau), for cross-checking.
ScalarFn xi_from_tau(const TauA &ta, Complex b3);

/// c2 -> 0 limit: phi** = c1 x^3/6 + c0 x^2/2, xi** = x/(1 - b3 x), etc.
Quadruple chain_double_star(Complex c0, Complex c1, Complex b3);

/// (phi, eta, xi, gamma) -> (phi, eta + b1 xi, b2 xi, b2 (gamma + b1 xi^2)); b2 != 0.
Quadruple group_action_33(const Quadruple &q, Complex b1, Complex b2);

/// Group law: acting with (b1, b2) then (b1', b2') equals acting with
/// (b1 + b2 b1', b2 b2').
std::pair<Complex, Complex> compose_33(std::pair<Complex, Complex> first, std::pair<Complex, Complex> second);

/// Moves q to the normalised representative of its orbit (xi'(0) = 1,
/// eta'(0) = 0). Derivatives at 0 come from a five-point stencil.
Quadruple normalize(const Quadruple &q, double step = 1e-3);

/// Everything the chain produces for one set of constants.
struct ChainFunctions {
    ScalarFn u, du, phi;
    TauA tau_a;
    Quadruple quad;
};

ChainFunctions chain_functions(const PhiChain &chain);

/**
 * Solution triple rebuilt from a chain and a free point alpha1:
 *
 *   h(x) = (2/c3) (zeta(alpha - x) - p(alpha) x - zeta(alpha))
 *   f(x) = (2/c3) (zeta(alpha1 - alpha/2 - x) - p(alpha) x - zeta(alpha1 - alpha/2))
 *   g(x) = (2/c3) (zeta(-alpha1 - alpha/2 - x) - p(alpha) x + zeta(alpha1 + alpha/2))
 *
 * Mixing f1 = s1 f + s2 g, g1 = t1 f + t2 g (s2 = 1 - s1, t2 = 1 - t1) only
 * yields a solution for (s1, t1) in {(1, 0), (0, 1)}; other pairs are
 * rejected unless `allow_mixing` is set, which is meant for negative tests.
 */
SolutionTriple triad_from_chain(const PhiChain &chain, Complex alpha1, Complex s1 = 1.0, Complex t1 = 0.0,
                                bool allow_mixing = false);

} // namespace trife

#endif
