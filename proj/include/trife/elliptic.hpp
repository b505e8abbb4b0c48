#ifndef TRIFE_ELLIPTIC_HPP
#define TRIFE_ELLIPTIC_HPP

#include <vector>

#include "trife/core.hpp"

namespace trife
{

/// Invariants (g2, g3) of a Weierstrass function. (0, 0) is legal and gives
/// the rational degeneration p(z) = 1/z^2.
struct WeierstrassParams {
    Complex g2{};
    Complex g3{};
};

struct EllipticOptions {
    int series_order = 30;           // number of Laurent coefficients c_2..c_{order+1}
    double radius_factor = 0.3;      // trusted radius = factor * min(1, |g2|^-1/4, |g3|^-1/6)
    int max_halvings = 60;
    double overflow_threshold = 1e12;
    double log_sigma_switch = 1e100; // |sigma| above this is handled in log space
};

/// Everything one reduction/duplication pass produces. When `overflow` is set
/// the point is lattice-adjacent and the numeric fields are not meaningful.
struct WeierstrassValues {
    Complex p;
    Complex dp;
    Complex zeta;
    Complex log_sigma; // defined modulo 2*pi*i
    int halvings = 0;
    bool overflow = false;

    Complex sigma() const { return std::exp(log_sigma); }
};

/**
 * Local evaluator for p, p', zeta and sigma with arbitrary complex invariants.
 *
 * The argument is halved until it lies inside the trusted radius, the
 * truncated Laurent series is summed there, and the duplication formulas are
 * applied once per halving:
 *
 *   p(2z)    = (p''/p')^2 / 4 - 2 p,   p'' = 6 p^2 - g2/2
 *   p'(2z)   = tangent doubling on y^2 = 4x^3 - g2 x - g3
 *   zeta(2z) = 2 zeta(z) + p''/(2 p')
 *   sigma(2z)= -sigma(z)^4 p'(z)
 *
 * No lattice periods are computed. Pole proximity is detected purely by the
 * magnitude of p against `overflow_threshold`.
 *
 * Immutable after construction; safe to share between threads.
 */
class WeierstrassEvaluator
{
public:
    explicit WeierstrassEvaluator(WeierstrassParams params, EllipticOptions options = {});

    const WeierstrassParams &params() const { return params_; }
    const EllipticOptions &options() const { return options_; }
    double trusted_radius() const { return radius_; }

    /// Laurent coefficients indexed by k; entries 0 and 1 are zero.
    /// p(z) = 1/z^2 + sum_{k>=2} c_k z^{2k-2}.
    const std::vector<Complex> &coefficients() const { return coeffs_; }

    /// Full evaluation without throwing on overflow. Throws PoleError for
    /// z = 0 and ReductionError when halving does not converge.
    WeierstrassValues evaluate(Complex z) const;

    // Scalar accessors throw PoleError when the overflow flag is raised.
    Complex p(Complex z) const;
    Complex p_prime(Complex z) const;
    Complex p_second(Complex z) const;
    Complex zeta(Complex z) const;
    Complex sigma(Complex z) const;
    Complex log_sigma(Complex z) const;

    /// Raw truncated series at small argument, no reduction.
    WeierstrassValues series(Complex z) const;

private:
    WeierstrassParams params_;
    EllipticOptions options_;
    double radius_ = 0.0;
    std::vector<Complex> coeffs_;
};

/// Laurent coefficients c_2..c_{2+count-1} from the standard recursion
/// c_k = 3/((2k+1)(k-3)) sum_{m=2}^{k-2} c_m c_{k-m}.
std::vector<Complex> laurent_coefficients(WeierstrassParams params, int count);

/**
 * Residual of the addition theorem written around p(alpha):
 *
 *   p(x+a) - p(a) = -p'(x) p'(a) / (2 D^2) + (3 p(a)^2 - g2/4) / D + p'(a)^2 / (2 D^2)
 *
 * with D = p(x) - p(a). Returns |lhs - rhs| / (1 + |lhs|). Throws
 * DegenerateError when |D| < 1e-12 and PoleError when any point overflows.
 */
double p_addition_residual(const WeierstrassEvaluator &ev, Complex x, Complex alpha);

// Pointwise property checks. Each returns a relative residual and throws
// PoleError when a point overflows.

/// |p'^2 - (4 p^3 - g2 p - g3)| / (1 + |p|^3).
double p_ode_residual(const WeierstrassEvaluator &ev, Complex z);

/// Max relative gap of p(-z) = p(z), p'(-z) = -p'(z), zeta(-z) = -zeta(z),
/// sigma(-z) = -sigma(z).
double parity_residual(const WeierstrassEvaluator &ev, Complex z);

/// Max relative gap of p(l z; l^-4 g2, l^-6 g3) = l^-2 p(z), zeta ~ l^-1,
/// sigma ~ l for real scale l.
double homogeneity_residual(const WeierstrassEvaluator &ev, double scale, Complex z);

/// Max relative gap between the (0, 0) evaluator and 1/z^2, -2/z^3, 1/z, z.
double rational_closure_residual(const WeierstrassEvaluator &rational, Complex z);

/// Relative gap between evaluate(z) and the raw series at small |z|.
double laurent_consistency_residual(const WeierstrassEvaluator &ev, Complex z);

} // namespace trife

#endif
