#ifndef TRIFE_LIMITS_HPP
#define TRIFE_LIMITS_HPP

#include <string>
#include <vector>

#include "trife/core.hpp"
#include "trife/families.hpp"

namespace trife
{

/// Deviation of a parameter family from its limit at each epsilon, plus the
/// least-squares slope of log(deviation) against log(epsilon).
struct LimitLadder {
    std::string name;
    std::vector<double> eps;
    std::vector<double> deviation;
    double slope = 0.0;
    double min_slope = 0.9;
    bool pass = false;
};

std::vector<double> default_epsilons();

/// Throws ConstraintError unless every epsilon is finite and positive and
/// there are at least two distinct values.
void validate_epsilons(const std::vector<double> &eps);

/// Fitted slope of log y against log x.
double loglog_slope(const std::vector<double> &x, const std::vector<double> &y);

/// Uniform real grid of `n` points on [-half_width, half_width].
std::vector<Complex> limit_grid(int n = 41, double half_width = 1.0);

/// c3 -> 0: max over the grid of |u(x; c3 = eps) - u*(x)|, u from the psi
/// form of the elliptic chain and u* the hyperbolic degeneration.
LimitLadder limit_c3(Complex c0, Complex c1, Complex c2, const std::vector<double> &eps,
                     const std::vector<Complex> &grid = limit_grid());

/// c2 -> 0: max over the grid of |phi*(x; c2 = eps) - phi**(x)|.
LimitLadder limit_c2(Complex c0, Complex c1, const std::vector<double> &eps,
                     const std::vector<Complex> &grid = limit_grid());

/// lambda -> 0: entire family with alpha_i = 2 a / lambda^2, beta = b - 2 a / lambda
/// and gamma_i = g_i - 2 a / lambda^2 against the polynomial family
/// f_i = a x^2 + b x + g_i. Only the small functions are compared; the big
/// ones carry 1/lambda^4 constants.
LimitLadder limit_lambda(Complex a, Complex b, std::array<Complex, 3> g, const std::vector<double> &eps,
                         const std::vector<Complex> &grid = limit_grid());

} // namespace trife

#endif
