#ifndef TRIFE_QUADRATURE_HPP
#define TRIFE_QUADRATURE_HPP

#include "trife/core.hpp"

namespace trife
{

/// Adaptive Simpson along the straight segment a -> b in the complex plane.
/// Throws QuadratureError when the recursion depth is exhausted or the
/// integrand turns non-finite.
Complex integrate_segment(const ScalarFn &fn, Complex a, Complex b, double abs_tol = 1e-10,
                          int max_depth = 40);

/// Fixed 10-point Gauss-Legendre rule on a -> b. Meant for short segments
/// where the integrand is smooth; no error control.
Complex gauss_legendre_segment(const ScalarFn &fn, Complex a, Complex b);

} // namespace trife

#endif
