#ifndef TRIFE_TEST_HELPERS_HPP
#define TRIFE_TEST_HELPERS_HPP

#include <cmath>
#include <complex>

#include "trife/verification.hpp"

namespace testing
{

using trife::Complex;

inline double rel_err(Complex got, Complex want) { return std::abs(got - want) / std::max(1e-300, std::abs(want)); }

/// Deterministic uniform in [lo, hi) from (seed, counter).
inline double uniform(std::uint64_t seed, std::uint64_t n, double lo = -1.0, double hi = 1.0)
{
    return lo + (hi - lo) * trife::counter_uniform(seed, n);
}

inline Complex cuniform(std::uint64_t seed, std::uint64_t n, double half = 1.0)
{
    return {uniform(seed, 2 * n, -half, half), uniform(seed, 2 * n + 1, -half, half)};
}

inline trife::SampleSpec box(std::uint64_t seed, int count, double half)
{
    trife::SampleSpec s;
    s.seed = seed;
    s.count = count;
    s.domain = {-half, half, -half, half};
    return s;
}

/// Invariants of the degenerate lattice whose p is 1/sinh^2 z + 1/3.
inline trife::WeierstrassParams sinh_lattice() { return {Complex{4.0 / 3.0}, Complex{-8.0 / 27.0}}; }

} // namespace testing

#endif
