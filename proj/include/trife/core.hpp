#ifndef TRIFE_CORE_HPP
#define TRIFE_CORE_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace trife
{

using Complex = std::complex<double>;

/// A scalar field of one complex variable.
using ScalarFn = std::function<Complex(Complex)>;

inline bool is_finite(Complex z)
{
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Error hierarchy. Every failure the library reports derives from Error so
// callers can catch broadly; samplers catch PoleError specifically and count
// the sample as skipped.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation hit a pole: the argument is the origin of a series, or a
/// magnitude threshold flagged lattice proximity.
class PoleError : public Error
{
public:
    using Error::Error;
};

/// Argument halving never reached the trusted radius.
class ReductionError : public Error
{
public:
    using Error::Error;
};

/// Parameters violate a documented constraint.
class ConstraintError : public Error
{
public:
    using Error::Error;
};

/// A configuration that makes an identity's denominators vanish.
class DegenerateError : public Error
{
public:
    using Error::Error;
};

class ConvergenceError : public Error
{
public:
    using Error::Error;
};

class QuadratureError : public Error
{
public:
    using Error::Error;
};

/// Particles came within the exclusion radius during integration.
class ProximityError : public Error
{
public:
    ProximityError(const std::string &what, double time, int j, int k)
        : Error(what), time_(time), pair_{j, k}
    {}

    double time() const { return time_; }
    std::pair<int, int> pair() const { return pair_; }

private:
    double time_;
    std::pair<int, int> pair_;
};

inline void require_finite(Complex z, const char *name)
{
    if (!is_finite(z)) {
        throw ConstraintError(std::string(name) + " must be finite");
    }
}

} // namespace trife

#endif
