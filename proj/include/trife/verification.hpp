#ifndef TRIFE_VERIFICATION_HPP
#define TRIFE_VERIFICATION_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trife/chain.hpp"
#include "trife/core.hpp"
#include "trife/elliptic.hpp"
#include "trife/families.hpp"

namespace trife
{

struct Rect {
    double re_min = -2.0;
    double re_max = 2.0;
    double im_min = -2.0;
    double im_max = 2.0;
};

struct SampleSpec {
    std::uint64_t seed = 0;
    int count = 200;
    Rect domain{};
    double pole_exclusion_radius = 0.05;

    void validate() const;
};

/// splitmix64 applied to (seed, counter). Stateless, so any draw can be
/// recomputed from its index.
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t counter);
double counter_uniform(std::uint64_t seed, std::uint64_t counter); // [0, 1)

/// Point number `index`, coordinate `slot` (0, 1, 2, ...) of the sample stream.
Complex sample_point(const SampleSpec &spec, std::uint64_t index, int slot);

struct ResidualReport {
    std::string name;
    int samples = 0;
    double max_abs = 0.0;
    double mean_abs = 0.0;
    std::pair<Complex, Complex> worst_point{};
    double tolerance = 0.0;
    bool pass = false;
    int skipped = 0;
    std::string note;
};

/// Combines reports over disjoint sample blocks: max of maxima, sample-weighted
/// mean, summed counts. The tolerance of `a` is kept.
ResidualReport merge(const ResidualReport &a, const ResidualReport &b);

/// One sample of a two-point residual. Returning std::nullopt, or throwing
/// PoleError / DegenerateError / QuadratureError, marks the sample skipped.
using PairResidual = std::function<std::optional<double>(Complex x, Complex y)>;

/// Runs `fn` on spec.count pairs (x, y). Throws Error when every sample is
/// skipped.
ResidualReport sample_pairs(const std::string &name, const SampleSpec &spec, double tol, const PairResidual &fn);

/// True when x, y or z = -x-y is within the exclusion radius of one of the
/// declared poles of the triple (slot 0 for x, 1 for y, 2 for z).
bool near_declared_pole(const SolutionTriple &s, Complex x, Complex y, double radius);

// Pointwise residuals -------------------------------------------------------

/// |(f+g+h)^2 - (F+G+H)| / (1 + |F| + |G| + |H|) at z = -x-y.
double fe14_point(const SolutionTriple &s, Complex x, Complex y);

/// |det[[f'',g'',h''],[f',g',h'],[1,1,1]]| divided by the product of row norms.
double det22_point(const SolutionTriple &s, Complex x, Complex y);

/// |phi(x+y) - eta(x) - eta(y) + (gamma(x)-gamma(y))/(xi(x)-xi(y))| / (1 + sum of term magnitudes).
double eq32_point(const Quadruple &q, Complex x, Complex y);

/// |phi(x+y) - phi(x) - phi(y) - tau(x) tau(y) A(x+y)| / (1 + sum of term magnitudes).
double eq34_point(const ScalarFn &phi, const ScalarFn &tau, const ScalarFn &A, Complex x, Complex y);

/// A(x+y) + (phi'(x) - phi'(y)) / (tau'(x) tau(y) - tau(x) tau'(y)), normalised.
double eq38_point(const ScalarFn &dphi, const TauA &ta, Complex x, Complex y);

/// Frobenius-Stickelberger: with rows (1, p, p') the identity reads
///   det/2 = sigma(x+y+z) sigma(x-y) sigma(y-z) sigma(z-x) / (sigma(x) sigma(y) sigma(z))^3.
/// Returns |lhs * exp(-log rhs) - 1| for a generic triple, or max(|lhs|, |rhs|)
/// when x + y + z is (numerically) zero and both sides vanish.
double fs_sigma_point(const WeierstrassEvaluator &ev, Complex x, Complex y, Complex z);

/// Both sides of the identity above, for inspection.
std::pair<Complex, Complex> fs_sigma_sides(const WeierstrassEvaluator &ev, Complex x, Complex y, Complex z);

// Suites --------------------------------------------------------------------

ResidualReport fe14_residual(const SolutionTriple &s, const SampleSpec &spec, double tol = 1e-8);
ResidualReport det22_residual(const SolutionTriple &s, const SampleSpec &spec, double tol = 1e-7);

/// Pair-product form f(x)f(y) + f(y)f(z) + f(z)f(x) = F(x) + F(y) + F(z).
/// The raw difference is divided by 1 + |F(x)| + |F(y)| + |F(z)|.
ResidualReport sutherland4_residual(const ScalarFn &f, const ScalarFn &F, const SampleSpec &spec,
                                    double tol = 1e-10);
ResidualReport sutherland4_residual(const IdenticalSolution &s, const SampleSpec &spec, double tol = 1e-10);

ResidualReport eq32_residual(const Quadruple &q, const SampleSpec &spec, double tol = 1e-8);
ResidualReport eq34_residual(const ScalarFn &phi, const ScalarFn &tau, const ScalarFn &A, const SampleSpec &spec,
                             double tol = 1e-8);
ResidualReport eq38_residual(const ScalarFn &dphi, const TauA &ta, const SampleSpec &spec, double tol = 1e-7);

/// ODE residual of u along x samples (y is ignored).
ResidualReport ode40_suite(const ScalarFn &u, const ScalarFn &du, const ChainConstants &c, const SampleSpec &spec,
                           double tol = 1e-8);

/// Addition theorem residual on x in the sample domain and alpha drawn from
/// the same stream.
ResidualReport addition54_residual(const WeierstrassEvaluator &ev, const SampleSpec &spec, double tol = 1e-8);

/// Three independent points per sample (the third from slot 2).
ResidualReport fs_sigma_determinant_residual(const WeierstrassEvaluator &ev, const SampleSpec &spec,
                                             double tol = 1e-7);

struct MixingCell {
    double s1 = 0.0;
    double t1 = 0.0;
    double det_max = 0.0;
    bool expected_zero = false; // s1 t1 = s2 t2 = 0
    bool ok = false;
};

struct MixingScan {
    std::vector<MixingCell> cells;
    double zero_tol = 1e-7;
    double nonzero_floor = 1e-3;
    bool pass = false;
};

/// det22 maxima over a uniform n x n grid of (s1, t1) in [0, 1]^2. Passes when
/// the cells with s1 t1 = s2 t2 = 0 are below `zero_tol` and every interior
/// cell (0 < s1, t1 < 1) is above `nonzero_floor`.
MixingScan mixing_determinant_scan(const PhiChain &chain, Complex alpha1, const SampleSpec &spec, int n = 5,
                                   double zero_tol = 1e-7, double nonzero_floor = 1e-3);

} // namespace trife

#endif
