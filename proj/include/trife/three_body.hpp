#ifndef TRIFE_THREE_BODY_HPP
#define TRIFE_THREE_BODY_HPP

#include <array>

#include "trife/families.hpp"
#include "trife/verification.hpp"

namespace trife
{

/// u_j = 3 f_j^2 + 2 f_j' - F_j + eps_j with eps_3 = E0 - eps_1 - eps_2.
struct PairPotentials {
    std::array<ScalarFn, 3> u;
    std::array<Complex, 3> eps{};
    Complex E0{};

    Complex total(Complex d1, Complex d2, Complex d3) const { return u[0](d1) + u[1](d2) + u[2](d3); }
};

PairPotentials potentials_from_triple(const SolutionTriple &s, Complex eps1, Complex eps2, Complex E0);

inline constexpr double log_psi_anchor = 0.37;

/**
 * Ground state Psi0 = psi_1(x2 - x3) psi_2(x3 - x1) psi_3(x1 - x2), kept in
 * log form. log psi_j(d) integrates the j-th small function from the anchor
 * +0.37 (or -0.37 when Re d < 0) along a straight segment, so paths never
 * cross the origin.
 */
class GroundState
{
public:
    explicit GroundState(SolutionTriple s) : s_(std::move(s)) {}

    const SolutionTriple &triple() const { return s_; }

    Complex log_psi(int j, Complex d) const;
    Complex log_wavefunction(Complex x1, Complex x2, Complex x3) const;

    /// Psi0^{-1} Delta Psi0 = 3 (f1^2 + f2^2 + f3^2) - (f1 + f2 + f3)^2 + 2 (f1' + f2' + f3').
    Complex laplacian_ratio(Complex x1, Complex x2, Complex x3) const;

    /// Second-order central differences of Psi0 over the three coordinates.
    /// The ratios Psi0(x +- h e_j) / Psi0(x) come from Gauss-Legendre
    /// increments of log psi, so no global quadrature noise enters.
    Complex laplacian_ratio_fd(Complex x1, Complex x2, Complex x3, double h) const;

private:
    SolutionTriple s_;
};

/// Raw pointwise mismatch Psi0^{-1} Delta Psi0 - (U - E0).
Complex schrodinger_mismatch(const GroundState &gs, const PairPotentials &pots, Complex x1, Complex x2, Complex x3);

enum class SchrodingerMode { analytic, finite_difference };

/**
 * Analytic mode: |Psi0^{-1} Delta Psi0 - (U - E0)| / (1 + |U - E0|).
 * Finite-difference mode: relative gap between the finite-difference
 * Laplacian at step `h` and the analytic ratio.
 * Configurations: x1 from slot 2, and pair coordinates (x2 - x3, x3 - x1) =
 * the sampled (x, y).
 */
ResidualReport schrodinger_residual(const SolutionTriple &s, const PairPotentials &pots, const SampleSpec &spec,
                                    double tol = 1e-7, SchrodingerMode mode = SchrodingerMode::analytic,
                                    double h = 1e-4);

/// Median ratio err(h) / err(h/2) of the finite-difference Laplacian error over
/// the sampled configurations; close to 4 for a second-order stencil.
double fd_convergence_ratio(const SolutionTriple &s, const SampleSpec &spec, double h = 1e-3);

} // namespace trife

#endif
