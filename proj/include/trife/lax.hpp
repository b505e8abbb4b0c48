#ifndef TRIFE_LAX_HPP
#define TRIFE_LAX_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "trife/families.hpp"
#include "trife/verification.hpp"

namespace trife
{

using Mat3 = std::array<std::array<Complex, 3>, 3>;
using PairFns = std::array<std::array<ScalarFn, 3>, 3>; // [j][k], diagonal unused

/**
 * Entry functions of the Lax pair for three particles:
 *   L = diag(p) + (A_jk(q_j - q_k)),  M = diag(sum_l B_jl(q_j - q_l)) + (A'_jk(q_j - q_k)).
 * Offsets lambda_j are already folded into the entries by the presets.
 */
struct PairEntrySet {
    std::string name;
    PairFns A;
    PairFns dA;
    PairFns B; // empty functions mean B = 0
    std::array<Complex, 3> lambda{};
    Complex b_scale{};          // kappa of the fitted B = kappa * shape
    /// Elliptic-family parameters of f = int b1, g = int b2, h = int b3 when known.
    std::optional<EllipticTriadParams> induced;
};

/// A = gamma / x with B = kappa / x^2, kappa fitted (kappa = gamma); gamma = i gives
/// the repulsive 1/x^2 potential.
PairEntrySet rational_preset(Complex gamma = Complex{0.0, 1.0});

/// A = gamma / sinh x, B = gamma / sinh^2 x up to the fitted scale.
PairEntrySet hyperbolic_preset(Complex gamma = Complex{0.0, 1.0});

/// A_jk = gamma Phi(x + lambda_j - lambda_k), Phi(x) = sigma(x + nu) / (sigma(x) sigma(nu)),
/// B_jk proportional to p(x + lambda_j - lambda_k).
PairEntrySet elliptic_preset(Complex gamma, Complex nu, WeierstrassParams weier, std::array<Complex, 3> lambda,
                             EllipticOptions options = {});

/// Non-integrable control: A_jk(x) = a_jk / x + c_jk x with seeded random
/// coefficients; no B.
PairEntrySet random_preset(std::uint64_t seed);

/// Least-squares kappa for B_jk = kappa * shape_jk on the commutator
/// residual (see eq84_point) over sampled configurations; installs B in `set`
/// and returns kappa.
Complex fit_B_scale(PairEntrySet &set, const PairFns &shape, const SampleSpec &spec);

struct BFunctions {
    std::array<ScalarFn, 3> b;
    std::array<ScalarFn, 3> db;
};

/// b1(x) = -A23(x) A32(-x), b2(y) = -A31(y) A13(-y), b3(z) = -A12(z) A21(-z).
BFunctions b_functions(const PairEntrySet &set);

/// det[[b1'(x), b2'(y), b3'(z)], [b1(x), b2(y), b3(z)], [1, 1, 1]] at z = -x-y,
/// divided by the product of row norms.
double det91_point(const BFunctions &b, Complex x, Complex y);
/// The expanded bilinear form b2 b1' - b1 b2' + b3 b2' - b2 b3' + b1 b3' - b3 b1' (raw).
Complex eq90_value(const BFunctions &b, Complex x, Complex y);
ResidualReport det91_residual(const BFunctions &b, const SampleSpec &spec, double tol = 1e-7);

/// V_jk(x) = A_jk(x) A'_kj(-x) - A'_jk(x) A_kj(-x), the (j, j) entry of [A, A'].
/// Antisymmetric: V_jk(x) = -V_kj(-x).
PairFns potential_from_A(const PairEntrySet &set);

struct ThreeBodyState {
    std::array<double, 3> q{};
    std::array<double, 3> p{};
    double t = 0.0;
};

std::pair<Mat3, Mat3> build_L_M(const PairEntrySet &set, const std::array<Complex, 3> &q,
                                const std::array<Complex, 3> &p);
std::pair<Mat3, Mat3> build_L_M(const PairEntrySet &set, const ThreeBodyState &s);

/// max over j != k of |A_jk (Btau_j - Btau_k) + sum_{l != j,k} (A'_jl A_lk - A_jl A'_lk)|,
/// normalised by 1 + the magnitude of the terms.
double eq84_point(const PairEntrySet &set, const std::array<Complex, 3> &q);
/// Configurations q = (0, x, x + y) from the sampler (two independent gaps).
ResidualReport eq84_residual(const PairEntrySet &set, const SampleSpec &spec, double tol = 1e-8);

/// Phi_jk = (A'_jl A_lk - A_jl A'_lk) / A_jk with l the third index.
Complex phi_jk(const PairEntrySet &set, const std::array<Complex, 3> &q, int j, int k);
/// |Phi_jk + Phi_km + Phi_mj| for the cycle (j, k, m), normalised by 1 + sum of magnitudes.
double cocycle_point(const PairEntrySet &set, const std::array<Complex, 3> &q, int j, int k, int m);
/// Max over both orientations of the 3-cycle.
ResidualReport phi_cocycle_residual(const PairEntrySet &set, const SampleSpec &spec, double tol = 1e-9);

/// Real forces q''_j = sum_k Re V_jk(q_j - q_k). Throws Error when an
/// imaginary part survives (non-real coupling).
std::array<double, 3> forces(const PairFns &V, const std::array<double, 3> &q);

double energy(const PairEntrySet &set, const ThreeBodyState &s);

struct Trajectory {
    std::vector<ThreeBodyState> states;
    double dt = 0.0;
};

/// Fixed-step RK4 from `s0` up to time T. Throws ProximityError when any
/// separation drops below `exclusion`.
Trajectory integrate_motion(const PairFns &V, const ThreeBodyState &s0, double dt, double T,
                            double exclusion = 0.05);

struct SpectrumReport {
    std::vector<double> times;
    std::array<std::vector<double>, 3> traces; // Re tr L^k, k = 1..3
    std::array<double, 3> drift{};             // max |I_k(t) - I_k(0)| / max(1, |I_k(0)|)
    double lax_residual = 0.0;                 // max ||Ldot - [L, M]||_F, Ldot by centred differences
    double energy_drift = 0.0;
    double momentum_drift = 0.0;
};

SpectrumReport isospectrality_report(const PairEntrySet &set, const Trajectory &traj);

/// Elliptic-family triple with f' = b1, g' = b2, h' = b3. Requires `set.induced`.
SolutionTriple induced_triple(const PairEntrySet &set);

} // namespace trife

#endif
