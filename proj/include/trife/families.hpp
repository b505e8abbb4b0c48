#ifndef TRIFE_FAMILIES_HPP
#define TRIFE_FAMILIES_HPP

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "trife/core.hpp"
#include "trife/elliptic.hpp"

namespace trife
{

enum class Family { elliptic, entire, polynomial, degenerate1, degenerate2, degenerate3, identical };

std::string_view family_name(Family f);
Family family_from_name(std::string_view name);

/// One slot of a triple: the small function (f), its first two derivatives,
/// and the matching big function (F). `poles` lists pole loci near the
/// origin that samplers keep away from.
struct Slot {
    ScalarFn value;
    ScalarFn d1;
    ScalarFn d2;
    ScalarFn big;
    std::vector<Complex> poles;
};

/**
 * Six functions (f, g, h, F, G, H) intended to satisfy
 *
 *   (f(x) + g(y) + h(z))^2 = F(x) + G(y) + H(z),   x + y + z = 0,
 *
 * plus analytic first and second derivatives of f, g, h. Slots 0, 1, 2 hold
 * (f, F), (g, G), (h, H). Values are immutable and cheap to copy.
 */
struct SolutionTriple {
    Family family = Family::elliptic;
    std::array<Slot, 3> slots;
    std::string note;

    Complex small(int j, Complex x) const { return slots[j].value(x); }
    Complex big(int j, Complex x) const { return slots[j].big(x); }
    Complex d1(int j, Complex x) const { return slots[j].d1(x); }
    Complex d2(int j, Complex x) const { return slots[j].d2(x); }

    Complex f(Complex x) const { return small(0, x); }
    Complex g(Complex y) const { return small(1, y); }
    Complex h(Complex z) const { return small(2, z); }
    Complex F(Complex x) const { return big(0, x); }
    Complex G(Complex y) const { return big(1, y); }
    Complex H(Complex z) const { return big(2, z); }
};

/// Raw functional-equation mismatch (f(x)+g(y)+h(z))^2 - (F(x)+G(y)+H(z)) at z = -x-y.
Complex fe_mismatch(const SolutionTriple &s, Complex x, Complex y);

// ---------------------------------------------------------------------------
// Elliptic family: f = alpha zeta(x - a1) + beta x + gamma1 and
// F = alpha^2 p(x - a1) + 2 gamma alpha zeta(x - a1) + gamma^2/3.

struct EllipticTriadParams {
    Complex alpha{1.0};
    Complex beta{};
    std::array<Complex, 3> gamma{};
    Complex a1{};
    Complex a2{};
    WeierstrassParams weier{};
    EllipticOptions options{};

    /// a3 is never stored; it is always -a1 - a2.
    Complex a3() const { return -a1 - a2; }
    std::array<Complex, 3> shifts() const { return {a1, a2, a3()}; }
    Complex gamma_sum() const { return gamma[0] + gamma[1] + gamma[2]; }
};

SolutionTriple make_elliptic_solution(const EllipticTriadParams &p);

/// Same construction against an existing evaluator (shared, not copied).
SolutionTriple make_elliptic_solution(const EllipticTriadParams &p,
                                      std::shared_ptr<const WeierstrassEvaluator> ev);

// ---------------------------------------------------------------------------
// Entire family: f = alpha1 e^{lambda x} + beta x + gamma1.

struct EntireFamilyParams {
    std::array<Complex, 3> alpha{Complex{1.0}, Complex{1.0}, Complex{1.0}};
    Complex lambda{1.0};
    Complex beta{};
    std::array<Complex, 3> gamma{};
};

/// `literal` selects the big functions exactly as printed,
/// F = (alpha1 e^{lambda x} + gamma/sqrt(3))^2 + 2 alpha2 alpha3 e^{-lambda x},
/// which is not a solution when gamma != 0. The default form
/// F = alpha1^2 e^{2 lambda x} + 2 gamma alpha1 e^{lambda x} + gamma^2/3 + 2 alpha2 alpha3 e^{-lambda x}
/// is.
SolutionTriple make_entire_solution(const EntireFamilyParams &p, bool literal = false);

/// The exact gap between literal and corrected forms at (x, y, z = -x-y):
/// 2 gamma (1 - 1/sqrt 3) sum_i alpha_i e^{lambda x_i}.
Complex entire_literal_mismatch(const EntireFamilyParams &p, Complex x, Complex y);

// ---------------------------------------------------------------------------
// Polynomial family (lambda -> 0): f = alpha x^2 + beta1 x + gamma1.

struct PolynomialFamilyParams {
    Complex alpha{1.0};
    std::array<Complex, 3> beta{};
    std::array<Complex, 3> gamma{};
};

struct PolynomialShifts {
    std::array<Complex, 3> a{};
    Complex gamma_tilde{};
};

/// Shifts satisfying a1 + a2 + a3 = 0 that make the family a solution:
///   a_i = (beta_j + beta_k - 2 beta_i) / (6 alpha),
///   gamma~ = gamma1 + gamma2 + gamma3 - alpha (a1^2 + a2^2 + a3^2).
PolynomialShifts polynomial_shifts(const PolynomialFamilyParams &p);

/// The shifts as printed: a1 uses (beta1 + beta3 - 2 beta1) and
/// gamma~ = gamma - (beta1^2 + beta2^2 + beta3^2)/(4 alpha).
PolynomialShifts polynomial_shifts_printed(const PolynomialFamilyParams &p);

SolutionTriple make_polynomial_solution(const PolynomialFamilyParams &p, bool literal = false);

// ---------------------------------------------------------------------------
// Totally degenerate families (at least one linear small function).

struct DegenerateParams {
    int case_id = 1;
    // case 1
    Complex f0{}, f1{}, g0{}, g1{}, h0{}, h1{};
    // shared by all cases
    Complex b{};
    Complex big0_f{}, big0_g{}, big0_h{}; // F0, G0, H0
    // case 2: g = g0 + a y, h = h0 + a z, f arbitrary
    Complex a{};
    ScalarFn f_fn, f_d1, f_d2;
    std::string f_name; // label for serialization
    // case 3
    Complex c{}, c1{}, c2{}, lambda{1.0};
};

SolutionTriple make_degenerate_solution(const DegenerateParams &p);

// ---------------------------------------------------------------------------
// Identical particles: f(x) = alpha zeta(x) + beta x, an odd function, with
//   f(x)f(y) + f(y)f(z) + f(z)f(x) = F(x) + F(y) + F(z).

struct IdenticalSolution {
    Complex alpha;
    Complex beta;
    std::shared_ptr<const WeierstrassEvaluator> ev;
    Complex calibration{}; // additive constant fixed at the anchor

    Complex f(Complex x) const;
    Complex df(Complex x) const;
    Complex d2f(Complex x) const;
    /// Pair-product big function, (alpha^2 p(x) - f(x)^2)/2 + calibration.
    Complex F(Complex x) const;
    /// |f(x)f(y) + f(y)f(z) + f(z)f(x) - F(x) - F(y) - F(z)|, z = -x-y.
    double residual(Complex x, Complex y) const;
    /// The same configuration viewed as a solution of the squared equation,
    /// with big functions alpha^2 p.
    SolutionTriple as_triple() const;
};

inline constexpr double calibration_anchor = 0.37;

IdenticalSolution make_identical_solution(Complex alpha, Complex beta, WeierstrassParams weier,
                                          EllipticOptions options = {});

// ---------------------------------------------------------------------------
// Symmetry group acting on solutions:
//   f -> f0 + a1 x + a2 f(a3 x + s1)
//   F -> F0 + a4 x + a2^2 F(a3 x + s1) + 2 a2 c f(a3 x + s1)
// with f0+g0+h0 = c, F0+G0+H0 = c^2, s1+s2+s3 = 0.

struct SymmetryParams {
    Complex a1{}, a2{1.0}, a3{1.0}, a4{}, c{};
    std::array<Complex, 3> small0{}; // f0, g0, h0
    std::array<Complex, 3> big0{};   // F0, G0, H0
    std::array<Complex, 3> shift{};  // argument shifts, summing to zero

    static SymmetryParams identity() { return {}; }
};

/// Throws ConstraintError if the linear constraints fail or a3 == 0.
void validate(const SymmetryParams &p);

SolutionTriple symmetry_transform(const SolutionTriple &s, const SymmetryParams &p);

/// Parameters of the single transform equal to applying `first`, then `second`.
SymmetryParams compose(const SymmetryParams &first, const SymmetryParams &second);

} // namespace trife

#endif
