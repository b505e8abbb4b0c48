#include "trife/families.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace trife
{

std::string_view family_name(Family f)
{
    switch (f) {
    case Family::elliptic:
        return "elliptic";
    case Family::entire:
        return "entire";
    case Family::polynomial:
        return "polynomial";
    case Family::degenerate1:
        return "degenerate1";
    case Family::degenerate2:
        return "degenerate2";
    case Family::degenerate3:
        return "degenerate3";
    case Family::identical:
        return "identical";
    }
    return "unknown";
}

Family family_from_name(std::string_view name)
{
    for (Family f : {Family::elliptic, Family::entire, Family::polynomial, Family::degenerate1,
                     Family::degenerate2, Family::degenerate3, Family::identical}) {
        if (family_name(f) == name) {
            return f;
        }
    }
    throw ConstraintError("unknown family '" + std::string(name) + "'");
}

Complex fe_mismatch(const SolutionTriple &s, Complex x, Complex y)
{
    const Complex z = -x - y;
    const Complex sum = s.f(x) + s.g(y) + s.h(z);
    return sum * sum - (s.F(x) + s.G(y) + s.H(z));
}

namespace
{

bool close(Complex a, Complex b)
{
    return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a) + std::abs(b));
}

} // namespace

// ---------------------------------------------------------------------------

SolutionTriple make_elliptic_solution(const EllipticTriadParams &p)
{
    return make_elliptic_solution(p, std::make_shared<const WeierstrassEvaluator>(p.weier, p.options));
}

SolutionTriple make_elliptic_solution(const EllipticTriadParams &p,
                                      std::shared_ptr<const WeierstrassEvaluator> ev)
{
    for (Complex v : {p.alpha, p.beta, p.gamma[0], p.gamma[1], p.gamma[2], p.a1, p.a2}) {
        require_finite(v, "elliptic parameter");
    }
    SolutionTriple s;
    s.family = Family::elliptic;
    const Complex alpha = p.alpha;
    const Complex beta = p.beta;
    const Complex gamma = p.gamma_sum();
    const auto shifts = p.shifts();
    for (int j = 0; j < 3; ++j) {
        const Complex a = shifts[j];
        const Complex gj = p.gamma[j];
        Slot &slot = s.slots[j];
        slot.value = [ev, alpha, beta, a, gj](Complex x) { return alpha * ev->zeta(x - a) + beta * x + gj; };
        slot.d1 = [ev, alpha, beta, a](Complex x) { return -alpha * ev->p(x - a) + beta; };
        slot.d2 = [ev, alpha, a](Complex x) { return -alpha * ev->p_prime(x - a); };
        slot.big = [ev, alpha, gamma, a](Complex x) {
            const auto v = ev->evaluate(x - a);
            if (v.overflow) {
                throw PoleError("big function evaluated at a pole");
            }
            return alpha * alpha * v.p + 2.0 * gamma * alpha * v.zeta + gamma * gamma / 3.0;
        };
        slot.poles = {a};
    }
    return s;
}

// ---------------------------------------------------------------------------

SolutionTriple make_entire_solution(const EntireFamilyParams &p, bool literal)
{
    if (p.lambda == Complex{}) {
        throw ConstraintError("entire family requires lambda != 0");
    }
    for (Complex v : {p.alpha[0], p.alpha[1], p.alpha[2], p.lambda, p.beta, p.gamma[0], p.gamma[1], p.gamma[2]}) {
        require_finite(v, "entire parameter");
    }
    SolutionTriple s;
    s.family = Family::entire;
    s.note = literal ? "literal printed big functions" : "";
    const Complex lam = p.lambda;
    const Complex beta = p.beta;
    const Complex gamma = p.gamma[0] + p.gamma[1] + p.gamma[2];
    const double inv_sqrt3 = 1.0 / std::numbers::sqrt3;
    for (int j = 0; j < 3; ++j) {
        const Complex aj = p.alpha[j];
        const Complex cross = 2.0 * p.alpha[(j + 1) % 3] * p.alpha[(j + 2) % 3];
        const Complex gj = p.gamma[j];
        Slot &slot = s.slots[j];
        slot.value = [=](Complex x) { return aj * std::exp(lam * x) + beta * x + gj; };
        slot.d1 = [=](Complex x) { return lam * aj * std::exp(lam * x) + beta; };
        slot.d2 = [=](Complex x) { return lam * lam * aj * std::exp(lam * x); };
        if (literal) {
            slot.big = [=](Complex x) {
                const Complex t = aj * std::exp(lam * x) + gamma * inv_sqrt3;
                return t * t + cross * std::exp(-lam * x);
            };
        } else {
            slot.big = [=](Complex x) {
                const Complex e = std::exp(lam * x);
                return aj * aj * e * e + 2.0 * gamma * aj * e + gamma * gamma / 3.0 + cross / e;
            };
        }
    }
    return s;
}

Complex entire_literal_mismatch(const EntireFamilyParams &p, Complex x, Complex y)
{
    const Complex gamma = p.gamma[0] + p.gamma[1] + p.gamma[2];
    const std::array<Complex, 3> pts{x, y, -x - y};
    Complex sum{};
    for (int j = 0; j < 3; ++j) {
        sum += p.alpha[j] * std::exp(p.lambda * pts[j]);
    }
    return 2.0 * gamma * (1.0 - 1.0 / std::numbers::sqrt3) * sum;
}

// ---------------------------------------------------------------------------

PolynomialShifts polynomial_shifts(const PolynomialFamilyParams &p)
{
    const auto &b = p.beta;
    PolynomialShifts out;
    for (int i = 0; i < 3; ++i) {
        out.a[i] = (b[(i + 1) % 3] + b[(i + 2) % 3] - 2.0 * b[i]) / (6.0 * p.alpha);
    }
    const Complex sq = out.a[0] * out.a[0] + out.a[1] * out.a[1] + out.a[2] * out.a[2];
    out.gamma_tilde = p.gamma[0] + p.gamma[1] + p.gamma[2] - p.alpha * sq;
    return out;
}

PolynomialShifts polynomial_shifts_printed(const PolynomialFamilyParams &p)
{
    const auto &b = p.beta;
    PolynomialShifts out;
    out.a[0] = (b[0] + b[2] - 2.0 * b[0]) / (6.0 * p.alpha);
    out.a[1] = (b[0] + b[2] - 2.0 * b[1]) / (6.0 * p.alpha);
    out.a[2] = (b[0] + b[1] - 2.0 * b[2]) / (6.0 * p.alpha);
    out.gamma_tilde = p.gamma[0] + p.gamma[1] + p.gamma[2] -
                      (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]) / (4.0 * p.alpha);
    return out;
}

SolutionTriple make_polynomial_solution(const PolynomialFamilyParams &p, bool literal)
{
    if (p.alpha == Complex{}) {
        throw ConstraintError("polynomial family requires alpha != 0 (use degenerate case 1)");
    }
    const PolynomialShifts sh = literal ? polynomial_shifts_printed(p) : polynomial_shifts(p);
    if (!literal && !close(sh.a[0] + sh.a[1] + sh.a[2], Complex{})) {
        throw ConstraintError("polynomial shifts do not sum to zero");
    }
    SolutionTriple s;
    s.family = Family::polynomial;
    s.note = literal ? "literal printed shifts" : "";
    const Complex alpha = p.alpha;
    const Complex gt = sh.gamma_tilde;
    for (int j = 0; j < 3; ++j) {
        const Complex bj = p.beta[j];
        const Complex gj = p.gamma[j];
        const Complex aj = sh.a[j];
        Slot &slot = s.slots[j];
        slot.value = [=](Complex x) { return alpha * x * x + bj * x + gj; };
        slot.d1 = [=](Complex x) { return 2.0 * alpha * x + bj; };
        slot.d2 = [=](Complex) { return 2.0 * alpha; };
        slot.big = [=](Complex x) {
            const Complex u = (x - aj) * (x - aj);
            return 2.0 * alpha * alpha * u * u + 2.0 * alpha * gt * u + gt * gt / 3.0;
        };
    }
    return s;
}

// ---------------------------------------------------------------------------

SolutionTriple make_degenerate_solution(const DegenerateParams &p)
{
    SolutionTriple s;
    auto linear = [](Complex c0, Complex c1) {
        Slot slot;
        slot.value = [=](Complex x) { return c0 + c1 * x; };
        slot.d1 = [=](Complex) { return c1; };
        slot.d2 = [](Complex) { return Complex{}; };
        return slot;
    };
    switch (p.case_id) {
    case 1: {
        s.family = Family::degenerate1;
        const Complex c = p.f0 + p.g0 + p.h0;
        if (!close(p.big0_f + p.big0_g + p.big0_h, c * c)) {
            throw ConstraintError("degenerate case 1 requires F0 + G0 + H0 = (f0 + g0 + h0)^2");
        }
        const std::array<Complex, 3> c0{p.f0, p.g0, p.h0};
        const std::array<Complex, 3> c1{p.f1, p.g1, p.h1};
        const std::array<Complex, 3> big0{p.big0_f, p.big0_g, p.big0_h};
        for (int j = 0; j < 3; ++j) {
            s.slots[j] = linear(c0[j], c1[j]);
            const Complex quad = (c1[j] - c1[(j + 1) % 3]) * (c1[j] - c1[(j + 2) % 3]);
            const Complex lin = p.b + 2.0 * c * c1[j];
            const Complex k0 = big0[j];
            s.slots[j].big = [=](Complex x) { return k0 + lin * x + quad * x * x; };
        }
        break;
    }
    case 2: {
        s.family = Family::degenerate2;
        if (!p.f_fn || !p.f_d1 || !p.f_d2) {
            throw ConstraintError("degenerate case 2 requires f with two derivatives");
        }
        const Complex a = p.a;
        const Complex b = p.b;
        const Complex base = p.g0 + p.h0;
        const Complex big_base = p.big0_g + p.big0_h;
        auto fn = p.f_fn;
        s.slots[0].value = p.f_fn;
        s.slots[0].d1 = p.f_d1;
        s.slots[0].d2 = p.f_d2;
        s.slots[0].big = [=](Complex x) {
            const Complex t = base - a * x + fn(x);
            return t * t - (big_base - b * x);
        };
        s.slots[1] = linear(p.g0, a);
        s.slots[2] = linear(p.h0, a);
        const Complex g0big = p.big0_g;
        const Complex h0big = p.big0_h;
        s.slots[1].big = [=](Complex y) { return g0big + b * y; };
        s.slots[2].big = [=](Complex z) { return h0big + b * z; };
        break;
    }
    case 3: {
        s.family = Family::degenerate3;
        const Complex c = p.c;
        if (!close(p.f0 + p.g0 + p.h0, c)) {
            throw ConstraintError("degenerate case 3 requires f0 + g0 + h0 = c");
        }
        if (!close(p.big0_f + p.big0_g + p.big0_h, c * c)) {
            throw ConstraintError("degenerate case 3 requires F0 + G0 + H0 = c^2");
        }
        if (p.lambda == Complex{}) {
            throw ConstraintError("degenerate case 3 requires lambda != 0");
        }
        const Complex a = p.a, b = p.b, lam = p.lambda;
        const std::array<Complex, 2> amp{p.c1, p.c2};
        const std::array<Complex, 2> zero{p.f0, p.g0};
        const std::array<Complex, 2> big0{p.big0_f, p.big0_g};
        for (int j = 0; j < 2; ++j) {
            const Complex k = amp[j], z0 = zero[j], b0 = big0[j];
            Slot &slot = s.slots[j];
            slot.value = [=](Complex x) { return z0 + a * x + k * std::exp(lam * x); };
            slot.d1 = [=](Complex x) { return a + lam * k * std::exp(lam * x); };
            slot.d2 = [=](Complex x) { return lam * lam * k * std::exp(lam * x); };
            slot.big = [=](Complex x) {
                const Complex e = k * std::exp(lam * x);
                return b0 + b * x + e * (2.0 * c + e);
            };
        }
        s.slots[2] = linear(p.h0, a);
        const Complex h0big = p.big0_h;
        const Complex cross = 2.0 * p.c1 * p.c2;
        s.slots[2].big = [=](Complex z) { return h0big + b * z + cross * std::exp(-lam * z); };
        break;
    }
    default:
        throw ConstraintError("degenerate case must be 1, 2 or 3");
    }
    return s;
}

// ---------------------------------------------------------------------------

Complex IdenticalSolution::f(Complex x) const
{
    return alpha * ev->zeta(x) + beta * x;
}

Complex IdenticalSolution::df(Complex x) const
{
    return -alpha * ev->p(x) + beta;
}

Complex IdenticalSolution::d2f(Complex x) const
{
    return -alpha * ev->p_prime(x);
}

Complex IdenticalSolution::F(Complex x) const
{
    const auto v = ev->evaluate(x);
    if (v.overflow) {
        throw PoleError("identical-particle F evaluated at a pole");
    }
    const Complex fx = alpha * v.zeta + beta * x;
    return 0.5 * (alpha * alpha * v.p - fx * fx) + calibration;
}

double IdenticalSolution::residual(Complex x, Complex y) const
{
    const Complex z = -x - y;
    const Complex fx = f(x), fy = f(y), fz = f(z);
    return std::abs(fx * fy + fy * fz + fz * fx - (F(x) + F(y) + F(z)));
}

SolutionTriple IdenticalSolution::as_triple() const
{
    EllipticTriadParams p;
    p.alpha = alpha;
    p.beta = beta;
    p.weier = ev->params();
    p.options = ev->options();
    SolutionTriple s = make_elliptic_solution(p, ev);
    s.family = Family::identical;
    return s;
}

IdenticalSolution make_identical_solution(Complex alpha, Complex beta, WeierstrassParams weier,
                                          EllipticOptions options)
{
    require_finite(alpha, "alpha");
    require_finite(beta, "beta");
    IdenticalSolution sol{alpha, beta, std::make_shared<const WeierstrassEvaluator>(weier, options), {}};
    // The pair-product equation fixes F only up to constants summing to zero;
    // with one shared F that constant is pinned by one sample at the anchor.
    const Complex x0{calibration_anchor};
    const Complex z0 = -2.0 * x0;
    const Complex fx = sol.f(x0), fz = sol.f(z0);
    const Complex lhs = fx * fx + 2.0 * fx * fz;
    const Complex rhs = 2.0 * sol.F(x0) + sol.F(z0);
    sol.calibration = (lhs - rhs) / 3.0;
    return sol;
}

// ---------------------------------------------------------------------------

void validate(const SymmetryParams &p)
{
    if (p.a3 == Complex{}) {
        throw ConstraintError("symmetry transform requires a3 != 0");
    }
    const Complex c = p.c;
    if (!close(p.small0[0] + p.small0[1] + p.small0[2], c)) {
        throw ConstraintError("symmetry transform requires f0 + g0 + h0 = c");
    }
    if (!close(p.big0[0] + p.big0[1] + p.big0[2], c * c)) {
        throw ConstraintError("symmetry transform requires F0 + G0 + H0 = c^2");
    }
    if (!close(p.shift[0] + p.shift[1] + p.shift[2], Complex{})) {
        throw ConstraintError("symmetry transform shifts must sum to zero");
    }
}

SolutionTriple symmetry_transform(const SolutionTriple &s, const SymmetryParams &p)
{
    validate(p);
    SolutionTriple out;
    out.family = s.family;
    out.note = s.note;
    for (int j = 0; j < 3; ++j) {
        const Slot &in = s.slots[j];
        const Complex a1 = p.a1, a2 = p.a2, a3 = p.a3, a4 = p.a4, c = p.c;
        const Complex k0 = p.small0[j], K0 = p.big0[j], sh = p.shift[j];
        Slot &slot = out.slots[j];
        auto v = in.value, d1 = in.d1, d2 = in.d2, big = in.big;
        slot.value = [=](Complex x) { return k0 + a1 * x + a2 * v(a3 * x + sh); };
        slot.d1 = [=](Complex x) { return a1 + a2 * a3 * d1(a3 * x + sh); };
        slot.d2 = [=](Complex x) { return a2 * a3 * a3 * d2(a3 * x + sh); };
        slot.big = [=](Complex x) {
            const Complex arg = a3 * x + sh;
            return K0 + a4 * x + a2 * a2 * big(arg) + 2.0 * a2 * c * v(arg);
        };
        for (Complex pole : in.poles) {
            slot.poles.push_back((pole - sh) / a3);
        }
    }
    return out;
}

SymmetryParams compose(const SymmetryParams &first, const SymmetryParams &second)
{
    const SymmetryParams &p = first;
    const SymmetryParams &q = second;
    SymmetryParams r;
    r.a3 = p.a3 * q.a3;
    r.a2 = p.a2 * q.a2;
    r.a1 = q.a1 + q.a2 * p.a1 * q.a3;
    r.c = q.c + q.a2 * p.c;
    r.a4 = q.a4 + q.a2 * q.a2 * p.a4 * q.a3 + 2.0 * q.a2 * q.c * p.a1 * q.a3;
    for (int j = 0; j < 3; ++j) {
        r.shift[j] = p.a3 * q.shift[j] + p.shift[j];
        const Complex inner_small = p.small0[j] + p.a1 * q.shift[j];
        r.small0[j] = q.small0[j] + q.a2 * inner_small;
        r.big0[j] = q.big0[j] + q.a2 * q.a2 * (p.big0[j] + p.a4 * q.shift[j]) + 2.0 * q.a2 * q.c * inner_small;
    }
    return r;
}

} // namespace trife
