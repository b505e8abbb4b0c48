#include "trife/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace trife
{

std::vector<Complex> laurent_coefficients(WeierstrassParams params, int count)
{
    // c[k] for k in [0, count+2); c[0], c[1] unused.
    std::vector<Complex> c(static_cast<std::size_t>(count) + 2, Complex{});
    if (count >= 1) {
        c[2] = params.g2 / 20.0;
    }
    if (count >= 2) {
        c[3] = params.g3 / 28.0;
    }
    for (int k = 4; k < count + 2; ++k) {
        Complex acc{};
        for (int m = 2; m <= k - 2; ++m) {
            acc += c[m] * c[k - m];
        }
        c[k] = 3.0 / ((2.0 * k + 1.0) * (k - 3.0)) * acc;
    }
    return c;
}

namespace
{

// One duplication z -> 2z in place. p(2z) uses the division-polynomial form
// (p^4 + g2 p^2 / 2 + 2 g3 p + g2^2 / 16) / (4 p^3 - g2 p - g3), which avoids
// the cancellation in (p''/p')^2 / 4 - 2 p. p'(2z) is the root of the curve
// equation on the side picked by tangent doubling. Returns false when the
// result is not finite.
bool double_step(WeierstrassValues &v, const WeierstrassParams &g)
{
    const Complex p = v.p;
    const Complex p2sq = p * p;
    const Complex ddp = 6.0 * p2sq - g.g2 / 2.0;
    const Complex lam = ddp / v.dp;
    const Complex cubic = 4.0 * p2sq * p - g.g2 * p - g.g3;
    const Complex p2 = (p2sq * p2sq + 0.5 * g.g2 * p2sq + 2.0 * g.g3 * p + g.g2 * g.g2 / 16.0) / cubic;
    const Complex tangent = -(v.dp + lam * (p2 - p));
    Complex dp2 = std::sqrt(4.0 * p2 * p2 * p2 - g.g2 * p2 - g.g3);
    if (std::abs(dp2 + tangent) < std::abs(dp2 - tangent)) {
        dp2 = -dp2;
    }
    v.zeta = 2.0 * v.zeta + 0.5 * lam;
    v.log_sigma = 4.0 * v.log_sigma + std::log(-v.dp);
    v.p = p2;
    v.dp = dp2;
    return is_finite(p2) && is_finite(dp2) && is_finite(v.zeta);
}

} // namespace

WeierstrassEvaluator::WeierstrassEvaluator(WeierstrassParams params, EllipticOptions options)
    : params_(params), options_(options)
{
    require_finite(params.g2, "g2");
    require_finite(params.g3, "g3");
    if (options_.series_order < 10) {
        throw ConstraintError("series_order must be at least 10");
    }
    if (!(options_.radius_factor > 0.0)) {
        throw ConstraintError("radius_factor must be positive");
    }
    double scale = 1.0;
    if (std::abs(params.g2) > 0.0) {
        scale = std::min(scale, std::pow(std::abs(params.g2), -0.25));
    }
    if (std::abs(params.g3) > 0.0) {
        scale = std::min(scale, std::pow(std::abs(params.g3), -1.0 / 6.0));
    }
    radius_ = options_.radius_factor * scale;
    coeffs_ = laurent_coefficients(params, options_.series_order);

    // Pin the sign convention of the tangent-doubling step: doubling from
    // half the radius must land on the directly summed series value.
    const Complex z0{radius_, 0.0};
    const WeierstrassValues direct = series(z0);
    WeierstrassValues via_half = series(z0 * 0.5);
    double_step(via_half, params_);
    if (std::abs(via_half.dp - direct.dp) > 1e-8 * (1.0 + std::abs(direct.dp))) {
        throw Error("tangent doubling sign check failed during evaluator construction");
    }
    // With both invariants zero the series is exactly 1/z^2 and needs no reduction.
    if (params.g2 == Complex{} && params.g3 == Complex{}) {
        radius_ = std::numeric_limits<double>::infinity();
    }
}

WeierstrassValues WeierstrassEvaluator::series(Complex z) const
{
    if (z == Complex{}) {
        throw PoleError("Weierstrass functions have a pole at the origin");
    }
    const Complex t = z * z;
    const int n = options_.series_order + 1; // highest k
    // Horner in t for each of the four sums.
    Complex sp{}, sdp{}, sz{}, ss{};
    for (int k = n; k >= 2; --k) {
        const Complex ck = coeffs_[k];
        sp = sp * t + ck;                                    // sum c_k t^{k-2}
        sdp = sdp * t + (2.0 * k - 2.0) * ck;                // sum (2k-2) c_k t^{k-2}
        sz = sz * t + ck / (2.0 * k - 1.0);                  // sum c_k t^{k-2} / (2k-1)
        ss = ss * t + ck / ((2.0 * k - 1.0) * (2.0 * k));    // sum c_k t^{k-2} / ((2k-1)2k)
    }
    WeierstrassValues v;
    const Complex t2 = t * t;
    v.p = 1.0 / t + sp * t;
    v.dp = -2.0 / (t * z) + sdp * z;
    v.zeta = 1.0 / z - sz * t * z;
    v.log_sigma = std::log(z) - ss * t2;
    return v;
}

WeierstrassValues WeierstrassEvaluator::evaluate(Complex z) const
{
    if (!is_finite(z)) {
        throw ConstraintError("argument must be finite");
    }
    if (z == Complex{}) {
        throw PoleError("Weierstrass functions have a pole at the origin");
    }
    int k = 0;
    Complex w = z;
    while (std::abs(w) > radius_) {
        w *= 0.5;
        if (++k > options_.max_halvings) {
            throw ReductionError("argument halving did not reach the trusted radius");
        }
    }
    WeierstrassValues v = series(w);
    v.halvings = k;
    if (std::abs(v.p) > options_.overflow_threshold) {
        v.overflow = true;
        return v;
    }
    for (int i = 0; i < k; ++i) {
        if (v.dp == Complex{} || !double_step(v, params_) || std::abs(v.p) > options_.overflow_threshold) {
            v.overflow = true;
            return v;
        }
    }
    return v;
}

namespace
{

const WeierstrassValues &checked(const WeierstrassValues &v, Complex z)
{
    if (v.overflow) {
        throw PoleError("|p| exceeds the overflow threshold near z = (" + std::to_string(z.real()) +
                        ", " + std::to_string(z.imag()) + ")");
    }
    return v;
}

} // namespace

Complex WeierstrassEvaluator::p(Complex z) const
{
    const auto v = evaluate(z);
    return checked(v, z).p;
}

Complex WeierstrassEvaluator::p_prime(Complex z) const
{
    const auto v = evaluate(z);
    return checked(v, z).dp;
}

Complex WeierstrassEvaluator::p_second(Complex z) const
{
    const Complex pv = p(z);
    return 6.0 * pv * pv - params_.g2 / 2.0;
}

Complex WeierstrassEvaluator::zeta(Complex z) const
{
    const auto v = evaluate(z);
    return checked(v, z).zeta;
}

Complex WeierstrassEvaluator::log_sigma(Complex z) const
{
    const auto v = evaluate(z);
    return checked(v, z).log_sigma;
}

Complex WeierstrassEvaluator::sigma(Complex z) const
{
    if (z == Complex{}) {
        return Complex{};
    }
    const Complex ls = log_sigma(z);
    if (ls.real() > std::log(options_.log_sigma_switch)) {
        throw Error("|sigma| exceeds the representable range; use log_sigma");
    }
    return std::exp(ls);
}

double p_addition_residual(const WeierstrassEvaluator &ev, Complex x, Complex alpha)
{
    const Complex px = ev.p(x);
    const Complex pa = ev.p(alpha);
    const Complex dpx = ev.p_prime(x);
    const Complex dpa = ev.p_prime(alpha);
    const Complex pxa = ev.p(x + alpha);
    const Complex d = px - pa;
    if (std::abs(d) < 1e-12) {
        throw DegenerateError("p(x) == p(alpha): addition formula is singular");
    }
    const Complex g2 = ev.params().g2;
    const Complex lhs = pxa - pa;
    const Complex rhs = -0.5 * dpx * dpa / (d * d) + (3.0 * pa * pa - g2 / 4.0) / d +
                        0.5 * (dpa / d) * (dpa / d);
    return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

namespace
{

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

} // namespace

double p_ode_residual(const WeierstrassEvaluator &ev, Complex z)
{
    const Complex p = ev.p(z);
    const Complex dp = ev.p_prime(z);
    const auto &g = ev.params();
    const double ap = std::abs(p);
    return std::abs(dp * dp - (4.0 * p * p * p - g.g2 * p - g.g3)) / (1.0 + ap * ap * ap);
}

double parity_residual(const WeierstrassEvaluator &ev, Complex z)
{
    const auto a = ev.evaluate(z);
    const auto b = ev.evaluate(-z);
    if (a.overflow || b.overflow) {
        throw PoleError("parity check at a lattice-adjacent point");
    }
    // sigma(-z) = -sigma(z) means log sigma differs by i pi modulo 2 pi i.
    const Complex ratio = std::exp(b.log_sigma - a.log_sigma);
    return std::max({rel(b.p, a.p), rel(b.dp, -a.dp), rel(b.zeta, -a.zeta), std::abs(ratio + 1.0)});
}

double homogeneity_residual(const WeierstrassEvaluator &ev, double scale, Complex z)
{
    const double l = scale;
    const auto &g = ev.params();
    const WeierstrassEvaluator scaled({g.g2 / std::pow(l, 4), g.g3 / std::pow(l, 6)}, ev.options());
    const auto a = ev.evaluate(z);
    const auto b = scaled.evaluate(l * z);
    if (a.overflow || b.overflow) {
        throw PoleError("homogeneity check at a lattice-adjacent point");
    }
    const Complex ratio = std::exp(b.log_sigma - a.log_sigma) / l;
    return std::max({rel(b.p, a.p / (l * l)), rel(b.zeta, a.zeta / l), std::abs(ratio - 1.0)});
}

double rational_closure_residual(const WeierstrassEvaluator &rational, Complex z)
{
    const auto v = rational.evaluate(z);
    if (v.overflow) {
        throw PoleError("rational closure check at a lattice-adjacent point");
    }
    const Complex inv = 1.0 / z;
    auto r = [](Complex a, Complex b) { return std::abs(a - b) / std::abs(b); };
    return std::max({r(v.p, inv * inv), r(v.dp, -2.0 * inv * inv * inv), r(v.zeta, inv), r(std::exp(v.log_sigma), z)});
}

double laurent_consistency_residual(const WeierstrassEvaluator &ev, Complex z)
{
    const auto a = ev.evaluate(z);
    const auto b = ev.series(z);
    auto r = [](Complex x, Complex y) { return std::abs(x - y) / std::abs(y); };
    return std::max({r(a.p, b.p), r(a.dp, b.dp), r(a.zeta, b.zeta)});
}

} // namespace trife
