#include "trife/three_body.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "trife/quadrature.hpp"

namespace trife
{

PairPotentials potentials_from_triple(const SolutionTriple &s, Complex eps1, Complex eps2, Complex E0)
{
    PairPotentials pots;
    pots.E0 = E0;
    pots.eps = {eps1, eps2, E0 - eps1 - eps2};
    for (int j = 0; j < 3; ++j) {
        const Slot slot = s.slots[j];
        const Complex e = pots.eps[j];
        pots.u[j] = [slot, e](Complex x) {
            const Complex f = slot.value(x);
            return 3.0 * f * f + 2.0 * slot.d1(x) - slot.big(x) + e;
        };
    }
    return pots;
}

Complex GroundState::log_psi(int j, Complex d) const
{
    const Complex anchor{d.real() < 0.0 ? -log_psi_anchor : log_psi_anchor};
    return integrate_segment(s_.slots[j].value, anchor, d);
}

Complex GroundState::log_wavefunction(Complex x1, Complex x2, Complex x3) const
{
    return log_psi(0, x2 - x3) + log_psi(1, x3 - x1) + log_psi(2, x1 - x2);
}

Complex GroundState::laplacian_ratio(Complex x1, Complex x2, Complex x3) const
{
    const std::array<Complex, 3> d{x2 - x3, x3 - x1, x1 - x2};
    Complex sq{}, sum{}, der{};
    for (int j = 0; j < 3; ++j) {
        const Complex f = s_.small(j, d[j]);
        sq += f * f;
        sum += f;
        der += s_.d1(j, d[j]);
    }
    return 3.0 * sq - sum * sum + 2.0 * der;
}

namespace
{

// exp(z) - 1 without cancellation for small |z|.
Complex expm1c(Complex z)
{
    const double a = z.real(), b = z.imag();
    const double sh = std::sin(0.5 * b);
    return {std::expm1(a) * std::cos(b) - 2.0 * sh * sh, std::exp(a) * std::sin(b)};
}

} // namespace

Complex GroundState::laplacian_ratio_fd(Complex x1, Complex x2, Complex x3, double h) const
{
    const std::array<Complex, 3> d{x2 - x3, x3 - x1, x1 - x2};
    auto inc = [&](int j, double delta) { return gauss_legendre_segment(s_.slots[j].value, d[j], d[j] + delta); };
    // Coordinate i enters pair coordinate j with sign sign[i][j].
    static constexpr int sign[3][3] = {{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}};
    Complex acc{};
    for (int i = 0; i < 3; ++i) {
        Complex up{}, down{};
        for (int j = 0; j < 3; ++j) {
            if (sign[i][j] != 0) {
                up += inc(j, sign[i][j] * h);
                down += inc(j, -sign[i][j] * h);
            }
        }
        acc += expm1c(up) + expm1c(down);
    }
    return acc / (h * h);
}

Complex schrodinger_mismatch(const GroundState &gs, const PairPotentials &pots, Complex x1, Complex x2, Complex x3)
{
    const Complex U = pots.total(x2 - x3, x3 - x1, x1 - x2);
    return gs.laplacian_ratio(x1, x2, x3) - (U - pots.E0);
}

namespace
{

struct Config {
    Complex x1, x2, x3;
};

// (x, y) are the first two pair coordinates; x1 is free.
Config config_from(Complex x, Complex y, Complex x1)
{
    const Complex z = -x - y;
    const Complex x2 = x1 - z;
    return {x1, x2, x2 - x};
}

} // namespace

ResidualReport schrodinger_residual(const SolutionTriple &s, const PairPotentials &pots, const SampleSpec &spec,
                                    double tol, SchrodingerMode mode, double h)
{
    const GroundState gs(s);
    std::uint64_t index = 0;
    const std::string name = mode == SchrodingerMode::analytic ? "schrodinger" : "schrodinger_fd";
    return sample_pairs(name, spec, tol, [&](Complex x, Complex y) -> std::optional<double> {
        const Complex x1 = sample_point(spec, index++, 2);
        if (near_declared_pole(s, x, y, spec.pole_exclusion_radius)) {
            return std::nullopt;
        }
        const Config c = config_from(x, y, x1);
        const Complex an = gs.laplacian_ratio(c.x1, c.x2, c.x3);
        if (mode == SchrodingerMode::analytic) {
            const Complex target = pots.total(x, y, -x - y) - pots.E0;
            return std::abs(an - target) / (1.0 + std::abs(target));
        }
        const Complex fd = gs.laplacian_ratio_fd(c.x1, c.x2, c.x3, h);
        return std::abs(fd - an) / (1.0 + std::abs(an));
    });
}

double fd_convergence_ratio(const SolutionTriple &s, const SampleSpec &spec, double h)
{
    const GroundState gs(s);
    std::vector<double> ratios;
    for (int i = 0; i < spec.count; ++i) {
        const Complex x = sample_point(spec, std::uint64_t(i), 0);
        const Complex y = sample_point(spec, std::uint64_t(i), 1);
        const Complex x1 = sample_point(spec, std::uint64_t(i), 2);
        if (near_declared_pole(s, x, y, spec.pole_exclusion_radius)) {
            continue;
        }
        try {
            const Config c = config_from(x, y, x1);
            const Complex an = gs.laplacian_ratio(c.x1, c.x2, c.x3);
            const double e1 = std::abs(gs.laplacian_ratio_fd(c.x1, c.x2, c.x3, h) - an);
            const double e2 = std::abs(gs.laplacian_ratio_fd(c.x1, c.x2, c.x3, 0.5 * h) - an);
            // Skip configurations where the truncation error is already at
            // rounding level; the ratio is meaningless there.
            if (e2 > 1e-11 * (1.0 + std::abs(an)) && std::isfinite(e1)) {
                ratios.push_back(e1 / e2);
            }
        } catch (const PoleError &) {
        }
    }
    if (ratios.empty()) {
        throw Error("no configuration with a measurable finite-difference error");
    }
    std::nth_element(ratios.begin(), ratios.begin() + ratios.size() / 2, ratios.end());
    return ratios[ratios.size() / 2];
}

} // namespace trife
