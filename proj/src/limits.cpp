#include "trife/limits.hpp"

#include <algorithm>
#include <cmath>

#include "trife/chain.hpp"

namespace trife
{

std::vector<double> default_epsilons() { return {1e-2, 1e-3, 1e-4}; }

void validate_epsilons(const std::vector<double> &eps)
{
    if (eps.size() < 2) {
        throw ConstraintError("an epsilon ladder needs at least two entries");
    }
    for (double e : eps) {
        if (!std::isfinite(e) || !(e > 0.0)) {
            throw ConstraintError("epsilon entries must be finite and positive");
        }
    }
    if (std::all_of(eps.begin(), eps.end(), [&](double e) { return e == eps.front(); })) {
        throw ConstraintError("epsilon ladder needs distinct values");
    }
}

double loglog_slope(const std::vector<double> &x, const std::vector<double> &y)
{
    const std::size_t n = x.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(std::max(y[i], 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<Complex> limit_grid(int n, double half_width)
{
    std::vector<Complex> g;
    g.reserve(n);
    for (int i = 0; i < n; ++i) {
        g.emplace_back(-half_width + 2.0 * half_width * i / (n - 1), 0.0);
    }
    return g;
}

namespace
{

template <class Dev>
LimitLadder run_ladder(const std::string &name, const std::vector<double> &eps, Dev dev)
{
    validate_epsilons(eps);
    LimitLadder out;
    out.name = name;
    out.eps = eps;
    for (double e : eps) {
        out.deviation.push_back(dev(e));
    }
    out.slope = loglog_slope(out.eps, out.deviation);
    out.pass = std::isfinite(out.slope) && out.slope >= out.min_slope;
    return out;
}

} // namespace

LimitLadder limit_c3(Complex c0, Complex c1, Complex c2, const std::vector<double> &eps,
                     const std::vector<Complex> &grid)
{
    const StarChain star{c0, c1, c2};
    return run_ladder("c3", eps, [&](double e) {
        const ChainConstants c{c0, c1, c2, Complex{e}, Complex{}};
        const WeierstrassEvaluator ev(chain_invariants(c));
        double dev = 0.0;
        for (Complex x : grid) {
            dev = std::max(dev, std::abs(u_closed_form(c, ev, x) - star.u(x)));
        }
        return dev;
    });
}

LimitLadder limit_c2(Complex c0, Complex c1, const std::vector<double> &eps, const std::vector<Complex> &grid)
{
    const Quadruple dstar = chain_double_star(c0, c1, Complex{});
    return run_ladder("c2", eps, [&](double e) {
        const StarChain star{c0, c1, Complex{e}};
        double dev = 0.0;
        for (Complex x : grid) {
            dev = std::max(dev, std::abs(star.phi(x) - dstar.phi(x)));
        }
        return dev;
    });
}

LimitLadder limit_lambda(Complex a, Complex b, std::array<Complex, 3> g, const std::vector<double> &eps,
                         const std::vector<Complex> &grid)
{
    PolynomialFamilyParams pp;
    pp.alpha = a;
    pp.beta = {b, b, b};
    pp.gamma = g;
    const SolutionTriple poly = make_polynomial_solution(pp);
    return run_ladder("lambda", eps, [&](double e) {
        EntireFamilyParams ep;
        const Complex amp = 2.0 * a / (e * e);
        ep.alpha = {amp, amp, amp};
        ep.lambda = e;
        ep.beta = b - 2.0 * a / e;
        ep.gamma = {g[0] - amp, g[1] - amp, g[2] - amp};
        const SolutionTriple ent = make_entire_solution(ep);
        double dev = 0.0;
        for (Complex x : grid) {
            for (int j = 0; j < 3; ++j) {
                dev = std::max(dev, std::abs(ent.small(j, x) - poly.small(j, x)));
            }
        }
        return dev;
    });
}

} // namespace trife
