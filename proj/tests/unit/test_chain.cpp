#include <doctest.h>

#include "helpers.hpp"
#include "trife/chain.hpp"
#include "trife/verification.hpp"

using namespace trife;
using testing::cuniform;

namespace
{

ChainConstants random_constants(std::uint64_t seed)
{
    ChainConstants c{cuniform(seed, 0), cuniform(seed, 1), cuniform(seed, 2), cuniform(seed, 3), cuniform(seed, 4)};
    if (std::abs(c.c3) < 0.3) {
        c.c3 *= 0.3 / std::abs(c.c3);
    }
    return c;
}

SampleSpec chain_box(const PhiChain &ch, std::uint64_t seed, int count)
{
    SampleSpec s = testing::box(seed, count, 0.3 * std::abs(ch.alpha()));
    s.pole_exclusion_radius = 0.0;
    return s;
}

Complex five_point(const ScalarFn &f, Complex x, double h)
{
    return (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h);
}

} // namespace

TEST_SUITE("chain")
{
    TEST_CASE("double-star limit closed forms")
    {
        const Quadruple q = chain_double_star(0.0, 6.0, 1.0);
        CHECK(std::abs(q.phi(1.0) - 1.0) < 1e-15);
        CHECK(std::abs(q.xi(0.5) - 1.0) < 1e-15);
        CHECK(std::abs(phi_star(0.0, 6.0, 0.0).phi(1.0) - 1.0) < 1e-15);
    }

    TEST_CASE("invariants of the chain ODE")
    {
        // (c0, c1, c2, c3) = (1, 2, 3, 4): g2 = 12 - 4, g3 = -8 + 4 - 1.
        const WeierstrassParams w = chain_invariants({1.0, 2.0, 3.0, 4.0, 0.0});
        CHECK(std::abs(w.g2 - 8.0) <= 1e-14);
        CHECK(std::abs(w.g3 + 5.0) <= 1e-14);
    }

    TEST_CASE("alpha point on the rational lattice")
    {
        const ChainConstants c{-4.0, 12.0, 3.0, 2.0, 0.0};
        const WeierstrassParams w = chain_invariants(c);
        CHECK(std::abs(w.g2) < 1e-14);
        CHECK(std::abs(w.g3) < 1e-14);
        const PhiChain ch = PhiChain::make(c);
        CHECK(std::abs(ch.alpha() - 1.0) < 1e-10);
    }

    TEST_CASE("alpha point conditions hold for random constants")
    {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const ChainConstants c = random_constants(seed);
            const PhiChain ch = PhiChain::make(c);
            const auto &ev = *ch.evaluator();
            CHECK(std::abs(ev.p(ch.alpha()) - c.c2 / 3.0) < 1e-10);
            CHECK(std::abs(ev.p_prime(ch.alpha()) - c.c0 * c.c3 / 4.0) < 1e-9 * (1.0 + std::abs(ev.p_prime(ch.alpha()))));
            CHECK(std::abs(ch.u(0.0)) < 1e-12);
            CHECK(std::abs(ch.du(0.0) - c.c0) < 1e-9);
        }
    }

    TEST_CASE("entire helpers are even in the square root")
    {
        for (int i = 0; i < 20; ++i) {
            const Complex w = cuniform(30, i, 3.0);
            const Complex s = std::sqrt(w);
            CHECK(testing::rel_err(sinhc_sqrt(w), std::sinh(-s) / (-s)) < 1e-13);
            CHECK(testing::rel_err(cosh_sqrt(w), std::cosh(-s)) < 1e-13);
            CHECK(testing::rel_err(cosh1_sqrt(w), (std::cosh(s) - 1.0) / w) < 1e-10);
        }
        CHECK(sinhc_sqrt(0.0) == Complex{1.0});
        CHECK(std::abs(cosh1_sqrt(0.0) - 0.5) < 1e-15);
        CHECK(std::abs(sinh3_sqrt(0.0) - 1.0 / 6.0) < 1e-15);
    }

    TEST_CASE("random chains satisfy the chain identities")
    {
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            const ChainConstants c = random_constants(seed + 100);
            const PhiChain ch = PhiChain::make(c);
            const ChainFunctions fns = chain_functions(ch);
            const SampleSpec spec = chain_box(ch, seed, 60);
            CHECK(eq34_residual(fns.phi, fns.tau_a.tau, fns.tau_a.A, spec).pass);
            CHECK(eq32_residual(fns.quad, spec).pass);
            CHECK(ode40_suite(fns.u, fns.du, c, spec).pass);
            CHECK(eq38_residual(fns.u, fns.tau_a, spec).pass);
        }
    }

    TEST_CASE("difference and psi forms of u agree")
    {
        const PhiChain ch = PhiChain::make(random_constants(7));
        for (int i = 0; i < 50; ++i) {
            const Complex x = cuniform(31, i, 0.3 * std::abs(ch.alpha()));
            if (std::abs(x) < 1e-2) {
                continue;
            }
            CHECK(std::abs(ch.u_difference(x) - ch.u_psi(x)) / (1.0 + std::abs(ch.u_psi(x))) < 1e-9);
            CHECK(testing::rel_err(five_point([&](Complex t) { return ch.phi(t); }, x, 1e-3), ch.u(x)) < 1e-7);
        }
    }

    TEST_CASE("group action on quadruples")
    {
        const PhiChain ch = PhiChain::make(random_constants(3));
        const Quadruple q = chain_functions(ch).quad;
        const std::pair<Complex, Complex> g1{Complex{0.3, 0.1}, Complex{1.2, -0.4}};
        const std::pair<Complex, Complex> g2{Complex{-0.5}, Complex{0.7, 0.2}};
        const Quadruple twice = group_action_33(group_action_33(q, g1.first, g1.second), g2.first, g2.second);
        const auto g = compose_33(g1, g2);
        const Quadruple once = group_action_33(q, g.first, g.second);
        const Quadruple same = group_action_33(q, 0.0, 1.0);
        const SampleSpec spec = chain_box(ch, 32, 20);
        for (int i = 0; i < 20; ++i) {
            const Complex x = sample_point(spec, i, 0);
            CHECK(testing::rel_err(once.eta(x), twice.eta(x)) <= 1e-12);
            CHECK(testing::rel_err(once.xi(x), twice.xi(x)) <= 1e-12);
            CHECK(testing::rel_err(once.gamma(x), twice.gamma(x)) <= 1e-12);
            CHECK(same.xi(x) == q.xi(x));
            CHECK(same.eta(x) == q.eta(x));
        }
        CHECK(eq32_residual(once, spec).pass);
        CHECK_THROWS_AS(group_action_33(q, 1.0, 0.0), ConstraintError);
    }

    TEST_CASE("normalisation fixes the orbit representative")
    {
        const PhiChain ch = PhiChain::make(random_constants(5));
        const Quadruple q = group_action_33(chain_functions(ch).quad, Complex{0.4, -0.2}, Complex{1.5, 0.3});
        const Quadruple n = normalize(q);
        CHECK(std::abs(five_point(n.xi, 0.0, 1e-3) - 1.0) <= 1e-8);
        CHECK(std::abs(five_point(n.eta, 0.0, 1e-3)) <= 1e-8);
        CHECK(eq32_residual(n, chain_box(ch, 33, 40)).pass);
    }

    TEST_CASE("triad rebuilt from a chain")
    {
        const PhiChain ch = PhiChain::make(random_constants(11));
        const Complex alpha1{0.3, 0.2};
        SampleSpec spec = testing::box(34, 100, 0.5);
        CHECK(fe14_residual(triad_from_chain(ch, alpha1, 1.0, 0.0), spec).pass);
        CHECK(fe14_residual(triad_from_chain(ch, alpha1, 0.0, 1.0), spec).pass);
        CHECK(fe14_residual(triad_from_chain(ch, alpha1, 0.5, 0.5, true), spec).max_abs > 1e-3);
        CHECK_THROWS_AS(triad_from_chain(ch, alpha1, 0.5, 0.5), ConstraintError);
    }

    TEST_CASE("chain requires a nonzero cubic coefficient")
    {
        CHECK_THROWS_AS(PhiChain::make({1.0, 1.0, 1.0, 0.0, 0.0}), ConstraintError);
    }
}
