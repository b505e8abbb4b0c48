#include <doctest.h>

#include <vector>

#include "helpers.hpp"
#include "trife/elliptic.hpp"

using namespace trife;
using testing::rel_err;

TEST_SUITE("elliptic")
{
    TEST_CASE("rational lattice gives the closed forms")
    {
        const WeierstrassEvaluator ev(WeierstrassParams{});
        CHECK(ev.p(0.5) == Complex{4.0});
        CHECK(rel_err(ev.p(Complex{0.0, 2.0}), -0.25) < 1e-15);
        CHECK(ev.p_prime(0.5) == Complex{-16.0});
        CHECK(ev.p_prime(1.0) == Complex{-2.0});
        CHECK(ev.zeta(0.5) == Complex{2.0});
        CHECK(ev.zeta(-0.25) == Complex{-4.0});
        CHECK(rel_err(ev.sigma(0.5), 0.5) < 1e-15);
    }

    TEST_CASE("sigma vanishes at the origin for any lattice")
    {
        const WeierstrassEvaluator ev(WeierstrassParams{Complex{0.7, 0.2}, Complex{-0.4, 0.1}});
        CHECK(ev.sigma(0.0) == Complex{});
    }

    TEST_CASE("origin and non-finite arguments are rejected")
    {
        const WeierstrassEvaluator ev(WeierstrassParams{Complex{1.0}, Complex{0.5}});
        CHECK_THROWS_AS(ev.p(0.0), PoleError);
        CHECK_THROWS_AS(ev.zeta(0.0), PoleError);
        CHECK_THROWS_AS(ev.evaluate(Complex{std::nan(""), 0.0}), ConstraintError);
        CHECK_THROWS_AS(WeierstrassEvaluator(WeierstrassParams{Complex{INFINITY}, Complex{}}), ConstraintError);
    }

    TEST_CASE("halving limit raises a reduction error")
    {
        EllipticOptions opt;
        opt.max_halvings = 3;
        const WeierstrassEvaluator ev(WeierstrassParams{Complex{1.0}, Complex{1.0}}, opt);
        CHECK_THROWS_AS(ev.evaluate(Complex{100.0, 0.0}), ReductionError);
    }

    TEST_CASE("options are validated")
    {
        EllipticOptions opt;
        opt.series_order = 5;
        CHECK_THROWS_AS(WeierstrassEvaluator(WeierstrassParams{}, opt), ConstraintError);
        opt = {};
        opt.radius_factor = 0.0;
        CHECK_THROWS_AS(WeierstrassEvaluator(WeierstrassParams{}, opt), ConstraintError);
    }

    TEST_CASE("low-order Laurent coefficients match hand expansion")
    {
        const Complex g2{0.8, -0.3}, g3{-0.2, 0.6};
        const auto c = laurent_coefficients({g2, g3}, 6);
        // Substituting the series into p'' = 6 p^2 - g2/2 by hand.
        CHECK(rel_err(c[2], g2 / 20.0) < 1e-15);
        CHECK(rel_err(c[3], g3 / 28.0) < 1e-15);
        CHECK(rel_err(c[4], g2 * g2 / 1200.0) < 1e-14);
        CHECK(rel_err(c[5], 3.0 * g2 * g3 / 6160.0) < 1e-14);
        CHECK(rel_err(c[6], (g2 * g2 * g2 / 12000.0 + g3 * g3 / 784.0) / 13.0) < 1e-13);
    }

    TEST_CASE("small arguments match direct series summation")
    {
        for (int i = 0; i < 40; ++i) {
            const Complex g2 = testing::cuniform(3, 3 * i) * 0.7;
            const Complex g3 = testing::cuniform(3, 3 * i + 1) * 0.7;
            const Complex z = std::polar(0.01, testing::uniform(3, 1000 + i, 0.0, 6.28));
            // Independent recursion: coefficients d_k of p = 1/z^2 + sum d_k z^{2k-2}.
            std::vector<Complex> d(32);
            d[2] = g2 / 20.0;
            d[3] = g3 / 28.0;
            for (int k = 4; k < 32; ++k) {
                Complex acc{};
                for (int m = 2; m <= k - 2; ++m) {
                    acc += d[m] * d[k - m];
                }
                d[k] = acc * 3.0 / ((2.0 * k + 1.0) * (k - 3.0));
            }
            Complex p = 1.0 / (z * z);
            for (int k = 2; k < 32; ++k) {
                p += d[k] * std::pow(z, 2 * k - 2);
            }
            const WeierstrassEvaluator ev(WeierstrassParams{g2, g3});
            CHECK(rel_err(ev.p(z), p) < 1e-12);
            CHECK(laurent_consistency_residual(ev, z) < 1e-12);
        }
    }

    TEST_CASE("sinh lattice matches the hyperbolic closed forms")
    {
        const WeierstrassEvaluator ev(testing::sinh_lattice());
        for (int i = 0; i < 50; ++i) {
            const Complex z = testing::cuniform(9, i, 1.4);
            if (std::abs(z) < 0.05) {
                continue;
            }
            const Complex sh = std::sinh(z), ch = std::cosh(z);
            CHECK(rel_err(ev.p(z), 1.0 / (sh * sh) + 1.0 / 3.0) < 1e-12);
            CHECK(rel_err(ev.p_prime(z), -2.0 * ch / (sh * sh * sh)) < 1e-12);
            CHECK(rel_err(ev.zeta(z), ch / sh - z / 3.0) < 1e-12);
            CHECK(rel_err(ev.sigma(z), sh * std::exp(-z * z / 6.0)) < 1e-12);
        }
    }

    TEST_CASE("lattice points raise the overflow flag")
    {
        const WeierstrassEvaluator ev(testing::sinh_lattice());
        const auto v = ev.evaluate(Complex{0.0, M_PI});
        CHECK(v.overflow);
        CHECK_THROWS_AS(ev.p(Complex{0.0, M_PI}), PoleError);
    }

    TEST_CASE("defining ODE holds on random lattices")
    {
        for (int i = 0; i < 200; ++i) {
            const WeierstrassEvaluator ev(
                WeierstrassParams{testing::cuniform(21, 3 * i), testing::cuniform(21, 3 * i + 1)});
            const Complex z = testing::cuniform(21, 3 * i + 2, 2.0);
            CHECK(p_ode_residual(ev, z) <= 1e-9);
        }
    }

    TEST_CASE("parity and homogeneity")
    {
        for (int i = 0; i < 200; ++i) {
            const WeierstrassEvaluator ev(
                WeierstrassParams{testing::cuniform(22, 4 * i), testing::cuniform(22, 4 * i + 1)});
            const Complex z = testing::cuniform(22, 4 * i + 2, 2.0);
            const double scale = testing::uniform(22, 100000 + i, 0.5, 2.0);
            CHECK(parity_residual(ev, z) <= 1e-12);
            CHECK(homogeneity_residual(ev, scale, z) <= 1e-9);
        }
    }

    TEST_CASE("rational closure holds out to |z| = 10")
    {
        const WeierstrassEvaluator ev(WeierstrassParams{});
        for (int i = 0; i < 200; ++i) {
            const double r = 0.05 * std::pow(200.0, testing::uniform(23, 2 * i, 0.0, 1.0));
            const Complex z = std::polar(r, testing::uniform(23, 2 * i + 1, 0.0, 6.283));
            CHECK(rational_closure_residual(ev, z) <= 1e-13);
        }
    }

    TEST_CASE("zeta' = -p and (log sigma)' = zeta by central differences")
    {
        const double h = 1e-5;
        for (int i = 0; i < 50; ++i) {
            const WeierstrassEvaluator ev(
                WeierstrassParams{testing::cuniform(24, 3 * i), testing::cuniform(24, 3 * i + 1)});
            const Complex z = testing::cuniform(24, 3 * i + 2, 1.5);
            if (std::abs(z) < 0.2) {
                continue;
            }
            const Complex dz = (ev.zeta(z + h) - ev.zeta(z - h)) / (2.0 * h);
            CHECK(std::abs(dz + ev.p(z)) <= 1e-6 * (1.0 + std::abs(ev.p(z))));
            const Complex dls = (ev.log_sigma(z + h) - ev.log_sigma(z - h)) / (2.0 * h);
            CHECK(std::abs(dls - ev.zeta(z)) <= 1e-6 * (1.0 + std::abs(ev.zeta(z))));
        }
    }

    TEST_CASE("addition theorem")
    {
        const WeierstrassEvaluator rational(WeierstrassParams{});
        CHECK(p_addition_residual(rational, 0.3, 0.7) < 1e-10);
        CHECK_THROWS_AS(p_addition_residual(rational, 0.4, 0.4), DegenerateError);
        for (int i = 0; i < 100; ++i) {
            const WeierstrassEvaluator ev(
                WeierstrassParams{testing::cuniform(25, 4 * i), testing::cuniform(25, 4 * i + 1)});
            const Complex x = std::polar(testing::uniform(25, 1000 + 2 * i, 0.1, 1.0),
                                         testing::uniform(25, 5000 + i, 0.0, 6.283));
            const Complex a = std::polar(testing::uniform(25, 1001 + 2 * i, 0.1, 1.0),
                                         testing::uniform(25, 7000 + i, 0.0, 6.283));
            CHECK(p_addition_residual(ev, x, a) < 1e-8);
        }
    }

    TEST_CASE("evaluator is immutable and shareable")
    {
        const WeierstrassEvaluator ev(WeierstrassParams{Complex{1.0}, Complex{0.5}});
        const Complex z{0.7, -0.4};
        const auto a = ev.evaluate(z);
        const auto b = ev.evaluate(z);
        CHECK(a.p == b.p);
        CHECK(a.log_sigma == b.log_sigma);
    }
}
