#include <doctest.h>

#include "helpers.hpp"
#include "trife/lax.hpp"

using namespace trife;

namespace
{

PairEntrySet elliptic_set()
{
    return elliptic_preset(Complex{0.0, 1.0}, Complex{0.3, 0.2}, {Complex{1.1, 0.2}, Complex{0.4, -0.3}},
                           {Complex{0.1}, Complex{-0.2}, Complex{0.1}});
}

ThreeBodyState start()
{
    ThreeBodyState s;
    s.q = {-2.0, 0.0, 2.5};
    s.p = {0.3, -0.1, -0.2};
    return s;
}

} // namespace

TEST_SUITE("lax")
{
    TEST_CASE("commutator condition holds for the integrable presets")
    {
        const SampleSpec spec = testing::box(1, 100, 2.0);
        for (const PairEntrySet &set : {rational_preset(), hyperbolic_preset(), elliptic_set()}) {
            const auto r = eq84_residual(set, spec);
            CHECK(r.pass);
            CHECK(r.max_abs <= 1e-8);
        }
        CHECK(std::abs(rational_preset().b_scale - Complex{0.0, 1.0}) < 1e-10);
    }

    TEST_CASE("cocycle and determinant conditions")
    {
        const SampleSpec spec = testing::box(2, 100, 2.0);
        for (const PairEntrySet &set : {rational_preset(), hyperbolic_preset(), elliptic_set()}) {
            CHECK(phi_cocycle_residual(set, spec).max_abs <= 1e-9);
            CHECK(det91_residual(b_functions(set), spec).max_abs <= 1e-7);
        }
        CHECK(phi_cocycle_residual(random_preset(7), spec).max_abs > 1e-2);
    }

    TEST_CASE("cocycle residual is invariant under cyclic relabelling")
    {
        const PairEntrySet set = random_preset(3);
        const std::array<Complex, 3> q{Complex{0.1, 0.2}, Complex{-0.5}, Complex{0.7, -0.3}};
        const double a = cocycle_point(set, q, 0, 1, 2);
        CHECK(std::abs(a - cocycle_point(set, q, 1, 2, 0)) <= 1e-14);
        CHECK(std::abs(a - cocycle_point(set, q, 2, 0, 1)) <= 1e-14);
    }

    TEST_CASE("elliptic potential is a derivative of p")
    {
        const PairEntrySet set = elliptic_set();
        const PairFns V = potential_from_A(set);
        const WeierstrassEvaluator ev(WeierstrassParams{Complex{1.1, 0.2}, Complex{0.4, -0.3}});
        const Complex gamma{0.0, 1.0};
        for (double x : {0.4, 0.9, -0.7}) {
            for (int j = 0; j < 3; ++j) {
                for (int k = 0; k < 3; ++k) {
                    if (j == k) {
                        continue;
                    }
                    const Complex want = gamma * gamma * ev.p_prime(x + set.lambda[j] - set.lambda[k]);
                    CHECK(testing::rel_err(V[j][k](x), want) <= 1e-7);
                    CHECK(std::abs(V[j][k](x) + V[k][j](-x)) <= 1e-10 * std::abs(want));
                }
            }
        }
        CHECK(std::abs(potential_from_A(rational_preset())[0][1](1.0) - 2.0) < 1e-14);
    }

    TEST_CASE("free motion with zero potential")
    {
        PairFns V;
        for (auto &row : V) {
            for (auto &f : row) {
                f = [](Complex) { return Complex{}; };
            }
        }
        const ThreeBodyState s0 = start();
        const Trajectory tr = integrate_motion(V, s0, 1e-2, 2.0);
        const ThreeBodyState &end = tr.states.back();
        for (int j = 0; j < 3; ++j) {
            CHECK(std::abs(end.q[j] - (s0.q[j] + s0.p[j] * end.t)) <= 1e-12);
        }
        ThreeBodyState crash;
        crash.q = {0.0, 1.0, 5.0};
        crash.p = {1.0, -1.0, 0.0};
        CHECK_THROWS_AS(integrate_motion(V, crash, 1e-3, 2.0), ProximityError);
    }

    TEST_CASE("rational flow conserves the spectral invariants")
    {
        const PairEntrySet set = rational_preset();
        const Trajectory tr = integrate_motion(potential_from_A(set), start(), 1e-3, 10.0);
        const SpectrumReport rep = isospectrality_report(set, tr);
        for (double d : rep.drift) {
            CHECK(d <= 1e-6);
        }
        CHECK(rep.momentum_drift <= 1e-10);
        CHECK(rep.energy_drift <= 1e-8);
        CHECK(rep.lax_residual <= 1e-4);

        const auto [L, M] = build_L_M(set, tr.states.back());
        const auto &p = tr.states.back().p;
        CHECK(std::abs(L[0][0] + L[1][1] + L[2][2] - (p[0] + p[1] + p[2])) <= 1e-14);

        PairEntrySet no_b = set;
        for (auto &row : no_b.B) {
            for (auto &f : row) {
                f = nullptr;
            }
        }
        CHECK(isospectrality_report(no_b, tr).lax_residual > 1e-2);
    }

    TEST_CASE("induced triple integrates the b functions")
    {
        const PairEntrySet set = elliptic_set();
        REQUIRE(set.induced.has_value());
        const SolutionTriple t = induced_triple(set);
        const BFunctions b = b_functions(set);
        for (Complex x : {Complex{0.3, 0.2}, Complex{-0.7, 0.5}}) {
            for (int j = 0; j < 3; ++j) {
                CHECK(testing::rel_err(t.d1(j, x), b.b[j](x)) <= 1e-10);
            }
        }
        CHECK(fe14_residual(t, testing::box(4, 100, 1.5)).pass);
        CHECK_THROWS_AS(induced_triple(random_preset(1)), Error);
    }
}
