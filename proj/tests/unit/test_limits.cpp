#include <doctest.h>

#include "trife/limits.hpp"

using namespace trife;

TEST_SUITE("limits")
{
    TEST_CASE("slope fit on exact power laws")
    {
        const std::vector<double> x{1e-1, 1e-2, 1e-3};
        CHECK(std::abs(loglog_slope(x, {2e-2, 2e-4, 2e-6}) - 2.0) < 1e-12);
        CHECK(std::abs(loglog_slope(x, {3e-1, 3e-2, 3e-3}) - 1.0) < 1e-12);
    }

    TEST_CASE("epsilon ladders are validated")
    {
        CHECK_NOTHROW(validate_epsilons(default_epsilons()));
        CHECK_THROWS_AS(validate_epsilons({1e-2}), ConstraintError);
        CHECK_THROWS_AS(validate_epsilons({1e-2, 0.0}), ConstraintError);
        CHECK_THROWS_AS(validate_epsilons({1e-2, -1e-3}), ConstraintError);
        CHECK_THROWS_AS(validate_epsilons({1e-2, 1e-2}), ConstraintError);
        CHECK_THROWS_AS(validate_epsilons({1e-2, std::nan("")}), ConstraintError);
        CHECK_THROWS_AS(limit_c3(0.7, 1.0, 0.5, {0.0, 1e-3}), ConstraintError);
    }

    TEST_CASE("grid is real and symmetric")
    {
        const auto g = limit_grid(5, 2.0);
        REQUIRE(g.size() == 5);
        CHECK(g.front() == Complex{-2.0});
        CHECK(g[2] == Complex{0.0});
        CHECK(g.back() == Complex{2.0});
    }

    TEST_CASE("c3 to zero converges linearly")
    {
        const LimitLadder l = limit_c3(0.7, 1.0, 0.5, default_epsilons());
        CHECK(l.pass);
        CHECK(l.slope >= 0.9);
        CHECK(l.deviation.front() > l.deviation.back());
    }

    TEST_CASE("c2 to zero converges linearly")
    {
        const LimitLadder l = limit_c2(0.7, 1.0, default_epsilons());
        CHECK(l.pass);
        CHECK(l.slope >= 0.9);
    }

    TEST_CASE("lambda to zero converges linearly")
    {
        const LimitLadder l = limit_lambda(0.8, 0.3, {Complex{0.1}, Complex{0.2}, Complex{-0.3}}, default_epsilons());
        CHECK(l.pass);
        CHECK(l.slope >= 0.9);
    }
}
