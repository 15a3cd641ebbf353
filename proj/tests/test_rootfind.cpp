#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "extfactor/bounds.hpp"
#include "extfactor/errors.hpp"
#include "extfactor/rootfind.hpp"

using namespace extfactor;

namespace {

// Fixed point of cos, from 200 steps of x <- cos(x) started at 0.5 in 40-digit arithmetic.
constexpr double kDottie = 0.73908513321516064166;

}  // namespace

TEST_SUITE("rootfind") {
    TEST_CASE("brent finds sqrt(2)") {
        const auto r = brent([](double x) { return x * x - 2.0; }, Bracket(1.0, 2.0), 1e-12);
        CHECK(r.converged);
        CHECK(r.x == doctest::Approx(std::numbers::sqrt2).epsilon(1e-12));
    }

    TEST_CASE("brent on x - cos x") {
        const auto r = brent([](double x) { return x - std::cos(x); }, Bracket(0.0, 1.0), 1e-12);
        CHECK(r.converged);
        CHECK(std::abs(r.x - kDottie) < 1e-12);
    }

    TEST_CASE("brent on the golden-ratio member of the g family") {
        const BoundParams p(2.0, 1.0, 1.0);
        const auto r = brent([&](double x) { return fixed_point_map(x, p) - x; }, Bracket(1.0, 2.0),
                             1e-12);
        CHECK(std::abs(r.x - std::numbers::phi) < 1e-12);
    }

    TEST_CASE("brent rejects a bracket without a sign change") {
        CHECK_THROWS_AS(brent([](double x) { return x * x + 1.0; }, Bracket(-1.0, 1.0), 1e-12),
                        BracketError);
        CHECK_THROWS_AS(Bracket::checked([](double x) { return x * x + 1.0; }, -1.0, 1.0),
                        BracketError);
        CHECK_THROWS_AS(Bracket(1.0, 1.0), DomainError);
        CHECK_THROWS_AS(Bracket(2.0, 1.0), DomainError);
    }

    TEST_CASE("brent reports non-convergence when out of iterations") {
        const auto r = brent([](double x) { return x - std::cos(x); }, Bracket(0.0, 1.0), 1e-15, 2);
        CHECK_FALSE(r.converged);
        CHECK(r.iterations == 2);
    }

    TEST_CASE("brent stays inside the bracket and converges on random polynomials") {
        std::mt19937_64 rng(20260417);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int trial = 0; trial < 300; ++trial) {
            const double lo = -5.0 + 4.0 * unit(rng);
            const double hi = lo + 0.5 + 5.0 * unit(rng);
            const double root = lo + (hi - lo) * (0.01 + 0.98 * unit(rng));
            const double c1 = -2.0 + 4.0 * unit(rng);
            const double c2 = 0.1 + 3.0 * unit(rng);
            const double scale = unit(rng) < 0.5 ? -1.0 : 1.0;
            double seen_lo = hi;
            double seen_hi = lo;
            // (x - root) times a polynomial with no real roots: a single simple root.
            const ScalarFunction f = [&](double x) {
                seen_lo = std::min(seen_lo, x);
                seen_hi = std::max(seen_hi, x);
                const double u = x - c1;
                return scale * (x - root) * (u * u + c2) * (x * x + 0.5);
            };
            const auto r = brent(f, Bracket(lo, hi), 1e-12);
            REQUIRE(r.converged);
            CHECK(r.iterations <= 100);
            CHECK(std::abs(r.x - root) < 1e-9);
            CHECK(seen_lo >= lo);
            CHECK(seen_hi <= hi);
        }
    }

    TEST_CASE("fixed point of the identity map takes one step") {
        const auto r = fixed_point_iterate([](double x) { return x; }, 0.3, 0.0, 1.0, 1e-12);
        CHECK(r.root.converged);
        CHECK(r.root.iterations == 1);
        CHECK(r.root.x == 0.3);
        CHECK(r.monotonicity() == Monotonicity::constant);
    }

    TEST_CASE("fixed point of cos") {
        const auto r = fixed_point_iterate([](double x) { return std::cos(x); }, 0.0, 0.0, 1.0, 1e-13);
        CHECK(r.root.converged);
        CHECK(std::abs(r.root.x - kDottie) < 1e-12);
        CHECK(r.monotonicity() == Monotonicity::mixed);
    }

    TEST_CASE("fixed point of the g family rises monotonically to phi") {
        const BoundParams p(2.0, 1.0, 1.0);
        const auto r = fixed_point_iterate([&](double x) { return fixed_point_map(x, p); }, 1.0, 1.0,
                                           2.0, 1e-13);
        CHECK(r.root.converged);
        CHECK(std::abs(r.root.x - std::numbers::phi) < 1e-12);
        CHECK(r.monotonicity() == Monotonicity::increasing);
        CHECK(std::abs(r.root.f_x) <= 1e-13);
    }

    TEST_CASE("fixed point escaping the interval is a domain violation") {
        CHECK_THROWS_AS(fixed_point_iterate([](double x) { return x + 0.4; }, 0.0, 0.0, 1.0, 1e-12),
                        DomainViolation);
        CHECK_THROWS_AS(fixed_point_iterate([](double x) { return x; }, 2.0, 0.0, 1.0, 1e-12),
                        DomainViolation);
    }

    TEST_CASE("fixed point reports non-convergence on an oscillating map") {
        const auto r = fixed_point_iterate([](double x) { return 1.0 - x; }, 0.3, 0.0, 1.0, 1e-12, 50);
        CHECK_FALSE(r.root.converged);
        CHECK(r.root.iterations == 50);
        CHECK(r.monotonicity() == Monotonicity::mixed);
    }

    TEST_CASE("fixed point and brent agree on the g family across the grid") {
        const double tol = 1e-12;
        for (double alpha : {1.1, 1.5, 2.0, 3.0, 5.0, 10.0}) {
            for (double ratio : {1.0, 0.5, 0.1, 0.01}) {
                CAPTURE(alpha);
                CAPTURE(ratio);
                const BoundParams p(alpha, ratio, 1.0);
                const ScalarFunction g = [&](double x) { return fixed_point_map(x, p); };
                const auto fp = fixed_point_iterate(g, 1.0, 1.0, 2.0, tol);
                const auto br = brent([&](double x) { return g(x) - x; }, Bracket(1.0, 2.0), tol);
                REQUIRE(fp.root.converged);
                REQUIRE(br.converged);
                CHECK(std::abs(fp.root.x - br.x) <= 10.0 * tol);
            }
        }
    }

    TEST_CASE("observed contraction rate respects the Lipschitz bound") {
        for (double alpha : {1.1, 1.5, 2.0, 3.0, 5.0, 10.0}) {
            for (double ratio : {1.0, 0.5, 0.1, 0.01}) {
                CAPTURE(alpha);
                CAPTURE(ratio);
                const BoundParams p(alpha, ratio, 1.0);
                const double star = solve_rho_star(p).rho_star;
                const auto fp = fixed_point_iterate([&](double x) { return fixed_point_map(x, p); },
                                                    1.0, 1.0, 2.0, 1e-15);
                const double lambda = lipschitz_bound(p);
                for (std::size_t k = 0; k + 1 < fp.iterates.size(); ++k) {
                    const double e0 = std::abs(fp.iterates[k] - star);
                    const double e1 = std::abs(fp.iterates[k + 1] - star);
                    if (e0 < 0.1 && e0 > 1e-10) CHECK(e1 / e0 <= lambda + 0.05);
                }
            }
        }
    }
}
