#include <doctest.h>

#include <cmath>

#include "sgf/elliptic.hpp"
#include "sgf/errors.hpp"
#include "sgf/operators.hpp"
#include "sgf/verify.hpp"

using namespace sgf;

namespace {

// Compact bump centred in the annulus with some angular structure.
ScalarField bump(const GridPtr& g, double center, double half)
{
    return ScalarField::from_function(g, [=](double r, double t) {
        const double z = (r - center) / half;
        if (std::abs(z) >= 1.0) return 0.0;
        return std::exp(1.0 - 1.0 / (1.0 - z * z)) * (1.0 + 0.4 * std::cos(t) - 0.3 * std::sin(4 * t));
    });
}

}  // namespace

TEST_SUITE("elliptic")
{
    TEST_CASE("Poisson error against the truncated manufactured solution halves twice per refinement")
    {
        const PoissonOrder o = measure_poisson_order({32, 64, 128}, 16, 8.0);
        REQUIRE(o.errors.size() == 3);
        CHECK(o.errors[0] / o.errors[1] == doctest::Approx(4.0).epsilon(0.1));
        CHECK(o.errors[1] / o.errors[2] == doctest::Approx(4.0).epsilon(0.1));
    }

    TEST_CASE("Poisson solution vanishes on the wall and inverts the discrete laplacian")
    {
        const GridPtr g = build_grid({64, 32, 6.0});
        const ScalarField target = bump(g, 3.0, 1.5);
        const ScalarField phi = solve_poisson(laplacian(target), {.circulation_tol = 1e-3, .check_circulation = false});
        CHECK(phi.max_abs_on_boundary() == 0.0);
        CHECK(norm_l2(phi - target) / norm_l2(target) < 1e-10);
    }

    TEST_CASE("Poisson rejects mode-0 data carrying net circulation")
    {
        const GridPtr g = build_grid({64, 16, 6.0});
        const ScalarField w = ScalarField::from_radial(g, [](double r) { return std::exp(-(r - 2) * (r - 2)); });
        CHECK_THROWS_AS(solve_poisson(w), IllPosedMode0);
        CHECK_NOTHROW(solve_poisson(w, {.circulation_tol = 1e-3, .check_circulation = false}));
    }

    TEST_CASE("stream solve inverts the stream operator and enforces no-slip")
    {
        const GridPtr g = build_grid({96, 32, 6.0});
        const ScalarField target = bump(g, 3.5, 1.5);
        for (double a : {0.05, 0.3}) {
            const StreamSolution sol = solve_stream_helmholtz(stream_operator(target, a), a);
            CHECK(norm_l2(sol.phi - target) / norm_l2(target) < 1e-9);
            CHECK(sol.u.tag() == BoundaryTag::no_slip);
            CHECK(sol.u.max_abs() > 0.0);
        }
    }

    TEST_CASE("the reusable solver matches the one-shot helper")
    {
        const GridPtr g = build_grid({48, 16, 5.0});
        const ScalarField q = bump(g, 2.5, 1.0);
        const StreamHelmholtzSolver solver(g, 0.2);
        CHECK((solver.solve_phi(q) - solve_stream_helmholtz(q, 0.2).phi).max_abs() == 0.0);
    }

    TEST_CASE("recover_q inverts the stream solve")
    {
        const GridPtr g = build_grid({64, 16, 6.0});
        const ScalarField q = bump(g, 3.0, 1.5);
        const StreamSolution sol = solve_stream_helmholtz(q, 0.2);
        // Interior rows only: recover_q uses the discrete operators away from the edges.
        double worst = 0.0;
        const ScalarField back = recover_q(sol.u, 0.2);
        for (int i = 3; i < g->n_r() - 3; ++i) {
            for (int j = 0; j < g->n_theta(); ++j) worst = std::max(worst, std::abs(back(i, j) - q(i, j)));
        }
        CHECK(worst < 5e-2 * q.max_abs());
    }

    TEST_CASE("alpha must be positive for the no-slip problem")
    {
        const GridPtr g = build_grid({16, 8, 4.0});
        CHECK_THROWS_AS(StreamHelmholtzSolver(g, 0.0), DomainError);
    }

    TEST_CASE("the stream solve is linear")
    {
        const GridPtr g = build_grid({48, 16, 5.0});
        const ScalarField a = bump(g, 2.5, 1.0);
        const ScalarField b = ScalarField::from_function(g, [](double r, double t) { return std::exp(-r) * std::sin(2 * t); });
        const StreamHelmholtzSolver s(g, 0.1);
        const double err = (s.solve_phi(3.0 * a - b) - (3.0 * s.solve_phi(a) - s.solve_phi(b))).max_abs();
        CHECK(err < 1e-12 * std::max(1.0, s.solve_phi(a).max_abs()));
    }
}
