#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sgf/errors.hpp"
#include "sgf/operators.hpp"

using namespace sgf;

namespace {

double max_diff(const ScalarField& a, const ScalarField& b) { return (a - b).max_abs(); }

double g(double r) { return std::exp(-(r - 2.5) * (r - 2.5)); }
double dg(double r) { return -2.0 * (r - 2.5) * g(r); }

}  // namespace

TEST_SUITE("operators")
{
    TEST_CASE("angular derivatives are spectral")
    {
        const GridPtr grid = build_grid({32, 32, 6.0});
        const ScalarField f = ScalarField::from_function(grid, [](double r, double t) { return g(r) * std::cos(3 * t); });
        const ScalarField df = ScalarField::from_function(grid, [](double r, double t) { return -3 * g(r) * std::sin(3 * t); });
        const ScalarField d2f = ScalarField::from_function(grid, [](double r, double t) { return -9 * g(r) * std::cos(3 * t); });
        CHECK(max_diff(d_theta(f), df) < 1e-12);
        CHECK(max_diff(d_theta2(f), d2f) < 1e-11);
    }

    TEST_CASE("spectrum round trip")
    {
        const GridPtr grid = build_grid({12, 16, 4.0});
        std::mt19937 rng(7);
        std::normal_distribution<double> n01;
        std::vector<double> v(grid->size());
        for (double& x : v) x = n01(rng);
        const ScalarField f(grid, v);
        CHECK(max_diff(from_angular_spectrum(grid, angular_spectrum(f)), f) < 1e-13);
    }

    TEST_CASE("radial derivative is second order")
    {
        double prev = 0.0;
        for (int n : {64, 128, 256}) {
            const GridPtr grid = build_grid({n, 8, 8.0});
            const double err = max_diff(d_r(ScalarField::from_radial(grid, g)), ScalarField::from_radial(grid, dg));
            if (prev > 0.0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.15));
            prev = err;
        }
    }

    TEST_CASE("laplacian matches a manufactured field at second order")
    {
        // Delta (g(r) cos 2t) = (g'' + g'/r - 4 g / r^2) cos 2t
        auto exact = [](double r, double t) {
            const double g2 = (4.0 * (r - 2.5) * (r - 2.5) - 2.0) * g(r);
            return (g2 + dg(r) / r - 4.0 * g(r) / (r * r)) * std::cos(2 * t);
        };
        double prev = 0.0;
        for (int n : {64, 128, 256}) {
            const GridPtr grid = build_grid({n, 16, 8.0});
            const ScalarField f = ScalarField::from_function(grid, [](double r, double t) { return g(r) * std::cos(2 * t); });
            const double err = norm_l2(laplacian(f) - ScalarField::from_function(grid, exact));
            if (prev > 0.0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.15));
            prev = err;
        }
    }

    TEST_CASE("harmonic fields have a small discrete laplacian")
    {
        const GridPtr grid = build_grid({256, 16, 8.0});
        const ScalarField f = ScalarField::from_function(grid, [](double r, double t) { return std::cos(2 * t) / (r * r); });
        CHECK(norm_l2(laplacian(f)) < 1e-3);
    }

    TEST_CASE("perp_grad is divergence free and its curl is the laplacian")
    {
        const GridPtr grid = build_grid({96, 32, 8.0});
        const ScalarField psi =
            ScalarField::from_function(grid, [](double r, double t) { return g(r) * (1.0 + 0.5 * std::sin(3 * t)); });
        const VectorField u = perp_grad(psi);
        CHECK(divergence(u).max_abs() < 1e-10);
        const double rel = norm_l2(curl_perp(u) - laplacian(psi)) / norm_l2(laplacian(psi));
        CHECK(rel < 1e-2);
    }

    TEST_CASE("advection by a rotation is an angle derivative")
    {
        // u_theta = r Omega(r): u . grad q = Omega dq/dtheta, exact in theta.
        const GridPtr grid = build_grid({48, 32, 6.0});
        auto omega = [](double r) { return 1.0 / (r * r); };
        const VectorField u(ScalarField::zeros(grid), ScalarField::from_radial(grid, [&](double r) { return r * omega(r); }));
        const ScalarField q = ScalarField::from_function(grid, [](double r, double t) { return g(r) * std::cos(3 * t); });
        const ScalarField exact =
            ScalarField::from_function(grid, [&](double r, double t) { return -3.0 * omega(r) * g(r) * std::sin(3 * t); });
        CHECK(max_diff(advect(u, q), exact) < 1e-12);
        CHECK(max_diff(advect(u, q, true), exact) < 1e-12);
    }

    TEST_CASE("advection is linear in q")
    {
        const GridPtr grid = build_grid({32, 16, 5.0});
        const ScalarField psi = ScalarField::from_function(grid, [](double r, double t) { return g(r) * std::cos(t); });
        const VectorField u = perp_grad(psi);
        const ScalarField a = ScalarField::from_function(grid, [](double r, double t) { return r * std::sin(2 * t); });
        const ScalarField b = ScalarField::from_function(grid, [](double r, double) { return g(r); });
        CHECK(max_diff(advect(u, 2.0 * a + b), 2.0 * advect(u, a) + advect(u, b)) < 1e-12);
    }

    TEST_CASE("pairwise_sum is deterministic and accurate")
    {
        std::vector<double> v(100001);
        for (size_t k = 0; k < v.size(); ++k) v[k] = 1.0 / (1.0 + k);
        const double s = pairwise_sum(v);
        CHECK(s == pairwise_sum(v));
        double kahan = 0.0, c = 0.0;
        for (double x : v) {
            const double y = x - c;
            const double t = kahan + y;
            c = (t - kahan) - y;
            kahan = t;
        }
        CHECK(s == doctest::Approx(kahan).epsilon(1e-15));
    }

    TEST_CASE("norms and seminorms")
    {
        const GridPtr grid = build_grid({64, 16, 5.0});
        const double area = std::numbers::pi * 24.0;
        CHECK(norm_l2(ScalarField::constant(grid, 2.0)) == doctest::Approx(2.0 * std::sqrt(area)));
        CHECK(seminorm_hk(ScalarField::constant(grid, 3.0), 1) < 1e-12);
        CHECK(norm_l2_where(ScalarField::constant(grid, 1.0), [](double) { return false; }) == 0.0);
    }

    TEST_CASE("fields reject non-finite values")
    {
        const GridPtr grid = build_grid({8, 8, 4.0});
        std::vector<double> v(grid->size(), 0.0);
        v[5] = std::nan("");
        CHECK_THROWS_AS(ScalarField(grid, v), NonFiniteError);
    }

    TEST_CASE("boundary tags are checked")
    {
        const GridPtr grid = build_grid({16, 8, 4.0});
        const ScalarField one = ScalarField::constant(grid, 1.0);
        CHECK_THROWS_AS(VectorField(ScalarField::zeros(grid), one, BoundaryTag::no_slip), DomainError);
        CHECK_NOTHROW(VectorField(ScalarField::zeros(grid), one, BoundaryTag::non_penetration));
        CHECK_THROWS_AS(VectorField(one, one, BoundaryTag::non_penetration), DomainError);
    }

    TEST_CASE("mismatched grids are rejected")
    {
        const ScalarField a = ScalarField::zeros(build_grid({8, 8, 4.0}));
        const ScalarField b = ScalarField::zeros(build_grid({16, 8, 4.0}));
        CHECK_THROWS_AS(a + b, MismatchError);
    }
}
