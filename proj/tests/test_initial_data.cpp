#include <doctest.h>

#include <cmath>

#include "sgf/boundary_layer.hpp"
#include "sgf/errors.hpp"
#include "sgf/initial_data.hpp"
#include "sgf/operators.hpp"

using namespace sgf;

TEST_SUITE("initial_data")
{
    TEST_CASE("radial profile derivative agrees with central differences")
    {
        for (BoundaryProfile p : {BoundaryProfile::no_slip, BoundaryProfile::slip}) {
            InitialCase c;
            c.profile = p;
            for (double r : {1.0 + 1e-3, 1.4, 2.0, 3.3}) {
                const double h = 1e-5;
                const double fd = (radial_profile(c, r + h) - radial_profile(c, r - h)) / (2 * h);
                CHECK(radial_profile_dr(c, r) == doctest::Approx(fd).epsilon(1e-7));
            }
            CHECK(radial_profile(c, 1.0) == 0.0);
        }
    }

    TEST_CASE("canonical stream functions vanish on the wall")
    {
        const GridPtr g = build_grid({128, 32, 8.0});
        InitialCase c;
        c.name = CaseName::perturbed_vortex;
        const ScalarField psi = canonical_psi(g, c);
        CHECK(psi.max_abs_on_boundary() == 0.0);
        CHECK(psi.max_abs() > 0.1);
        CHECK(std::abs(circulation(c, 8.0)) < 1e-10);
    }

    TEST_CASE("data reaching the truncation radius is refused")
    {
        const GridPtr g = build_grid({64, 16, 4.0});
        InitialCase c;
        c.r0 = 3.8;
        c.sigma = 1.0;
        CHECK_THROWS_AS(canonical_psi(g, c), DomainError);
    }

    TEST_CASE("u0^alpha is no-slip and matches u0 beyond 2 alpha")
    {
        const GridPtr g = build_grid({256, 16, 8.0});
        InitialCase c;
        c.profile = BoundaryProfile::slip;
        c.r0 = 1.3;
        c.sigma = 1.0;
        const ScalarField psi = canonical_psi(g, c);
        const double alpha = 0.1;
        const VectorField ua = make_initial(psi, alpha);
        CHECK(ua.tag() == BoundaryTag::no_slip);
        const VectorField diff = ua - perp_grad(psi);
        CHECK(norm_l2_where(diff, [alpha](double r) { return r - 1.0 > 2.1 * alpha; }) < 1e-12);
        CHECK(norm_l2(diff) > 0.0);
    }

    TEST_CASE("initial_stream preconditions")
    {
        const GridPtr g = build_grid({32, 16, 8.0});
        const ScalarField psi = canonical_psi(g, InitialCase{});
        CHECK_THROWS_AS(initial_stream(psi, 0.6), DomainError);
        CHECK_THROWS_AS(initial_stream(psi, 0.0), DomainError);
        CHECK_THROWS_AS(initial_stream(psi, 0.01), UnresolvedError);
        const ScalarField shifted = psi + ScalarField::constant(g, 1.0);
        CHECK_THROWS_AS(initial_stream(shifted, 0.2), DomainError);
    }

    TEST_CASE("hypothesis report flags and fits")
    {
        const GridPtr g = build_grid({512, 16, 8.0});
        InitialCase c;
        c.profile = BoundaryProfile::slip;
        c.r0 = 1.3;
        c.sigma = 1.0;
        const HypothesisReport r = hypothesis_report(canonical_psi(g, c), {0.2, 0.1, 0.05});
        REQUIRE(r.entries.size() == 3);
        for (const auto& e : r.entries) CHECK(e.resolved);
        CHECK(r.err0_fit.slope == doctest::Approx(0.5).epsilon(0.2));
        CHECK(r.entries[0].err0 > r.entries[2].err0);
    }

    TEST_CASE("names round trip")
    {
        for (CaseName n : {CaseName::radial_vortex, CaseName::perturbed_vortex, CaseName::file})
            CHECK(parse_case_name(to_string(n)) == n);
        for (BoundaryProfile p : {BoundaryProfile::no_slip, BoundaryProfile::slip})
            CHECK(parse_boundary_profile(to_string(p)) == p);
        CHECK_THROWS(parse_case_name("vortex"));
    }
}

TEST_SUITE("boundary_layer")
{
    TEST_CASE("cutoff functions")
    {
        CHECK(eta(0.0) == 1.0);
        CHECK(eta(1.0) == 1.0);
        CHECK(eta(2.0) == 0.0);
        CHECK(eta(1.5) == doctest::Approx(0.5));
        CHECK(rise(0.0) == 0.0);
        CHECK(rise(5.0) == 1.0);
        for (double x = 0.0; x < 1.0; x += 0.05) CHECK(smoothstep(x + 0.05) >= smoothstep(x));
    }

    TEST_CASE("corrector carries the wall trace of perp_grad(psi) and vanishes beyond 2 delta")
    {
        const GridPtr g = build_grid({256, 16, 8.0});
        InitialCase c;
        c.profile = BoundaryProfile::slip;
        c.r0 = 1.3;
        c.sigma = 1.0;
        const ScalarField psi = canonical_psi(g, c);
        const double delta = 0.2;
        const VectorField ub = build_corrector(psi, delta);
        CHECK(ub.tag() == BoundaryTag::non_penetration);
        CHECK(norm_l2_where(ub, [=](double r) { return r - 1.0 > 2.1 * delta; }) < 1e-12);
        CHECK(norm_l2_where(ub - perp_grad(psi), [=](double r) { return r - 1.0 < delta * 0.9; }) < 1e-12);
    }

    TEST_CASE("corrector norms follow the half-power laws")
    {
        const GridPtr g = build_grid({512, 16, 8.0});
        InitialCase c;
        c.profile = BoundaryProfile::slip;
        c.r0 = 1.3;
        c.sigma = 1.0;
        const CorrectorReport r = corrector_scaling_report(canonical_psi(g, c), {0.4, 0.2, 0.1, 0.05});
        CHECK(r.l2_fit.slope == doctest::Approx(0.5).epsilon(0.1));
        CHECK(r.h1_fit.slope == doctest::Approx(-0.5).epsilon(0.1));
    }

    TEST_CASE("geometric sequences")
    {
        CHECK_NOTHROW(require_geometric({0.4, 0.2, 0.1}, "x"));
        CHECK_THROWS_AS(require_geometric({0.4, 0.2, 0.15}, "x"), DomainError);
        CHECK_THROWS_AS(require_geometric({0.4, 0.4, 0.4}, "x"), DomainError);
    }
}
