#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sgf/errors.hpp"
#include "sgf/harness.hpp"
#include "sgf/rate_fit.hpp"

using namespace sgf;

namespace {

SweepRecord record(double alpha, double err, double err0, double grad0)
{
    SweepRecord r;
    r.alpha = alpha;
    r.sup_err_l2 = err;
    r.err0 = err0;
    r.alpha_grad_u0 = grad0;
    return r;
}

}  // namespace

TEST_SUITE("rate_fit")
{
    TEST_CASE("exact power laws are recovered")
    {
        std::vector<std::pair<double, double>> pts;
        for (double x : {0.4, 0.2, 0.1, 0.05}) pts.emplace_back(x, 3.0 * std::pow(x, 1.5));
        const RateFit f = fit_rate(pts);
        CHECK(f.slope == doctest::Approx(1.5).epsilon(1e-12));
        CHECK(f.constant == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(f.residual < 1e-12);
    }

    TEST_CASE("degenerate inputs")
    {
        CHECK_THROWS_AS(fit_rate({{1.0, 1.0}, {2.0, 2.0}}), DegenerateFit);
        CHECK_THROWS_AS(fit_rate({{1.0, 1.0}, {1.0, 2.0}, {1.0, 3.0}}), DegenerateFit);
        CHECK_THROWS_AS(fit_rate({{1.0, 1.0}, {2.0, 0.0}, {3.0, 3.0}}), DegenerateFit);
    }

    TEST_CASE("json form")
    {
        const std::string j = rate_fit_json("err", fit_rate({{1.0, 1.0}, {2.0, 4.0}, {4.0, 16.0}}));
        CHECK(j.find("\"quantity\"") != std::string::npos);
        CHECK(j.find("\"slope\"") != std::string::npos);
    }
}

TEST_SUITE("harness")
{
    TEST_CASE("nu law")
    {
        CHECK(NuLaw{0.0, 2.0}(0.3) == 0.0);
        CHECK(NuLaw{2.0, 2.0}(0.3) == doctest::Approx(0.18));
    }

    TEST_CASE("bound shape check")
    {
        std::vector<SweepRecord> rs{record(0.4, 1.0, 0.5, 0.5), record(0.2, 0.5, 0.2, 0.2),
                                    record(0.1, 0.2, 0.05, 0.05)};
        const BoundCheck c = check_bound_shape(rs, false);
        CHECK(c.constant == doctest::Approx(1.0 / (1.0 + std::cbrt(0.4))));
        CHECK(c.passed);
        CHECK(c.worst_ratio == doctest::Approx(1.0));
        rs[2].sup_err_l2 = 5.0;
        CHECK_FALSE(check_bound_shape(rs, false).passed);
        CHECK(check_bound_shape(rs, false, 100.0).passed);
        rs[1].status = "failed: x";
        CHECK_FALSE(check_bound_shape(rs, false, 100.0).passed);
    }

    TEST_CASE("with_nu adds the viscous term")
    {
        SweepRecord r = record(0.125, 0.0, 0.0, 0.0);
        r.nu = 0.04;
        CHECK(r.bound_shape(true) - r.bound_shape(false) == doctest::Approx(0.2 * 4.0));
    }

    TEST_CASE("strict decrease")
    {
        CHECK(strictly_decreasing_errors({record(0.4, 3, 0, 0), record(0.2, 2, 0, 0), record(0.1, 1, 0, 0)}));
        CHECK_FALSE(strictly_decreasing_errors({record(0.4, 3, 0, 0), record(0.2, 3, 0, 0)}));
    }

    TEST_CASE("sweep CSV columns")
    {
        std::ostringstream out;
        write_sweep_csv(out, {record(0.4, 1, 1, 1)});
        const std::string header = out.str().substr(0, out.str().find('\n'));
        CHECK(header ==
              "alpha,nu,delta,sup_err_l2,final_err_l2,err0,alpha_grad_u0,apriori_max_1,apriori_max_2,"
              "apriori_max_3,energy_drift,runtime_s,status");
    }

    TEST_CASE("invalid sweeps")
    {
        SweepConfig cfg;
        cfg.alphas = {0.4, 0.2, 0.15};
        CHECK_THROWS_AS(validate(cfg), DomainError);
        cfg.alphas = {0.2, 0.4, 0.8};
        CHECK_THROWS_AS(validate(cfg), DomainError);
        cfg.alphas = {0.4, 0.2, 0.1};
        cfg.nu_law.c = -1.0;
        CHECK_THROWS_AS(validate(cfg), DomainError);
    }

    TEST_CASE("sup_error needs matching snapshots")
    {
        const GridPtr g = build_grid({32, 16, 8.0});
        const FlowState s = euler_state(canonical_psi(g, InitialCase{}));
        const Trajectory a = frozen_trajectory(s, {0.0, 0.5, 1.0});
        CHECK(sup_error(a, a) == 0.0);
        CHECK_THROWS_AS(sup_error(a, frozen_trajectory(s, {0.0, 1.0})), MismatchError);
        CHECK_THROWS_AS(sup_error(a, frozen_trajectory(s, {0.0, 0.4, 1.0})), MismatchError);
    }

    TEST_CASE("threaded sweeps equal serial sweeps and keep input order")
    {
        SweepConfig cfg;
        cfg.alphas = {0.4, 0.2, 0.1};
        cfg.grid = {128, 16, 8.0};
        cfg.t_final = 0.1;
        cfg.initial.name = CaseName::perturbed_vortex;
        cfg.threads = 1;
        const auto serial = run_sweep(cfg);
        cfg.threads = 3;
        const auto threaded = run_sweep(cfg);
        REQUIRE(serial.size() == 3);
        for (size_t k = 0; k < 3; ++k) {
            CHECK(serial[k].ok());
            CHECK(threaded[k].alpha == cfg.alphas[k]);
            CHECK(threaded[k].sup_err_l2 == serial[k].sup_err_l2);
        }
    }

    TEST_CASE("an unresolved alpha fails its record only")
    {
        SweepConfig cfg;
        cfg.alphas = {0.4, 0.2, 0.1, 0.05, 0.025, 0.0125};
        cfg.grid = {32, 16, 8.0};
        cfg.t_final = 0.05;
        cfg.threads = 2;
        const auto rs = run_sweep(cfg);
        CHECK(rs.front().ok());
        CHECK_FALSE(rs.back().ok());
        CHECK(rs.back().status.rfind("failed:", 0) == 0);
    }
}
