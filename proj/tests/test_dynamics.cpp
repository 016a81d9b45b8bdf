#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sgf/dynamics.hpp"
#include "sgf/errors.hpp"
#include "sgf/initial_data.hpp"
#include "sgf/operators.hpp"

using namespace sgf;

namespace {

InitialCase perturbed()
{
    InitialCase c;
    c.name = CaseName::perturbed_vortex;
    return c;
}

FlowState start(const FlowSolver& s, const InitialCase& c, double alpha)
{
    return s.from_stream(initial_stream(canonical_psi(s.grid(), c), alpha));
}

// Independent CFL oracle: a direct scan over the nodes.
double cfl_oracle(const FlowState& st, double cfl, double dt_max)
{
    const ExteriorGrid& g = st.u.grid();
    double adv = INFINITY;
    for (int i = 0; i < g.n_r(); ++i) {
        const double r = g.r_nodes()[i];
        const double gap = i == 0 ? g.r_nodes()[1] - r : r - g.r_nodes()[i - 1];
        for (int j = 0; j < g.n_theta(); ++j) {
            const double ur = std::abs(st.u.u_r()[g.index(i, j)]);
            const double ut = std::abs(st.u.u_theta()[g.index(i, j)]);
            if (ur > 0.0) adv = std::min(adv, gap / ur);
            if (ut > 0.0) adv = std::min(adv, r * g.dtheta() / ut);
        }
    }
    double dt = std::min(dt_max, cfl * adv);
    if (st.params.nu > 0.0) {
        const double h = std::min(g.min_radial_gap(), g.dtheta());
        dt = std::min(dt, h * h / (4.0 * st.params.nu));
    }
    return dt;
}

}  // namespace

TEST_SUITE("dynamics")
{
    TEST_CASE("model parameters")
    {
        CHECK(model_for(0.2, 0.01).kind == ModelKind::second_grade);
        CHECK(model_for(0.2, 0.0).kind == ModelKind::euler_alpha);
        CHECK(model_for(0.0, 0.0).kind == ModelKind::euler);
        CHECK_THROWS_AS(validate(ModelParams{ModelKind::euler_alpha, 0.2, 0.1}), DomainError);
        CHECK_THROWS_AS(validate(ModelParams{ModelKind::second_grade, 0.0, 0.1}), DomainError);
        CHECK(parse_model_kind(to_string(ModelKind::second_grade)) == ModelKind::second_grade);
        CHECK_THROWS(parse_model_kind("navier_stokes"));
    }

    TEST_CASE("CFL step matches a brute-force scan")
    {
        const GridPtr g = build_grid({48, 32, 6.0});
        for (double nu : {0.0, 1e-3, 0.5}) {
            const FlowSolver s(g, model_for(0.2, nu));
            const FlowState st = start(s, perturbed(), 0.2);
            CHECK(cfl_dt(st, 0.5, 10.0) == doctest::Approx(cfl_oracle(st, 0.5, 10.0)).epsilon(1e-14));
            CHECK(cfl_dt(st, 0.5, 1e-4) == 1e-4);
        }
    }

    TEST_CASE("the radial vortex is steady for Euler-alpha")
    {
        const GridPtr g = build_grid({64, 32, 8.0});
        const FlowSolver s(g, model_for(0.2, 0.0));
        const FlowState st = start(s, InitialCase{}, 0.2);
        const Trajectory t = run(s, st, 0.5);
        CHECK((t.snapshots.back().q - st.q).max_abs() < 1e-12 * st.q.max_abs());
        CHECK(t.snapshots.back().time == 0.5);
    }

    TEST_CASE("from_stream reproduces its stream function")
    {
        const GridPtr g = build_grid({64, 16, 8.0});
        const FlowSolver s(g, model_for(0.2, 0.0));
        const ScalarField phi0 = initial_stream(canonical_psi(g, perturbed()), 0.2);
        CHECK((s.from_stream(phi0).phi - phi0).max_abs() < 1e-10 * phi0.max_abs());
    }

    TEST_CASE("RK4 is fourth order in time")
    {
        const GridPtr g = build_grid({64, 16, 8.0});
        const FlowSolver s(g, model_for(0.2, 0.0));
        const FlowState st0 = start(s, perturbed(), 0.2);
        auto evolve = [&](int steps) {
            FlowState st = st0;
            for (int k = 0; k < steps; ++k) st = s.step(st, 0.4 / steps);
            return st.q;
        };
        const ScalarField a = evolve(4), b = evolve(8), c = evolve(16);
        const double ratio = norm_l2(a - b) / norm_l2(b - c);
        CHECK(ratio == doctest::Approx(16.0).epsilon(0.15));
    }

    TEST_CASE("Euler-alpha conserves energy and second-grade dissipates it")
    {
        const GridPtr g = build_grid({64, 32, 8.0});
        for (double nu : {0.0, 1e-2}) {
            const FlowSolver s(g, model_for(0.2, nu));
            const Trajectory t = run(s, start(s, perturbed(), 0.2), 0.3);
            const double e0 = t.diagnostics.front().energy;
            const double e1 = t.diagnostics.back().energy;
            if (nu == 0.0) {
                CHECK(std::abs(e1 - e0) / e0 < 1e-4);
            } else {
                CHECK(e1 < e0);
                CHECK(std::abs(e1 + t.diagnostics.back().dissipation - e0) / e0 < 1e-3);
            }
        }
    }

    TEST_CASE("runs are deterministic")
    {
        const GridPtr g = build_grid({64, 16, 8.0});
        const FlowSolver s(g, model_for(0.2, 1e-3));
        const FlowState st = start(s, perturbed(), 0.2);
        const Trajectory a = run(s, st, 0.2);
        const Trajectory b = run(s, st, 0.2);
        CHECK(a.snapshots.back().q.values() == b.snapshots.back().q.values());
    }

    TEST_CASE("snapshots land on their times")
    {
        const GridPtr g = build_grid({64, 16, 8.0});
        const FlowSolver s(g, model_for(0.2, 0.0));
        RunOptions opts;
        opts.snapshot_interval = 0.07;
        const Trajectory t = run(s, start(s, perturbed(), 0.2), 0.2, opts);
        const std::vector<double> want{0.0, 0.07, 0.14, 0.2};
        const std::vector<double> got = t.snapshot_times();
        REQUIRE(got.size() == want.size());
        for (size_t k = 0; k < want.size(); ++k) CHECK(got[k] == doctest::Approx(want[k]).epsilon(1e-14));
    }

    TEST_CASE("a fixed dt beyond the CFL bound is refused")
    {
        const GridPtr g = build_grid({64, 16, 8.0});
        const FlowSolver s(g, model_for(0.2, 0.0));
        RunOptions opts;
        opts.fixed_dt = 1.0;
        CHECK_THROWS_AS(run(s, start(s, perturbed(), 0.2), 2.0, opts), CflViolation);
    }

    TEST_CASE("the tail-mass guard trips")
    {
        const GridPtr g = build_grid({64, 16, 8.0});
        const FlowSolver s(g, model_for(0.2, 0.0));
        RunOptions opts;
        opts.tail_tol = 1e-3;
        const ScalarField q = ScalarField::from_radial(g, [](double r) { return std::exp(-(r - 7.5) * (r - 7.5)); });
        CHECK_THROWS_AS(run(s, s.from_q(q), 0.1, opts), TailMassBreach);
    }

    TEST_CASE("diagnostics CSV")
    {
        std::ostringstream out;
        write_diagnostics_header(out);
        CHECK(out.str() == "t,dt,energy,enstrophy,tail_mass\n");
    }
}
