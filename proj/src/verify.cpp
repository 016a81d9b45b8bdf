#include "sgf/verify.hpp"

#include <chrono>
#include <cmath>

#include "sgf/elliptic.hpp"
#include "sgf/errors.hpp"
#include "sgf/harness.hpp"
#include "sgf/operators.hpp"

namespace sgf {

double poisson_manufactured(double r, double theta, double r_max)
{
    const double tail = std::pow(r_max, -4.0) * (r - 1.0 / r);
    return (1.0 / r - std::pow(r, -3.0) - tail) * std::cos(theta);
}

PoissonOrder measure_poisson_order(const std::vector<int>& n_r, int n_theta, double r_max)
{
    PoissonOrder out;
    std::vector<std::pair<double, double>> pts;
    for (int n : n_r) {
        const auto start = std::chrono::steady_clock::now();
        const GridPtr g = build_grid({n, n_theta, r_max});
        const ScalarField w =
            ScalarField::from_function(g, [](double r, double t) { return -8.0 * std::pow(r, -5.0) * std::cos(t); });
        const ScalarField phi = solve_poisson(w);
        const ScalarField exact =
            ScalarField::from_function(g, [r_max](double r, double t) { return poisson_manufactured(r, t, r_max); });
        const double err = norm_l2(phi - exact);
        out.seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        out.n_r.push_back(n);
        out.errors.push_back(err);
        pts.emplace_back(g->ds(), err);
    }
    out.fit = fit_rate(pts);
    return out;
}

double measure_stream_chain(const GridSpec& spec, const std::vector<double>& alphas)
{
    const GridPtr g = build_grid(spec);
    const double r_max = spec.r_max;
    // Smooth bump supported in (1 + w, r_max - w), with angular structure.
    const double center = 0.5 * (1.0 + r_max);
    const double half = 0.35 * (r_max - 1.0);
    const ScalarField target = ScalarField::from_function(g, [center, half](double r, double t) {
        const double z = (r - center) / half;
        if (std::abs(z) >= 1.0) return 0.0;
        return std::exp(1.0 - 1.0 / (1.0 - z * z)) * (1.0 + 0.3 * std::cos(2.0 * t) + 0.2 * std::sin(5.0 * t));
    });
    double worst = 0.0;
    for (double a : alphas) {
        const ScalarField phi = solve_stream_helmholtz(stream_operator(target, a), a).phi;
        worst = std::max(worst, norm_l2(phi - target) / norm_l2(target));
    }
    return worst;
}

StokesProbe measure_stokes_probe(const ScalarField& psi, const std::vector<double>& alphas)
{
    StokesProbe out;
    const ScalarField q = laplacian(psi);
    std::vector<std::pair<double, double>> pts;
    for (double a : alphas) {
        const StreamSolution sol = StreamHelmholtzSolver(psi.grid_ptr(), a).solve(q);
        const double d3 = seminorm_hk(sol.u, 3);
        out.alphas.push_back(a);
        out.d3.push_back(d3);
        pts.emplace_back(a, d3);
    }
    out.fit = fit_rate(pts);
    return out;
}

double max_energy_drift(const Trajectory& traj)
{
    const double e0 = traj.diagnostics.front().energy;
    double worst = 0.0;
    for (const auto& d : traj.diagnostics) worst = std::max(worst, std::abs(d.energy - e0) / e0);
    return worst;
}

double max_energy_balance(const Trajectory& traj)
{
    const double e0 = traj.diagnostics.front().energy;
    double worst = 0.0;
    for (const auto& d : traj.diagnostics) worst = std::max(worst, std::abs(d.energy + d.dissipation - e0) / e0);
    return worst;
}

bool energy_nonincreasing(const Trajectory& traj, double slack)
{
    const double e0 = traj.diagnostics.front().energy;
    for (size_t k = 1; k < traj.diagnostics.size(); ++k) {
        if (traj.diagnostics[k].energy > traj.diagnostics[k - 1].energy + slack * e0) return false;
    }
    return true;
}

Trajectory run_from_initial_data(const ScalarField& psi0, double alpha, double nu, double t_final,
                                 const RunOptions& options)
{
    const FlowSolver solver(psi0.grid_ptr(), model_for(alpha, nu), options.step);
    return run(solver, solver.from_stream(initial_stream(psi0, alpha)), t_final, options);
}

AuditReport audit_run(const ScalarField& psi0, const InitialCase& initial, double alpha, double nu,
                      double t_final, double interval, double delta, const RunOptions& options)
{
    RunOptions opts = options;
    opts.snapshot_interval = interval;
    const Trajectory sg = run_from_initial_data(psi0, alpha, nu, t_final, opts);

    const FlowState ref0 = euler_state(psi0);
    if (has_steady_reference(initial)) return energy_audit(sg, frozen_trajectory(ref0, sg.snapshot_times()), delta);

    StepOptions step = options.step;
    step.poisson.check_circulation = initial.profile == BoundaryProfile::no_slip;
    const FlowSolver euler(psi0.grid_ptr(), ref0.params, step);
    const Trajectory eu = run(euler, euler.from_stream(psi0), t_final, opts);
    return energy_audit(sg, eu, delta);
}

}  // namespace sgf
