#pragma once

#include <string>
#include <vector>

#include "sgf/boundary_layer.hpp"
#include "sgf/dynamics.hpp"
#include "sgf/energy_audit.hpp"
#include "sgf/initial_data.hpp"
#include "sgf/rate_fit.hpp"

namespace sgf {

// Measurement routines behind the verify-* subcommands. They only measure;
// callers decide pass/fail against their own tolerances.

/// phi_T = (r^-1 - r^-3 - R^-4 (r - r^-1)) cos(theta): the exact solution of
/// Delta phi = -8 r^-5 cos(theta) with phi(1) = 0 and the Robin condition at
/// r = R (it differs from (r^-1 - r^-3) cos(theta) by the truncation term).
double poisson_manufactured(double r, double theta, double r_max);

struct PoissonOrder {
    std::vector<int> n_r;
    std::vector<double> errors;
    std::vector<double> seconds;
    /// L2 error against the radial spacing ds.
    RateFit fit;
};

PoissonOrder measure_poisson_order(const std::vector<int>& n_r, int n_theta, double r_max);

/// Largest ||phi - phi*|| / ||phi*|| over `alphas` when q is built from a
/// compactly supported phi* with the discrete stream operator.
double measure_stream_chain(const GridSpec& grid, const std::vector<double>& alphas);

struct StokesProbe {
    std::vector<double> alphas;
    std::vector<double> d3;
    RateFit fit;
};

/// ||D^3 u|| of the stream solve with q = laplacian(psi) for each alpha.
StokesProbe measure_stokes_probe(const ScalarField& psi, const std::vector<double>& alphas);

/// max_t |E(t) - E(0)| / E(0).
double max_energy_drift(const Trajectory& traj);
/// max_t |E(t) + 2 nu int_0^t ||grad u||^2 - E(0)| / E(0).
double max_energy_balance(const Trajectory& traj);
/// E(t) never increases by more than `slack` * E(0) from one step to the next.
bool energy_nonincreasing(const Trajectory& traj, double slack = 1e-12);

/// Second-grade (or Euler-alpha) run from u0^alpha of `psi0`.
Trajectory run_from_initial_data(const ScalarField& psi0, double alpha, double nu, double t_final,
                                 const RunOptions& options);

/// Runs the model with snapshots every `interval`, builds the Euler reference
/// (frozen for radial data, otherwise an Euler run) and audits the difference.
AuditReport audit_run(const ScalarField& psi0, const InitialCase& initial, double alpha, double nu,
                      double t_final, double interval, double delta, const RunOptions& options);

}  // namespace sgf
