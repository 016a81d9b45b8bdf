#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sgf/dynamics.hpp"
#include "sgf/initial_data.hpp"
#include "sgf/rate_fit.hpp"

namespace sgf {

/// nu = c * alpha^gamma.
struct NuLaw {
    double c = 0.0;
    double gamma = 2.0;

    double operator()(double alpha) const;
};

struct SweepConfig {
    /// Strictly decreasing geometric list in (0, 0.5].
    std::vector<double> alphas{0.4, 0.2, 0.1, 0.05};
    NuLaw nu_law;
    double t_final = 1.0;
    InitialCase initial;
    GridSpec grid{256, 128, 8.0};
    /// Corrector width delta = alpha^delta_exponent.
    double delta_exponent = 4.0 / 3.0;
    /// Errors and a priori norms are sampled at these snapshot times.
    double snapshot_interval = 0.05;
    RunOptions run;
    /// Concurrent runs; 0 picks the hardware concurrency.
    int threads = 0;
};

/// Throws DomainError on an invalid sweep.
void validate(const SweepConfig& cfg);

struct SweepRecord {
    double alpha = 0.0;
    double nu = 0.0;
    double delta = 0.0;
    /// max over snapshot times of ||u(t) - u_euler(t)||
    double sup_err_l2 = 0.0;
    double final_err_l2 = 0.0;
    /// ||u0^alpha - u0||
    double err0 = 0.0;
    /// alpha ||grad u0^alpha||
    double alpha_grad_u0 = 0.0;
    /// max over snapshot times of alpha^k ||D^k u||, k = 1..3
    double apriori_max[3] = {0.0, 0.0, 0.0};
    /// max_t |E(t) + 2 nu int ||grad u||^2 - E(0)| / E(0)
    double energy_drift = 0.0;
    double runtime_s = 0.0;
    /// "ok" or "failed: <reason>".
    std::string status = "ok";

    bool ok() const { return status == "ok"; }
    /// err0 + alpha grad0 + alpha^{1/3} (+ nu^{1/2} alpha^{-2/3} if with_nu).
    double bound_shape(bool with_nu) const;
};

/// Max over the shared snapshot times of ||a(t) - b(t)||. Throws
/// MismatchError unless both trajectories have the same grid and times.
double sup_error(const Trajectory& a, const Trajectory& b);

/// Euler state whose stream function is psi0, so u = perp_grad(psi0).
FlowState euler_state(const ScalarField& psi0);

/// Radial data is a steady Euler solution, so its reference is frozen.
bool has_steady_reference(const InitialCase& c);

/// A trajectory holding `state` unchanged at each of `times`.
Trajectory frozen_trajectory(const FlowState& state, const std::vector<double>& times);

/// Runs every alpha (concurrently, see SweepConfig::threads) and returns the
/// records in input order. A failing run is marked in its record; the sweep
/// goes on.
std::vector<SweepRecord> run_sweep(const SweepConfig& cfg);

struct BoundCheck {
    /// Fitted at the first (coarsest) record.
    double constant = 0.0;
    /// Largest sup_err_l2 / (constant * bound_shape) over the records.
    double worst_ratio = 0.0;
    bool passed = false;
};

/// Fits C = sup_err / bound_shape at the first record, then checks
/// sup_err <= factor * C * bound_shape for every record. `constant` > 0
/// reuses a constant fitted elsewhere instead.
BoundCheck check_bound_shape(const std::vector<SweepRecord>& records, bool with_nu, double factor = 1.0,
                             double constant = 0.0);

bool strictly_decreasing_errors(const std::vector<SweepRecord>& records);

/// alpha,nu,delta,sup_err_l2,final_err_l2,err0,alpha_grad_u0,apriori_max_1,
/// apriori_max_2,apriori_max_3,energy_drift,runtime_s,status
void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records);

/// JSON array of rate fits (sup_err_l2, final_err_l2, err0 against alpha);
/// quantities whose fit is degenerate are skipped.
std::string sweep_rate_json(const std::vector<SweepRecord>& records);

}  // namespace sgf
