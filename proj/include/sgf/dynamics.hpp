#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "sgf/elliptic.hpp"
#include "sgf/field.hpp"

namespace sgf {

enum class ModelKind { second_grade, euler_alpha, euler };

struct ModelParams {
    ModelKind kind = ModelKind::euler_alpha;
    double alpha = 0.0;
    double nu = 0.0;

    bool operator==(const ModelParams&) const = default;
};

/// second_grade: alpha > 0, nu > 0; euler_alpha: alpha > 0, nu = 0;
/// euler: alpha = nu = 0. Throws DomainError otherwise.
void validate(const ModelParams& params);

/// second_grade when nu > 0, euler_alpha when nu = 0 and alpha > 0, else euler.
ModelParams model_for(double alpha, double nu);

ModelKind parse_model_kind(const std::string& s);
const char* to_string(ModelKind kind);

/// One time slice. For euler, q and w coincide.
struct FlowState {
    double time = 0.0;
    ScalarField q;
    ScalarField w;
    ScalarField phi;
    VectorField u;
    ModelParams params;
};

/// E_alpha = ||u||^2 + alpha^2 ||grad u||^2.
double energy(const FlowState& state);
double enstrophy(const FlowState& state);
/// ||q|| over the rings with r > 0.9 r_max.
double tail_mass(const FlowState& state);

struct StepOptions {
    /// 2/3-rule truncation of the advective product.
    bool dealias = false;
    /// Used by the euler kind only.
    PoissonOptions poisson;
};

/// What a step integrated besides q.
struct StepTrace {
    /// 2 nu * integral over the step of ||grad u||^2, with the RK4 stage weights.
    double dissipation = 0.0;
};

/// Time stepper for one (grid, model). The elliptic factorizations are built
/// once here and reused by every stage.
class FlowSolver {
public:
    FlowSolver(GridPtr grid, ModelParams params, StepOptions options = {});

    const GridPtr& grid() const noexcept { return grid_; }
    const ModelParams& params() const noexcept { return params_; }

    /// Completes (w, phi, u) from q.
    FlowState from_q(ScalarField q, double time = 0.0) const;
    /// q from a stream function; the returned phi equals `phi0` to solver
    /// round-off when phi0 meets the boundary conditions.
    FlowState from_stream(const ScalarField& phi0, double time = 0.0) const;
    /// q = recover_q(u0) (or curl for euler); u0 must satisfy the model's tag.
    FlowState from_velocity(const VectorField& u0, double time = 0.0) const;

    /// -advect(u, q) + nu laplacian(w); -advect(u, w) for euler.
    ScalarField rhs(const FlowState& state) const;

    /// One classical RK4 step. A NaN/Inf anywhere raises StepFailure with
    /// the time and stage (1..4, 5 for the final solve).
    FlowState step(const FlowState& state, double dt, StepTrace* trace = nullptr) const;

private:
    GridPtr grid_;
    ModelParams params_;
    StepOptions options_;
    std::optional<StreamHelmholtzSolver> stream_;
    std::optional<PoissonSolver> poisson_;
};

/// cfl * min over nodes of (radial gap / |u_r|, r dtheta / |u_theta|),
/// capped by h_min^2 / (4 nu) and by dt_max. Requires cfl in (0, 1].
double cfl_dt(const FlowState& state, double cfl, double dt_max);

struct RunOptions {
    double cfl = 0.5;
    double dt_max = 0.05;
    /// Nonzero: use this dt, failing with CflViolation if it exceeds the CFL bound.
    double fixed_dt = 0.0;
    /// Keep a snapshot every this much time (0: only the first and last
    /// states). Steps are shortened to land on snapshot times exactly.
    double snapshot_interval = 0.0;
    /// Abort once tail_mass > tail_tol * ||q(0)||.
    double tail_tol = 1e-8;
    long max_steps = 50'000'000;
    StepOptions step;
};

struct StepDiagnostics {
    double t = 0.0;
    double dt = 0.0;
    double energy = 0.0;
    double enstrophy = 0.0;
    double tail_mass = 0.0;
    /// Cumulative 2 nu * integral_0^t ||grad u||^2.
    double dissipation = 0.0;
    double max_abs_q = 0.0;
};

struct Trajectory {
    ModelParams params;
    std::vector<FlowState> snapshots;
    /// One entry per step, starting with t = 0 (dt = 0).
    std::vector<StepDiagnostics> diagnostics;

    std::vector<double> snapshot_times() const;
};

/// Called after every accepted step (and once for the initial state).
using Observer = std::function<void(const FlowState&, const StepDiagnostics&)>;

/// Integrates from `initial` to t_final. Throws StepFailure, CflViolation
/// or TailMassBreach.
Trajectory run(const FlowSolver& solver, const FlowState& initial, double t_final,
               const RunOptions& options = {}, const Observer& observer = {});

/// Convenience: builds the solver and the initial state from u0. Rejects u0
/// with nonzero far-field circulation.
Trajectory run(const ModelParams& params, const VectorField& u0, double t_final,
               const RunOptions& options = {}, const Observer& observer = {});

/// t,dt,energy,enstrophy,tail_mass
void write_diagnostics_header(std::ostream& out);
void write_diagnostics_row(std::ostream& out, const StepDiagnostics& d);

}  // namespace sgf
