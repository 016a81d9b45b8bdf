#include "sgf/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "sgf/errors.hpp"
#include "sgf/operators.hpp"

namespace sgf {

void validate(const ModelParams& p)
{
    if (!std::isfinite(p.alpha) || !std::isfinite(p.nu)) throw DomainError("model parameters must be finite");
    switch (p.kind) {
    case ModelKind::second_grade:
        if (!(p.alpha > 0.0 && p.nu > 0.0)) throw DomainError("second_grade requires alpha > 0 and nu > 0");
        break;
    case ModelKind::euler_alpha:
        if (!(p.alpha > 0.0) || p.nu != 0.0) throw DomainError("euler_alpha requires alpha > 0 and nu = 0");
        break;
    case ModelKind::euler:
        if (p.alpha != 0.0 || p.nu != 0.0) throw DomainError("euler requires alpha = nu = 0");
        break;
    }
}

ModelParams model_for(double alpha, double nu)
{
    ModelParams p{ModelKind::euler, alpha, nu};
    if (nu > 0.0) p.kind = ModelKind::second_grade;
    else if (alpha > 0.0) p.kind = ModelKind::euler_alpha;
    validate(p);
    return p;
}

ModelKind parse_model_kind(const std::string& s)
{
    if (s == "second_grade") return ModelKind::second_grade;
    if (s == "euler_alpha") return ModelKind::euler_alpha;
    if (s == "euler") return ModelKind::euler;
    throw DomainError("unknown model '" + s + "'");
}

const char* to_string(ModelKind kind)
{
    switch (kind) {
    case ModelKind::second_grade: return "second_grade";
    case ModelKind::euler_alpha: return "euler_alpha";
    case ModelKind::euler: return "euler";
    }
    return "?";
}

double energy(const FlowState& s)
{
    const double u = norm_l2(s.u);
    const double a = s.params.alpha;
    if (a == 0.0) return u * u;
    const double g = seminorm_hk(s.u, 1);
    return u * u + a * a * g * g;
}

double enstrophy(const FlowState& s)
{
    const double w = norm_l2(s.w);
    return w * w;
}

double tail_mass(const FlowState& s)
{
    const double r_tail = 0.9 * s.q.grid().spec().r_max;
    return norm_l2_where(s.q, [r_tail](double r) { return r > r_tail; });
}

FlowSolver::FlowSolver(GridPtr grid, ModelParams params, StepOptions options)
    : grid_(std::move(grid)), params_(params), options_(options)
{
    validate(params_);
    if (params_.kind == ModelKind::euler) poisson_.emplace(grid_);
    else stream_.emplace(grid_, params_.alpha);
}

FlowState FlowSolver::from_q(ScalarField q, double time) const
{
    if (poisson_) {
        ScalarField phi = poisson_->solve(q, options_.poisson);
        VectorField u = perp_grad(phi, BoundaryTag::non_penetration);
        ScalarField w = q;
        return FlowState{time, std::move(q), std::move(w), std::move(phi), std::move(u), params_};
    }
    StreamSolution sol = stream_->solve(q);
    return FlowState{time, std::move(q), std::move(sol.w), std::move(sol.phi), std::move(sol.u), params_};
}

FlowState FlowSolver::from_stream(const ScalarField& phi0, double time) const
{
    require_same_grid(*grid_, phi0.grid());
    if (poisson_) return from_q(laplacian(phi0), time);
    return from_q(stream_operator(phi0, params_.alpha), time);
}

FlowState FlowSolver::from_velocity(const VectorField& u0, double time) const
{
    require_same_grid(*grid_, u0.grid());
    if (poisson_) {
        const VectorField checked = u0.with_tag(BoundaryTag::non_penetration);
        return from_q(curl_perp(checked), time);
    }
    const VectorField checked = u0.with_tag(BoundaryTag::no_slip);
    return from_q(recover_q(checked, params_.alpha), time);
}

ScalarField FlowSolver::rhs(const FlowState& s) const
{
    if (params_.kind == ModelKind::euler) return -advect(s.u, s.w, options_.dealias);
    ScalarField out = -advect(s.u, s.q, options_.dealias);
    if (params_.nu > 0.0) out += params_.nu * laplacian(s.w);
    return out;
}

FlowState FlowSolver::step(const FlowState& s, double dt, StepTrace* trace) const
{
    const double nu = params_.nu;
    auto grad_sq = [](const FlowState& st) {
        const double g = seminorm_hk(st.u, 1);
        return g * g;
    };
    int stage = 1;
    try {
        const ScalarField k1 = rhs(s);
        stage = 2;
        const FlowState s2 = from_q(s.q + (0.5 * dt) * k1, s.time + 0.5 * dt);
        const ScalarField k2 = rhs(s2);
        stage = 3;
        const FlowState s3 = from_q(s.q + (0.5 * dt) * k2, s.time + 0.5 * dt);
        const ScalarField k3 = rhs(s3);
        stage = 4;
        const FlowState s4 = from_q(s.q + dt * k3, s.time + dt);
        const ScalarField k4 = rhs(s4);
        if (trace) {
            trace->dissipation = 0.0;
            if (nu > 0.0) {
                trace->dissipation = 2.0 * nu * dt / 6.0 *
                                     (grad_sq(s) + 2.0 * grad_sq(s2) + 2.0 * grad_sq(s3) + grad_sq(s4));
            }
        }
        stage = 5;
        ScalarField q = s.q;
        q += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        return from_q(std::move(q), s.time + dt);
    } catch (const NonFiniteError& e) {
        throw StepFailure(s.time, stage, e.what());
    }
}

double cfl_dt(const FlowState& state, double cfl, double dt_max)
{
    if (!(cfl > 0.0 && cfl <= 1.0)) throw DomainError("cfl must lie in (0, 1]");
    if (!(dt_max > 0.0)) throw DomainError("dt_max must be > 0");
    const ExteriorGrid& g = state.u.grid();
    const auto& r = g.r_nodes();
    const auto& ur = state.u.u_r();
    const auto& ut = state.u.u_theta();
    const double inf = std::numeric_limits<double>::infinity();
    double adv = inf;
    for (int i = 0; i < g.n_r(); ++i) {
        const double gap = i == 0 ? r[1] - r[0] : r[i] - r[i - 1];
        const double arc = r[i] * g.dtheta();
        for (int j = 0; j < g.n_theta(); ++j) {
            const int k = g.index(i, j);
            if (ur[k] != 0.0) adv = std::min(adv, gap / std::abs(ur[k]));
            if (ut[k] != 0.0) adv = std::min(adv, arc / std::abs(ut[k]));
        }
    }
    double dt = std::min(dt_max, cfl * adv);
    if (state.params.nu > 0.0) {
        const double h = std::min(g.min_radial_gap(), g.dtheta());
        dt = std::min(dt, h * h / (4.0 * state.params.nu));
    }
    return dt;
}

std::vector<double> Trajectory::snapshot_times() const
{
    std::vector<double> t;
    t.reserve(snapshots.size());
    for (const auto& s : snapshots) t.push_back(s.time);
    return t;
}

namespace {

StepDiagnostics diagnose(const FlowState& s, double dt, double dissipation)
{
    return StepDiagnostics{s.time, dt, energy(s), enstrophy(s), tail_mass(s), dissipation, s.q.max_abs()};
}

}  // namespace

Trajectory run(const FlowSolver& solver, const FlowState& initial, double t_final, const RunOptions& options,
               const Observer& observer)
{
    if (!(t_final >= initial.time)) throw DomainError("t_final must not precede the initial time");
    if (options.snapshot_interval < 0.0) throw DomainError("snapshot_interval must be >= 0");
    if (!(options.tail_tol > 0.0)) throw DomainError("tail_tol must be > 0");
    if (options.fixed_dt < 0.0) throw DomainError("fixed_dt must be >= 0");
    if (!(initial.params == solver.params())) throw DomainError("initial state and solver disagree on the model");

    Trajectory traj;
    traj.params = solver.params();
    const double threshold = options.tail_tol * norm_l2(initial.q);
    const double t0 = initial.time;
    const double span = t_final - t0;
    const double eps = 1e-12 * std::max(1.0, std::abs(t_final));

    FlowState state = initial;
    double dissipation = 0.0;
    StepDiagnostics d = diagnose(state, 0.0, dissipation);
    traj.diagnostics.push_back(d);
    traj.snapshots.push_back(state);
    if (observer) observer(state, d);

    long n_snap = 1;
    auto next_snapshot = [&]() {
        if (options.snapshot_interval <= 0.0) return t_final;
        return std::min(t_final, t0 + n_snap * options.snapshot_interval);
    };

    long steps = 0;
    while (state.time < t_final - eps) {
        if (++steps > options.max_steps) throw CflViolation("step budget exhausted before t_final");
        const double bound = cfl_dt(state, options.cfl, options.dt_max);
        double dt = bound;
        if (options.fixed_dt > 0.0) {
            if (options.fixed_dt > bound * (1.0 + 1e-12)) {
                throw CflViolation("fixed dt " + std::to_string(options.fixed_dt) + " exceeds the CFL bound " +
                                   std::to_string(bound) + " at t=" + std::to_string(state.time));
            }
            dt = options.fixed_dt;
        }
        if (!(dt > 1e-14 * std::max(1.0, span))) {
            throw CflViolation("time step collapsed to " + std::to_string(dt) + " at t=" + std::to_string(state.time));
        }
        const double target = next_snapshot();
        bool lands = false;
        if (state.time + dt >= target - eps) {
            dt = target - state.time;
            lands = true;
        }
        StepTrace trace;
        FlowState next = solver.step(state, dt, &trace);
        if (lands) next.time = target;
        dissipation += trace.dissipation;
        d = diagnose(next, dt, dissipation);
        if (d.tail_mass > threshold) throw TailMassBreach(next.time, d.tail_mass, threshold);
        state = std::move(next);
        traj.diagnostics.push_back(d);
        if (lands) {
            traj.snapshots.push_back(state);
            ++n_snap;
        }
        if (observer) observer(state, d);
    }
    if (traj.snapshots.back().time != state.time) traj.snapshots.push_back(state);
    return traj;
}

Trajectory run(const ModelParams& params, const VectorField& u0, double t_final, const RunOptions& options,
               const Observer& observer)
{
    const ExteriorGrid& g = u0.grid();
    const int last = g.n_r() - 1;
    const auto& ut = u0.u_theta();
    double mean = 0.0;
    for (int j = 0; j < g.n_theta(); ++j) mean += ut[g.index(last, j)];
    mean /= g.n_theta();
    const double r_max = g.spec().r_max;
    const double circ = 2.0 * std::numbers::pi * r_max * mean;
    if (std::abs(circ) > 1e-8 * std::max(1.0, 2.0 * std::numbers::pi * r_max * u0.max_abs())) {
        throw DomainError("initial velocity carries far-field circulation " + std::to_string(circ));
    }
    const FlowSolver solver(u0.grid_ptr(), params, options.step);
    return run(solver, solver.from_velocity(u0), t_final, options, observer);
}

void write_diagnostics_header(std::ostream& out) { out << "t,dt,energy,enstrophy,tail_mass\n"; }

void write_diagnostics_row(std::ostream& out, const StepDiagnostics& d)
{
    const auto old = out.precision(17);
    out << d.t << ',' << d.dt << ',' << d.energy << ',' << d.enstrophy << ',' << d.tail_mass << '\n';
    out.precision(old);
}

}  // namespace sgf
