#include "sgf/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ostream>
#include <thread>

#include "sgf/boundary_layer.hpp"
#include "sgf/errors.hpp"
#include "sgf/operators.hpp"

namespace sgf {

double NuLaw::operator()(double alpha) const { return c == 0.0 ? 0.0 : c * std::pow(alpha, gamma); }

void validate(const SweepConfig& cfg)
{
    if (cfg.alphas.empty()) throw DomainError("sweep.alphas must not be empty");
    for (size_t k = 0; k < cfg.alphas.size(); ++k) {
        const double a = cfg.alphas[k];
        if (!(a > 0.0 && a <= 0.5)) throw DomainError("sweep.alphas must lie in (0, 0.5]");
        if (k > 0 && !(a < cfg.alphas[k - 1])) throw DomainError("sweep.alphas must be strictly decreasing");
    }
    require_geometric(cfg.alphas, "sweep.alphas");
    if (!(cfg.nu_law.c >= 0.0)) throw DomainError("sweep.nu_c must be >= 0");
    if (!std::isfinite(cfg.nu_law.gamma)) throw DomainError("sweep.nu_gamma must be finite");
    if (!(cfg.t_final > 0.0)) throw DomainError("t_final must be > 0");
    if (!(cfg.delta_exponent > 0.0)) throw DomainError("sweep.delta_exponent must be > 0");
    if (!(cfg.snapshot_interval > 0.0)) throw DomainError("snapshot_interval must be > 0");
    if (cfg.threads < 0) throw DomainError("threads must be >= 0");
    validate(cfg.grid);
}

double SweepRecord::bound_shape(bool with_nu) const
{
    double b = err0 + alpha_grad_u0 + std::cbrt(alpha);
    if (with_nu) b += std::sqrt(nu) * std::pow(alpha, -2.0 / 3.0);
    return b;
}

double sup_error(const Trajectory& a, const Trajectory& b)
{
    if (a.snapshots.size() != b.snapshots.size()) {
        throw MismatchError("trajectories hold " + std::to_string(a.snapshots.size()) + " and " +
                            std::to_string(b.snapshots.size()) + " snapshots");
    }
    double worst = 0.0;
    for (size_t k = 0; k < a.snapshots.size(); ++k) {
        const FlowState& sa = a.snapshots[k];
        const FlowState& sb = b.snapshots[k];
        if (std::abs(sa.time - sb.time) > 1e-12 * std::max(1.0, std::abs(sa.time))) {
            throw MismatchError("snapshot times differ: " + std::to_string(sa.time) + " vs " +
                                std::to_string(sb.time));
        }
        require_same_grid(sa.u.grid(), sb.u.grid());
        worst = std::max(worst, norm_l2(sa.u - sb.u));
    }
    return worst;
}

Trajectory frozen_trajectory(const FlowState& state, const std::vector<double>& times)
{
    Trajectory t;
    t.params = state.params;
    for (double time : times) {
        FlowState s = state;
        s.time = time;
        t.snapshots.push_back(std::move(s));
    }
    return t;
}

bool has_steady_reference(const InitialCase& c)
{
    return c.name == CaseName::radial_vortex || (c.name == CaseName::perturbed_vortex && c.epsilon == 0.0);
}

FlowState euler_state(const ScalarField& psi0)
{
    ScalarField w = laplacian(psi0);
    VectorField u = perp_grad(psi0, BoundaryTag::non_penetration);
    return FlowState{0.0, w, w, psi0, std::move(u), ModelParams{ModelKind::euler, 0.0, 0.0}};
}

namespace {

SweepRecord run_one(const SweepConfig& cfg, const ScalarField& psi0, const Trajectory& reference, double alpha)
{
    SweepRecord rec;
    rec.alpha = alpha;
    rec.nu = cfg.nu_law(alpha);
    rec.delta = std::pow(alpha, cfg.delta_exponent);
    const auto start = std::chrono::steady_clock::now();
    try {
        const ScalarField stream0 = initial_stream(psi0, alpha);
        const VectorField u0a = perp_grad(stream0, BoundaryTag::no_slip);
        const VectorField u0 = perp_grad(psi0);
        rec.err0 = norm_l2(u0a - u0);
        rec.alpha_grad_u0 = alpha * seminorm_hk(u0a, 1);

        const ModelParams params = model_for(alpha, rec.nu);
        const FlowSolver solver(psi0.grid_ptr(), params, cfg.run.step);
        RunOptions opts = cfg.run;
        opts.snapshot_interval = cfg.snapshot_interval;
        const Trajectory traj = run(solver, solver.from_stream(stream0), cfg.t_final, opts);

        rec.sup_err_l2 = sup_error(traj, reference);
        rec.final_err_l2 = norm_l2(traj.snapshots.back().u - reference.snapshots.back().u);
        for (const FlowState& s : traj.snapshots) {
            for (int k = 1; k <= 3; ++k) {
                rec.apriori_max[k - 1] =
                    std::max(rec.apriori_max[k - 1], std::pow(alpha, k) * seminorm_hk(s.u, k));
            }
        }
        const double e0 = traj.diagnostics.front().energy;
        for (const auto& d : traj.diagnostics) {
            rec.energy_drift = std::max(rec.energy_drift, std::abs(d.energy + d.dissipation - e0) / e0);
        }
    } catch (const std::exception& e) {
        rec.status = std::string("failed: ") + e.what();
    }
    rec.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

}  // namespace

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg)
{
    validate(cfg);
    const GridPtr grid = build_grid(cfg.grid);
    const ScalarField psi0 = canonical_psi(grid, cfg.initial);
    const FlowState ref0 = euler_state(psi0);

    std::vector<double> times;
    for (long k = 0;; ++k) {
        const double t = std::min(cfg.t_final, k * cfg.snapshot_interval);
        times.push_back(t);
        if (t >= cfg.t_final - 1e-12 * std::max(1.0, cfg.t_final)) break;
    }
    times.back() = cfg.t_final;

    std::vector<SweepRecord> records(cfg.alphas.size());
    Trajectory reference;
    if (has_steady_reference(cfg.initial)) {
        reference = frozen_trajectory(ref0, times);
    } else {
        try {
            StepOptions step = cfg.run.step;
            step.poisson.check_circulation = cfg.initial.profile == BoundaryProfile::no_slip;
            const FlowSolver euler(grid, ref0.params, step);
            RunOptions opts = cfg.run;
            opts.snapshot_interval = cfg.snapshot_interval;
            reference = run(euler, euler.from_stream(psi0), cfg.t_final, opts);
        } catch (const std::exception& e) {
            for (size_t k = 0; k < records.size(); ++k) {
                records[k].alpha = cfg.alphas[k];
                records[k].nu = cfg.nu_law(cfg.alphas[k]);
                records[k].delta = std::pow(cfg.alphas[k], cfg.delta_exponent);
                records[k].status = std::string("failed: euler reference: ") + e.what();
            }
            return records;
        }
    }

    int threads = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, static_cast<int>(cfg.alphas.size()));
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t k = next++; k < cfg.alphas.size(); k = next++) {
            records[k] = run_one(cfg, psi0, reference, cfg.alphas[k]);
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    return records;
}

BoundCheck check_bound_shape(const std::vector<SweepRecord>& records, bool with_nu, double factor, double constant)
{
    BoundCheck check;
    if (records.empty() || !records.front().ok()) return check;
    check.constant = constant > 0.0 ? constant : records.front().sup_err_l2 / records.front().bound_shape(with_nu);
    check.passed = true;
    for (const auto& r : records) {
        if (!r.ok()) {
            check.passed = false;
            continue;
        }
        const double ratio = r.sup_err_l2 / (check.constant * r.bound_shape(with_nu));
        check.worst_ratio = std::max(check.worst_ratio, ratio);
        if (ratio > factor * (1.0 + 1e-12)) check.passed = false;
    }
    return check;
}

bool strictly_decreasing_errors(const std::vector<SweepRecord>& records)
{
    for (size_t k = 0; k < records.size(); ++k) {
        if (!records[k].ok()) return false;
        if (k > 0 && !(records[k].sup_err_l2 < records[k - 1].sup_err_l2)) return false;
    }
    return true;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records)
{
    out << "alpha,nu,delta,sup_err_l2,final_err_l2,err0,alpha_grad_u0,apriori_max_1,apriori_max_2,"
           "apriori_max_3,energy_drift,runtime_s,status\n";
    const auto old = out.precision(17);
    for (const auto& r : records) {
        std::string status = r.status;
        std::replace(status.begin(), status.end(), ',', ';');
        std::replace(status.begin(), status.end(), '\n', ' ');
        out << r.alpha << ',' << r.nu << ',' << r.delta << ',' << r.sup_err_l2 << ',' << r.final_err_l2 << ','
            << r.err0 << ',' << r.alpha_grad_u0 << ',' << r.apriori_max[0] << ',' << r.apriori_max[1] << ','
            << r.apriori_max[2] << ',' << r.energy_drift << ',' << r.runtime_s << ',' << status << '\n';
    }
    out.precision(old);
}

std::string sweep_rate_json(const std::vector<SweepRecord>& records)
{
    nlohmann::json out = nlohmann::json::array();
    auto add = [&](const char* name, double SweepRecord::*field) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& r : records) {
            if (r.ok()) pts.emplace_back(r.alpha, r.*field);
        }
        try {
            out.push_back(nlohmann::json::parse(rate_fit_json(name, fit_rate(pts))));
        } catch (const DegenerateFit&) {
        }
    };
    add("sup_err_l2", &SweepRecord::sup_err_l2);
    add("final_err_l2", &SweepRecord::final_err_l2);
    add("err0", &SweepRecord::err0);
    return out.dump(2);
}

}  // namespace sgf
