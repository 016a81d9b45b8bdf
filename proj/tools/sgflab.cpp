// sgflab: command-line front end for the exterior-disk second-grade fluid lab.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sgf/boundary_layer.hpp"
#include "sgf/config.hpp"
#include "sgf/errors.hpp"
#include "sgf/harness.hpp"
#include "sgf/operators.hpp"
#include "sgf/snapshot.hpp"
#include "sgf/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace sgf;

namespace {

enum Exit { kOk = 0, kError = 1, kConfig = 2, kNumerical = 3, kVerify = 4 };

struct Common {
    std::string config;
    std::string output_dir;
    int threads = 0;
    bool threads_set = false;
    bool lenient = false;
};

struct SweepOverrides {
    std::string alphas;
    double nu_c = -1.0;
    double nu_gamma = std::nan("");
};

RunConfig load(const Common& common)
{
    std::vector<std::string> warnings;
    RunConfig cfg = load_config(common.config, !common.lenient, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
    if (!common.output_dir.empty()) cfg.output.dir = common.output_dir;
    if (common.threads_set) {
        if (common.threads < 0) throw ConfigError("--threads", "must be >= 0");
        cfg.sweep.threads = common.threads;
    }
    return cfg;
}

fs::path out_dir(const RunConfig& cfg)
{
    fs::path dir(cfg.output.dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw ConfigError("output.dir", "cannot create '" + dir.string() + "'");
    return dir;
}

std::ofstream open_out(const fs::path& path)
{
    std::ofstream out(path);
    if (!out) throw ConfigError("output.dir", "cannot write '" + path.string() + "'");
    return out;
}

void write_text(const fs::path& path, const std::string& text)
{
    auto out = open_out(path);
    out << text << '\n';
}

GridPtr grid_with(const RunConfig& cfg, int n_r) { return build_grid({n_r, cfg.grid.n_theta, cfg.grid.r_max}); }

bool line(const std::string& name, bool ok, const std::string& detail)
{
    std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    return ok;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

json fit_json(const std::string& name, const RateFit& fit) { return json::parse(rate_fit_json(name, fit)); }

int cmd_simulate(const Common& common)
{
    const RunConfig cfg = load(common);
    const fs::path dir = out_dir(cfg);
    const GridPtr grid = build_grid(cfg.grid);
    const ScalarField psi0 = canonical_psi(grid, cfg.initial);

    const FlowSolver solver(grid, cfg.model, cfg.run.step);
    const FlowState initial = cfg.model.kind == ModelKind::euler
                                  ? solver.from_stream(psi0)
                                  : solver.from_stream(initial_stream(psi0, cfg.model.alpha));

    auto diag = open_out(dir / "diagnostics.csv");
    write_diagnostics_header(diag);
    int snap = 0;
    double next_snap = 0.0;
    const double interval = cfg.run.snapshot_interval;
    auto dump = [&](const FlowState& s) {
        if (!cfg.output.snapshots) return;
        const char* ext = cfg.output.snapshot_format == SnapshotFormat::csv ? "csv" : "bin";
        char name[64];
        std::snprintf(name, sizeof name, "q_%04d.%s", snap, ext);
        write_snapshot(dir / name, s.q, s.time, cfg.model.alpha, cfg.model.nu, cfg.output.snapshot_format);
        std::snprintf(name, sizeof name, "phi_%04d.%s", snap, ext);
        write_snapshot(dir / name, s.phi, s.time, cfg.model.alpha, cfg.model.nu, cfg.output.snapshot_format);
        ++snap;
    };
    const double eps = 1e-12 * std::max(1.0, cfg.t_final);
    auto observer = [&](const FlowState& s, const StepDiagnostics& d) {
        write_diagnostics_row(diag, d);
        const bool due = interval > 0.0 ? s.time >= next_snap - eps : (s.time == 0.0 || s.time >= cfg.t_final - eps);
        if (due) {
            dump(s);
            if (interval > 0.0) next_snap += interval;
        }
    };
    const Trajectory traj = run(solver, initial, cfg.t_final, cfg.run, observer);

    const auto& first = traj.diagnostics.front();
    const auto& last = traj.diagnostics.back();
    json summary = {{"model", to_string(cfg.model.kind)},
                    {"alpha", cfg.model.alpha},
                    {"nu", cfg.model.nu},
                    {"steps", traj.diagnostics.size() - 1},
                    {"t_final", last.t},
                    {"energy0", first.energy},
                    {"energy_final", last.energy},
                    {"energy_drift", max_energy_drift(traj)},
                    {"energy_balance", max_energy_balance(traj)},
                    {"max_abs_q0", first.max_abs_q},
                    {"max_abs_q_final", last.max_abs_q},
                    {"snapshots_written", snap}};
    write_text(dir / "summary.json", summary.dump(2));
    std::printf("simulate: %zu steps to t=%g, energy drift %.3e, balance %.3e\n", traj.diagnostics.size() - 1,
                last.t, max_energy_drift(traj), max_energy_balance(traj));
    return kOk;
}

std::vector<double> parse_list(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("--alphas", "cannot parse '" + item + "' as a number");
        }
    }
    if (out.empty()) throw ConfigError("--alphas", "must list at least one value");
    return out;
}

int cmd_sweep(const Common& common, const SweepOverrides& o)
{
    RunConfig cfg = load(common);
    if (!o.alphas.empty()) cfg.sweep.alphas = parse_list(o.alphas);
    if (o.nu_c >= 0.0) cfg.sweep.nu_c = o.nu_c;
    if (std::isfinite(o.nu_gamma)) cfg.sweep.nu_gamma = o.nu_gamma;
    const SweepConfig sweep = cfg.sweep_config();
    try {
        validate(sweep);
    } catch (const DomainError& e) {
        throw ConfigError("sweep", e.what());
    }
    const fs::path dir = out_dir(cfg);
    const auto records = run_sweep(sweep);
    {
        auto out = open_out(dir / "sweep.csv");
        write_sweep_csv(out, records);
    }
    write_text(dir / "rates.json", sweep_rate_json(records));

    bool failed = false;
    for (const auto& r : records) {
        std::printf("alpha=%-8g nu=%-10.4g sup_err=%.4e err0=%.4e %s\n", r.alpha, r.nu, r.sup_err_l2, r.err0,
                    r.status.c_str());
        failed = failed || !r.ok();
    }
    const bool with_nu = cfg.sweep.nu_c > 0.0;
    const BoundCheck bound = check_bound_shape(records, with_nu);
    std::printf("bound shape (C fitted at alpha=%g): C=%.4e worst ratio %.3f\n", records.front().alpha,
                bound.constant, bound.worst_ratio);
    std::printf("sup_err strictly decreasing: %s\n", strictly_decreasing_errors(records) ? "yes" : "no");
    return failed ? kNumerical : kOk;
}

int cmd_verify_elliptic(const Common& common)
{
    const RunConfig cfg = load(common);
    const VerifyConfig& v = cfg.verify;
    const fs::path dir = out_dir(cfg);
    bool ok = true;

    const PoissonOrder order = measure_poisson_order(v.poisson_n_r, v.poisson_n_theta, cfg.grid.r_max);
    ok &= line("poisson order", std::abs(order.fit.slope - v.poisson_slope) <= v.poisson_slope_tol,
               fmt("slope %.4f (target %.2f +- %.2f)", order.fit.slope, v.poisson_slope, v.poisson_slope_tol));

    const double chain = measure_stream_chain({v.chain_n_r, cfg.grid.n_theta, cfg.grid.r_max}, v.chain_alphas);
    ok &= line("stream chain", chain <= v.chain_tol, fmt("max relative error %.3e (tol %.1e)", chain, v.chain_tol));

    const ScalarField psi = canonical_psi(grid_with(cfg, v.probe_n_r), cfg.initial);
    const StokesProbe probe = measure_stokes_probe(psi, v.probe_alphas);
    ok &= line("stokes probe", probe.fit.slope >= v.probe_min_slope,
               fmt("||D^3 u|| slope %.4f (must be >= %.2f)", probe.fit.slope, v.probe_min_slope));

    json report = {{"poisson", {{"n_r", order.n_r}, {"errors", order.errors}, {"fit", fit_json("poisson_l2_error", order.fit)}}},
                   {"stream_chain_max_relative_error", chain},
                   {"stokes_probe", {{"alphas", probe.alphas}, {"d3", probe.d3}, {"fit", fit_json("d3_u", probe.fit)}}},
                   {"passed", ok}};
    write_text(dir / "elliptic_report.json", report.dump(2));
    return ok ? kOk : kVerify;
}

int cmd_verify_corrector(const Common& common)
{
    const RunConfig cfg = load(common);
    const VerifyConfig& v = cfg.verify;
    const fs::path dir = out_dir(cfg);
    const ScalarField psi = canonical_psi(grid_with(cfg, v.corrector_n_r), cfg.initial);
    const CorrectorReport rep = corrector_scaling_report(psi, v.deltas);
    {
        auto out = open_out(dir / "corrector.csv");
        write_corrector_csv(out, rep);
    }
    json fits = json::array({fit_json("norm_ub", rep.l2_fit), fit_json("seminorm_ub", rep.h1_fit)});
    write_text(dir / "corrector_fits.json", fits.dump(2));
    bool ok = true;
    ok &= line("corrector L2 slope", std::abs(rep.l2_fit.slope - 0.5) <= v.corrector_slope_tol,
               fmt("%.4f (target 0.5 +- %.2f)", rep.l2_fit.slope, v.corrector_slope_tol));
    ok &= line("corrector H1 slope", std::abs(rep.h1_fit.slope + 0.5) <= v.corrector_slope_tol,
               fmt("%.4f (target -0.5 +- %.2f)", rep.h1_fit.slope, v.corrector_slope_tol));
    return ok ? kOk : kVerify;
}

int cmd_verify_initial_data(const Common& common)
{
    const RunConfig cfg = load(common);
    const VerifyConfig& v = cfg.verify;
    const fs::path dir = out_dir(cfg);
    const ScalarField psi = canonical_psi(grid_with(cfg, v.hypothesis_n_r), cfg.initial);
    const HypothesisReport rep = hypothesis_report(psi, v.hypothesis_alphas);
    {
        auto out = open_out(dir / "hypothesis.csv");
        out << "alpha,err0,d1,d2,d3,resolved_flag\n";
        out.precision(17);
        for (const auto& e : rep.entries) {
            out << e.alpha << ',' << e.err0 << ',' << e.dk[0] << ',' << e.dk[1] << ',' << e.dk[2] << ','
                << (e.resolved ? 1 : 0) << '\n';
        }
    }
    json fits = json::array({fit_json("err0", rep.err0_fit), fit_json("d1", rep.dk_fits[0]),
                             fit_json("d2", rep.dk_fits[1]), fit_json("d3", rep.dk_fits[2])});
    write_text(dir / "hypothesis_fits.json", fits.dump(2));

    bool ok = true;
    ok &= line("err0 slope", std::abs(rep.err0_fit.slope - 0.5) <= v.hypothesis_slope_tol,
               fmt("%.4f (target 0.5 +- %.2f)", rep.err0_fit.slope, v.hypothesis_slope_tol));
    ok &= line("D1 slope", std::abs(rep.dk_fits[0].slope + 0.5) <= v.hypothesis_slope_tol,
               fmt("%.4f (target -0.5 +- %.2f)", rep.dk_fits[0].slope, v.hypothesis_slope_tol));
    const size_t n = rep.entries.size();
    bool mono = n >= 3;
    for (int k = 1; k <= 3 && mono; ++k) {
        for (size_t i = n - 2; i < n; ++i) {
            const auto& a = rep.entries[i - 1];
            const auto& b = rep.entries[i];
            if (!(std::pow(b.alpha, k) * b.dk[k - 1] < std::pow(a.alpha, k) * a.dk[k - 1])) mono = false;
        }
    }
    ok &= line("alpha^k D^k decreasing", mono, "over the three finest alphas, k = 1..3");
    return ok ? kOk : kVerify;
}

int cmd_energy_audit(const Common& common)
{
    const RunConfig cfg = load(common);
    const fs::path dir = out_dir(cfg);
    const GridPtr grid = build_grid(cfg.grid);
    const ScalarField psi0 = canonical_psi(grid, cfg.initial);
    if (!(cfg.model.alpha > 0.0)) throw ConfigError("alpha", "energy-audit needs alpha > 0");
    const double delta = std::pow(cfg.model.alpha, cfg.sweep.delta_exponent);
    const AuditReport rep = audit_run(psi0, cfg.initial, cfg.model.alpha, cfg.model.nu, cfg.t_final,
                                      cfg.verify.audit_interval, delta, cfg.run);
    {
        auto out = open_out(dir / "audit.csv");
        write_audit_csv(out, rep);
    }
    const auto& last = rep.rows.back();
    json summary = {{"alpha", rep.alpha},      {"nu", rep.nu},
                    {"delta", rep.delta},      {"energy0", rep.energy0},
                    {"lhs", last.lhs},         {"I", last.terms},
                    {"residual", last.residual}, {"max_relative_residual", rep.max_relative_residual},
                    {"g_shape", rep.g_shape}};
    write_text(dir / "audit.json", summary.dump(2));
    const bool ok = rep.max_relative_residual <= cfg.verify.audit_tol;
    line("energy audit", ok, fmt("max relative residual %.3e (tol %.1e)", rep.max_relative_residual, cfg.verify.audit_tol));
    return ok ? kOk : kVerify;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Second-grade / Euler-alpha flow past a disk: simulation and verification"};
    app.require_subcommand(1);
    Common common;
    SweepOverrides overrides;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", common.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
        sub->add_option("--output-dir", common.output_dir, "Directory for output files");
        sub->add_option_function<int>(
            "--threads", [&](int n) { common.threads = n, common.threads_set = true; }, "Worker threads (0 = auto)");
        auto* strict = sub->add_flag("--strict", "Reject unknown config keys (default)");
        auto* lenient = sub->add_flag("--lenient", common.lenient, "Ignore unknown config keys");
        strict->excludes(lenient);
    };

    auto* simulate = app.add_subcommand("simulate", "One run: snapshots and diagnostics CSV");
    auto* sweep = app.add_subcommand("sweep", "Alpha sweep against the Euler reference");
    auto* ve = app.add_subcommand("verify-elliptic", "Poisson order, stream-solve chain, Stokes scaling probe");
    auto* vc = app.add_subcommand("verify-corrector", "Boundary-layer corrector scalings");
    auto* vi = app.add_subcommand("verify-initial-data", "Initial-data family rates");
    auto* ea = app.add_subcommand("energy-audit", "Energy decomposition of the difference field");
    for (auto* sub : {simulate, sweep, ve, vc, vi, ea}) add_common(sub);
    sweep->add_option("--alphas", overrides.alphas, "Comma-separated alphas, e.g. 0.4,0.2,0.1");
    sweep->add_option("--nu-c", overrides.nu_c, "nu = c * alpha^gamma: c");
    sweep->add_option("--nu-gamma", overrides.nu_gamma, "nu = c * alpha^gamma: gamma");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (*simulate) return cmd_simulate(common);
        if (*sweep) return cmd_sweep(common, overrides);
        if (*ve) return cmd_verify_elliptic(common);
        if (*vc) return cmd_verify_corrector(common);
        if (*vi) return cmd_verify_initial_data(common);
        if (*ea) return cmd_energy_audit(common);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const DomainError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kConfig;
    } catch (const DegenerateFit& e) {
        std::cerr << "verification failed: " << e.what() << '\n';
        return kVerify;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kError;
    }
    return kError;
}
