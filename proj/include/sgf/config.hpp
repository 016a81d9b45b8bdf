#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sgf/dynamics.hpp"
#include "sgf/harness.hpp"
#include "sgf/initial_data.hpp"
#include "sgf/snapshot.hpp"

namespace sgf {

struct OutputConfig {
    std::string dir = "out";
    SnapshotFormat snapshot_format = SnapshotFormat::csv;
    /// Write q/phi snapshot files from `simulate`.
    bool snapshots = true;

    bool operator==(const OutputConfig&) const = default;
};

struct SweepSection {
    std::vector<double> alphas{0.4, 0.2, 0.1, 0.05};
    double nu_c = 0.0;
    double nu_gamma = 2.0;
    double delta_exponent = 4.0 / 3.0;
    double snapshot_interval = 0.05;
    int threads = 0;

    bool operator==(const SweepSection&) const = default;
};

/// Inputs and tolerances of the verify-* subcommands.
struct VerifyConfig {
    std::vector<int> poisson_n_r{32, 64, 128, 256};
    int poisson_n_theta = 16;
    double poisson_slope = 2.0;
    double poisson_slope_tol = 0.2;

    int chain_n_r = 128;
    std::vector<double> chain_alphas{0.05, 0.2};
    double chain_tol = 1e-9;

    int probe_n_r = 512;
    std::vector<double> probe_alphas{0.4, 0.2, 0.1, 0.05};
    double probe_min_slope = -2.1;

    int corrector_n_r = 512;
    std::vector<double> deltas{0.4, 0.2, 0.1, 0.05};
    double corrector_slope_tol = 0.05;

    int hypothesis_n_r = 1024;
    std::vector<double> hypothesis_alphas{0.2, 0.1, 0.05, 0.025};
    double hypothesis_slope_tol = 0.1;

    double audit_interval = 0.01;
    double audit_tol = 1e-3;

    bool operator==(const VerifyConfig&) const = default;
};

struct RunConfig {
    ModelParams model;
    /// n_r is required; n_theta defaults to 128 and r_max to 8.
    GridSpec grid{0, 128, 8.0};
    double t_final = 0.0;
    RunOptions run;
    InitialCase initial;
    OutputConfig output;
    SweepSection sweep;
    VerifyConfig verify;

    SweepConfig sweep_config() const;
};

/// Parses and validates a JSON config. Required keys: model, alpha, grid.n_r,
/// t_final. In strict mode unknown keys are rejected; otherwise they are
/// skipped and reported through `warnings`. Throws ConfigError naming the
/// offending key path.
RunConfig parse_config(const std::string& text, bool strict = true, std::vector<std::string>* warnings = nullptr);
RunConfig load_config(const std::filesystem::path& path, bool strict = true,
                      std::vector<std::string>* warnings = nullptr);

/// Full JSON form (every key written); parse_config(to_json(c)) reproduces c.
std::string to_json(const RunConfig& config);

bool equivalent(const RunConfig& a, const RunConfig& b);

}  // namespace sgf
