#pragma once

#include <span>
#include <vector>

#include "sgf/field.hpp"

namespace sgf {

/// Which radial boundary-value problem a ModeSolver factorizes.
///
/// euler:   second-order Poisson, phi(1) = 0, Robin d_r phi + (m/r) phi = 0 at
///          r_max (Neumann for m = 0).
/// no_slip: fourth-order (Delta - alpha^2 Delta^2) phi = q with
///          phi = d_r phi = 0 at r = 1; at r_max the same Robin condition as
///          euler plus Delta phi = 0 (pinning phi there instead would force a
///          vorticity layer of width alpha).
enum class ModeKind { euler, no_slip };

/// Banded LU of the radial operator for a single angular mode m.
///
/// Interior rows are the same discrete operators `laplacian` applies to an
/// e^{i m theta} mode, so manufactured right-hand sides built with them are
/// inverted to round-off. Rows are equilibrated before factorization.
class ModeSolver {
public:
    ModeSolver(const ExteriorGrid& grid, int mode, ModeKind kind, double alpha);

    int mode() const noexcept { return mode_; }
    ModeKind kind() const noexcept { return kind_; }
    double alpha() const noexcept { return alpha_; }

    /// Solves A x = b for two right-hand sides in place. Boundary rows of the
    /// inputs are ignored and overwritten.
    void solve(std::span<double> re, std::span<double> im) const;

private:
    void set(int row, int col, double value);

    int n_;
    int mode_;
    ModeKind kind_;
    double alpha_;
    std::vector<double> band_;
    std::vector<int> pivots_;
    std::vector<double> row_scale_;
    std::vector<bool> boundary_row_;
};

struct PoissonOptions {
    /// |integral w| allowed relative to integral |w| before the mode-0
    /// problem is declared inconsistent with zero circulation.
    double circulation_tol = 1e-3;
    bool check_circulation = true;
};

/// Solves Delta phi = w with phi = 0 on r = 1 (Euler stream function).
class PoissonSolver {
public:
    explicit PoissonSolver(GridPtr grid);
    const GridPtr& grid() const noexcept { return grid_; }
    ScalarField solve(const ScalarField& w, const PoissonOptions& options = {}) const;

private:
    GridPtr grid_;
    std::vector<ModeSolver> modes_;
};

struct StreamSolution {
    ScalarField phi;
    ScalarField w;
    VectorField u;
};

/// Realizes the Stokes step u + alpha^2 A u = curl^perp psi through its stream
/// function: (Delta - alpha^2 Delta^2) phi = q, no-slip at r = 1, Robin
/// condition and w = 0 at r_max. Factorizations are built once per (grid, alpha).
class StreamHelmholtzSolver {
public:
    StreamHelmholtzSolver(GridPtr grid, double alpha);
    const GridPtr& grid() const noexcept { return grid_; }
    double alpha() const noexcept { return alpha_; }

    ScalarField solve_phi(const ScalarField& q) const;
    /// phi plus w = laplacian(phi) and u = perp_grad(phi) tagged no-slip.
    StreamSolution solve(const ScalarField& q) const;

private:
    GridPtr grid_;
    double alpha_;
    std::vector<ModeSolver> modes_;
};

ScalarField solve_poisson(const ScalarField& w, const PoissonOptions& options = {});
StreamSolution solve_stream_helmholtz(const ScalarField& q, double alpha);

/// The operator the stream solve inverts: laplacian(phi) - alpha^2 laplacian(laplacian(phi)).
ScalarField stream_operator(const ScalarField& phi, double alpha);

/// q = w - alpha^2 Delta w with w = curl_perp(u).
ScalarField recover_q(const VectorField& u, double alpha);

}  // namespace sgf
