#include "sgf/elliptic.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>

#include "sgf/errors.hpp"
#include "sgf/operators.hpp"

namespace sgf {

namespace {

constexpr int kLower = 3;
constexpr int kUpper = 2;
constexpr int kLdab = 2 * kLower + kUpper + 1;

// Tridiagonal coefficients of the discrete mode-m Laplacian on an interior ring.
struct LaplacianRow {
    double sub, diag, super;
};

LaplacianRow laplacian_row(const ExteriorGrid& g, int i, int m)
{
    const double inv_h2 = 1.0 / (g.ds() * g.ds());
    const double e = std::exp(-2.0 * g.s_nodes()[i]);
    return {e * inv_h2, e * (-2.0 * inv_h2 - double(m) * m), e * inv_h2};
}

void solve_all_modes(const ExteriorGrid& g, const std::vector<ModeSolver>& modes,
                     std::vector<Complex>& spec)
{
    const int nr = g.n_r();
    const int nm = g.fft().n_modes();
    std::vector<double> re(nr), im(nr);
    for (int m = 0; m < nm; ++m) {
        for (int i = 0; i < nr; ++i) {
            re[i] = spec[static_cast<size_t>(i) * nm + m].real();
            im[i] = spec[static_cast<size_t>(i) * nm + m].imag();
        }
        modes[m].solve(re, im);
        for (int i = 0; i < nr; ++i) spec[static_cast<size_t>(i) * nm + m] = Complex(re[i], im[i]);
    }
}

}  // namespace

ModeSolver::ModeSolver(const ExteriorGrid& g, int mode, ModeKind kind, double alpha)
    : n_(g.n_r()), mode_(mode), kind_(kind), alpha_(alpha),
      band_(static_cast<size_t>(kLdab) * g.n_r(), 0.0), pivots_(g.n_r()),
      row_scale_(g.n_r(), 1.0), boundary_row_(g.n_r(), false)
{
    const int n = n_;
    const double h = g.ds();
    if (kind == ModeKind::euler) {
        set(0, 0, 1.0);
        boundary_row_[0] = true;
        for (int i = 1; i + 1 < n; ++i) {
            const auto row = laplacian_row(g, i, mode);
            set(i, i - 1, row.sub);
            set(i, i, row.diag);
            set(i, i + 1, row.super);
        }
        // d_s phi + m phi = 0 with the one-sided stencil, scaled by 2h
        set(n - 1, n - 3, 1.0);
        set(n - 1, n - 2, -4.0);
        set(n - 1, n - 1, 3.0 + 2.0 * h * mode);
        boundary_row_[n - 1] = true;
    } else {
        if (!(alpha > 0.0)) throw DomainError("stream solve requires alpha > 0");
        const double a2 = alpha * alpha;
        set(0, 0, 1.0);
        set(1, 0, -3.0);
        set(1, 1, 4.0);
        set(1, 2, -1.0);
        // At r_max: d_s phi + m phi = 0 (the decaying harmonic) and w = 0,
        // i.e. d_ss phi - m^2 phi = 0 with the one-sided stencil of laplacian().
        // Fixing phi(r_max) = 0 instead would force a w layer of width alpha there.
        set(n - 2, n - 3, 1.0);
        set(n - 2, n - 2, -4.0);
        set(n - 2, n - 1, 3.0 + 2.0 * h * mode);
        set(n - 1, n - 4, -1.0);
        set(n - 1, n - 3, 4.0);
        set(n - 1, n - 2, -5.0);
        set(n - 1, n - 1, 2.0 - h * h * mode * mode);
        for (int i : {0, 1, n - 2, n - 1}) boundary_row_[i] = true;
        for (int i = 2; i + 2 < n; ++i) {
            const auto lm = laplacian_row(g, i - 1, mode);
            const auto l0 = laplacian_row(g, i, mode);
            const auto lp = laplacian_row(g, i + 1, mode);
            // (L L)[i, i+k], k = -2..2
            const double ll[5] = {
                l0.sub * lm.sub,
                l0.sub * lm.diag + l0.diag * l0.sub,
                l0.sub * lm.super + l0.diag * l0.diag + l0.super * lp.sub,
                l0.diag * l0.super + l0.super * lp.diag,
                l0.super * lp.super,
            };
            const double l[5] = {0.0, l0.sub, l0.diag, l0.super, 0.0};
            for (int k = 0; k < 5; ++k) set(i, i + k - 2, l[k] - a2 * ll[k]);
        }
    }

    // Row equilibration.
    for (int i = 0; i < n; ++i) {
        double big = 0.0;
        for (int j = std::max(0, i - kLower); j <= std::min(n - 1, i + kUpper); ++j) {
            big = std::max(big, std::abs(band_[(kLower + kUpper + i - j) + static_cast<size_t>(j) * kLdab]));
        }
        row_scale_[i] = big > 0.0 ? 1.0 / big : 1.0;
        for (int j = std::max(0, i - kLower); j <= std::min(n - 1, i + kUpper); ++j) {
            band_[(kLower + kUpper + i - j) + static_cast<size_t>(j) * kLdab] *= row_scale_[i];
        }
    }

    const lapack_int info =
        LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n, n, kLower, kUpper, band_.data(), kLdab, pivots_.data());
    if (info != 0) throw SingularFactorization(mode, static_cast<int>(info));
}

void ModeSolver::set(int row, int col, double value)
{
    band_[(kLower + kUpper + row - col) + static_cast<size_t>(col) * kLdab] = value;
}

void ModeSolver::solve(std::span<double> re, std::span<double> im) const
{
    std::vector<double> rhs(2 * static_cast<size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        rhs[i] = boundary_row_[i] ? 0.0 : re[i] * row_scale_[i];
        rhs[n_ + i] = boundary_row_[i] ? 0.0 : im[i] * row_scale_[i];
    }
    const lapack_int info = LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n_, kLower, kUpper, 2, band_.data(),
                                           kLdab, pivots_.data(), rhs.data(), n_);
    if (info != 0) throw SingularFactorization(mode_, static_cast<int>(info));
    std::copy_n(rhs.begin(), n_, re.begin());
    std::copy_n(rhs.begin() + n_, n_, im.begin());
}

PoissonSolver::PoissonSolver(GridPtr grid) : grid_(std::move(grid))
{
    const int nm = grid_->fft().n_modes();
    modes_.reserve(nm);
    for (int m = 0; m < nm; ++m) modes_.emplace_back(*grid_, m, ModeKind::euler, 0.0);
}

ScalarField PoissonSolver::solve(const ScalarField& w, const PoissonOptions& options) const
{
    require_same_grid(*grid_, w.grid());
    if (options.check_circulation) {
        const double total = integrate(w);
        std::vector<double> absw(w.values());
        for (double& x : absw) x = std::abs(x);
        const double scale = integrate(ScalarField(grid_, std::move(absw)));
        if (std::abs(total) > options.circulation_tol * scale) {
            throw IllPosedMode0("total vorticity " + std::to_string(total) +
                                " is not zero; the mode-0 far-field condition assumes zero circulation");
        }
    }
    std::vector<Complex> spec = grid_->fft().forward(w.values());
    solve_all_modes(*grid_, modes_, spec);
    return from_angular_spectrum(grid_, spec);
}

StreamHelmholtzSolver::StreamHelmholtzSolver(GridPtr grid, double alpha)
    : grid_(std::move(grid)), alpha_(alpha)
{
    if (!(alpha > 0.0)) {
        throw DomainError("alpha must be > 0 for the no-slip stream solve (alpha = 0 over-determines "
                          "the Poisson problem)");
    }
    const int nm = grid_->fft().n_modes();
    modes_.reserve(nm);
    for (int m = 0; m < nm; ++m) modes_.emplace_back(*grid_, m, ModeKind::no_slip, alpha);
}

ScalarField StreamHelmholtzSolver::solve_phi(const ScalarField& q) const
{
    require_same_grid(*grid_, q.grid());
    std::vector<Complex> spec = grid_->fft().forward(q.values());
    solve_all_modes(*grid_, modes_, spec);
    return from_angular_spectrum(grid_, spec);
}

StreamSolution StreamHelmholtzSolver::solve(const ScalarField& q) const
{
    ScalarField phi = solve_phi(q);
    ScalarField w = laplacian(phi);
    VectorField u = perp_grad(phi, BoundaryTag::no_slip);
    return {std::move(phi), std::move(w), std::move(u)};
}

ScalarField solve_poisson(const ScalarField& w, const PoissonOptions& options)
{
    return PoissonSolver(w.grid_ptr()).solve(w, options);
}

StreamSolution solve_stream_helmholtz(const ScalarField& q, double alpha)
{
    return StreamHelmholtzSolver(q.grid_ptr(), alpha).solve(q);
}

ScalarField stream_operator(const ScalarField& phi, double alpha)
{
    const ScalarField lap = laplacian(phi);
    return lap - (alpha * alpha) * laplacian(lap);
}

ScalarField recover_q(const VectorField& u, double alpha)
{
    const ScalarField w = curl_perp(u);
    if (alpha == 0.0) return w;
    return w - (alpha * alpha) * laplacian(w);
}

}  // namespace sgf
