#pragma once

#include <iosfwd>
#include <vector>

#include "sgf/field.hpp"
#include "sgf/rate_fit.hpp"

namespace sgf {

/// Quintic smoothstep 6y^5 - 15y^4 + 10y^3 with y clamped to [0, 1]; C^2.
double smoothstep(double y);

/// Cutoff: 1 on [0, 1], 0 on [2, inf), smoothstep-monotone in between.
double eta(double x);

/// Reversed cutoff: 0 on [0, 1], 1 on [2, inf).
double rise(double x);

/// u_b = perp_grad(eta(rho / delta) * psi_bar).
///
/// Requires 0 < delta < 1 and psi_bar vanishing on r = 1 (to
/// boundary_tol * max(1, max|psi_bar|)); throws DomainError otherwise.
VectorField build_corrector(const ScalarField& psi_bar, double delta, double boundary_tol = 1e-10);

struct CorrectorEntry {
    double delta = 0.0;
    double norm_ub = 0.0;
    double seminorm_ub = 0.0;
    /// At least `min_cells` radial cells inside rho <= delta.
    bool resolved = false;
};

struct CorrectorReport {
    std::vector<CorrectorEntry> entries;
    RateFit l2_fit;
    RateFit h1_fit;
};

/// Fits ||u_b|| and ||grad u_b|| against delta over the resolved entries.
/// `deltas` must form a geometric sequence in (0, 1). Throws DegenerateFit if
/// fewer than three resolved entries remain or a norm vanishes.
CorrectorReport corrector_scaling_report(const ScalarField& psi_bar, const std::vector<double>& deltas,
                                         int min_cells = 4);

/// Report CSV: delta,norm_ub,seminorm_ub,resolved_flag.
void write_corrector_csv(std::ostream& out, const CorrectorReport& report);

/// Throws DomainError unless `values` is a strictly monotone geometric sequence.
void require_geometric(const std::vector<double>& values, const char* what);

}  // namespace sgf
