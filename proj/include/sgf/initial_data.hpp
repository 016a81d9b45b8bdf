#pragma once

#include <array>
#include <string>
#include <vector>

#include "sgf/field.hpp"
#include "sgf/rate_fit.hpp"

namespace sgf {

enum class CaseName { radial_vortex, perturbed_vortex, file };

/// Wall factor of the canonical stream function.
///
/// no_slip: (1 - e^{1-r})^2, so u0 itself vanishes on r = 1.
/// slip:    (1 - e^{1-r}), so u0 is only non-penetrating and the no-slip
///          approximations develop a genuine boundary layer.
enum class BoundaryProfile { no_slip, slip };

struct InitialCase {
    CaseName name = CaseName::radial_vortex;
    double amplitude = 1.0;
    double r0 = 2.0;
    double sigma = 0.4;
    int mode = 2;
    double epsilon = 0.1;
    BoundaryProfile profile = BoundaryProfile::no_slip;
    /// Snapshot path for CaseName::file.
    std::string file;

    bool operator==(const InitialCase&) const = default;
};

/// Radial part A * wall(r) * exp(-((r - r0) / sigma)^2) and its r-derivative.
double radial_profile(const InitialCase& c, double r);
double radial_profile_dr(const InitialCase& c, double r);

/// Circulation of u0 = perp_grad(psi0) around the ring of radius r
/// (2 pi r d_r psi0 for the radial part).
double circulation(const InitialCase& c, double r);

/// Euler stream function psi0 for the case on `grid`.
///
/// Throws DomainError if psi0 carries more than 1e-10 of its L2 mass beyond
/// 0.9 r_max, does not vanish on r = 1, or has nonzero far-field circulation.
ScalarField canonical_psi(const GridPtr& grid, const InitialCase& c);

/// Stream function rise(rho / alpha) * psi0 of u0^alpha (same preconditions
/// as make_initial).
ScalarField initial_stream(const ScalarField& psi0, double alpha, int min_cells = 4);

/// u0^alpha = perp_grad(rise(rho / alpha) * psi0), tagged no-slip.
///
/// Requires alpha in (0, 0.5], psi0 vanishing on r = 1 and at least
/// `min_cells` radial cells inside rho <= alpha (UnresolvedError otherwise).
VectorField make_initial(const ScalarField& psi0, double alpha, int min_cells = 4);

struct HypothesisEntry {
    double alpha = 0.0;
    /// ||u0^alpha - u0||
    double err0 = 0.0;
    /// ||D^k u0^alpha||, k = 1..3
    std::array<double, 3> dk{};
    bool resolved = false;
};

struct HypothesisReport {
    std::vector<HypothesisEntry> entries;
    RateFit err0_fit;
    std::array<RateFit, 3> dk_fits;
};

/// Measures the initial-data family over a geometric list of alphas and fits
/// power laws over the resolved entries. Throws DegenerateFit when a fit
/// cannot be formed (e.g. all differences vanish).
HypothesisReport hypothesis_report(const ScalarField& psi0, const std::vector<double>& alphas,
                                   int min_cells = 4);

CaseName parse_case_name(const std::string& s);
const char* to_string(CaseName c);
BoundaryProfile parse_boundary_profile(const std::string& s);
const char* to_string(BoundaryProfile p);

}  // namespace sgf
