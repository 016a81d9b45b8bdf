#include "sgf/initial_data.hpp"

#include <cmath>
#include <numbers>

#include "sgf/boundary_layer.hpp"
#include "sgf/errors.hpp"
#include "sgf/operators.hpp"
#include "sgf/snapshot.hpp"

namespace sgf {

namespace {

double wall(const InitialCase& c, double r)
{
    const double f = -std::expm1(1.0 - r);  // 1 - e^{1-r}
    return c.profile == BoundaryProfile::no_slip ? f * f : f;
}

double wall_dr(const InitialCase& c, double r)
{
    const double e = std::exp(1.0 - r);
    const double f = -std::expm1(1.0 - r);
    return c.profile == BoundaryProfile::no_slip ? 2.0 * f * e : e;
}

double gaussian(const InitialCase& c, double r)
{
    const double z = (r - c.r0) / c.sigma;
    return std::exp(-z * z);
}

void validate_case(const InitialCase& c)
{
    if (!(c.sigma > 0.0)) throw DomainError("case.sigma must be > 0");
    if (!(c.r0 >= 1.0)) throw DomainError("case.r0 must be >= 1");
    if (c.name == CaseName::perturbed_vortex && c.mode < 1) throw DomainError("case.mode must be >= 1");
}

}  // namespace

double radial_profile(const InitialCase& c, double r) { return c.amplitude * wall(c, r) * gaussian(c, r); }

double radial_profile_dr(const InitialCase& c, double r)
{
    const double g = gaussian(c, r);
    const double dg = -2.0 * (r - c.r0) / (c.sigma * c.sigma) * g;
    return c.amplitude * (wall_dr(c, r) * g + wall(c, r) * dg);
}

double circulation(const InitialCase& c, double r) { return 2.0 * std::numbers::pi * r * radial_profile_dr(c, r); }

ScalarField canonical_psi(const GridPtr& grid, const InitialCase& c)
{
    ScalarField psi = ScalarField::zeros(grid);
    if (c.name == CaseName::file) {
        if (c.file.empty()) throw DomainError("case.file must name a snapshot for the file case");
        psi = to_field(read_snapshot(c.file), grid);
    } else {
        validate_case(c);
        const double eps = c.name == CaseName::perturbed_vortex ? c.epsilon : 0.0;
        const int m = c.mode;
        if (eps == 0.0) {
            psi = ScalarField::from_radial(grid, [&c](double r) { return radial_profile(c, r); });
        } else {
            psi = ScalarField::from_function(grid, [&c, eps, m](double r, double th) {
                return radial_profile(c, r) * (1.0 + eps * std::cos(m * th));
            });
        }
        const double far = circulation(c, grid->spec().r_max);
        if (std::abs(far) > 1e-10) {
            throw DomainError("initial case has far-field circulation " + std::to_string(far) +
                              "; only zero-circulation data is supported");
        }
    }

    const double r_tail = 0.9 * grid->spec().r_max;
    const double total = norm_l2(psi);
    const double tail = norm_l2_where(psi, [r_tail](double r) { return r > r_tail; });
    if (tail > 1e-10 * total) {
        throw DomainError("initial stream function reaches the truncation radius (tail fraction " +
                          std::to_string(total > 0 ? tail / total : 0.0) + ")");
    }
    if (psi.max_abs_on_boundary() > 1e-12 * std::max(1.0, psi.max_abs())) {
        throw DomainError("initial stream function must vanish on r = 1");
    }
    return psi;
}

ScalarField initial_stream(const ScalarField& psi0, double alpha, int min_cells)
{
    if (!(alpha > 0.0 && alpha <= 0.5)) {
        throw DomainError("alpha must lie in (0, 0.5] for the initial-data family (got " +
                          std::to_string(alpha) + ")");
    }
    if (psi0.max_abs_on_boundary() > 1e-12 * std::max(1.0, psi0.max_abs())) {
        throw DomainError("psi0 must vanish on r = 1");
    }
    const int cells = psi0.grid().cells_within(alpha);
    if (cells < min_cells) {
        throw UnresolvedError("collar rho < alpha = " + std::to_string(alpha) + " holds " +
                              std::to_string(cells) + " radial cells; need " + std::to_string(min_cells));
    }
    const ScalarField cut =
        ScalarField::from_radial(psi0.grid_ptr(), [alpha](double r) { return rise((r - 1.0) / alpha); });
    return cut * psi0;
}

VectorField make_initial(const ScalarField& psi0, double alpha, int min_cells)
{
    return perp_grad(initial_stream(psi0, alpha, min_cells), BoundaryTag::no_slip);
}

HypothesisReport hypothesis_report(const ScalarField& psi0, const std::vector<double>& alphas, int min_cells)
{
    require_geometric(alphas, "alphas");
    const VectorField u0 = perp_grad(psi0);
    HypothesisReport report;
    std::vector<std::pair<double, double>> err_pts;
    std::array<std::vector<std::pair<double, double>>, 3> dk_pts;
    for (double alpha : alphas) {
        HypothesisEntry e;
        e.alpha = alpha;
        e.resolved = psi0.grid().cells_within(alpha) >= min_cells;
        if (e.resolved) {
            const VectorField ua = make_initial(psi0, alpha, min_cells);
            e.err0 = norm_l2(ua - u0);
            for (int k = 1; k <= 3; ++k) e.dk[k - 1] = seminorm_hk(ua, k);
            err_pts.emplace_back(alpha, e.err0);
            for (int k = 0; k < 3; ++k) dk_pts[k].emplace_back(alpha, e.dk[k]);
        }
        report.entries.push_back(e);
    }
    report.err0_fit = fit_rate(err_pts);
    for (int k = 0; k < 3; ++k) report.dk_fits[k] = fit_rate(dk_pts[k]);
    return report;
}

CaseName parse_case_name(const std::string& s)
{
    if (s == "radial_vortex") return CaseName::radial_vortex;
    if (s == "perturbed_vortex") return CaseName::perturbed_vortex;
    if (s == "file") return CaseName::file;
    throw DomainError("unknown case '" + s + "'");
}

const char* to_string(CaseName c)
{
    switch (c) {
    case CaseName::radial_vortex: return "radial_vortex";
    case CaseName::perturbed_vortex: return "perturbed_vortex";
    case CaseName::file: return "file";
    }
    return "?";
}

BoundaryProfile parse_boundary_profile(const std::string& s)
{
    if (s == "no_slip") return BoundaryProfile::no_slip;
    if (s == "slip") return BoundaryProfile::slip;
    throw DomainError("unknown boundary profile '" + s + "'");
}

const char* to_string(BoundaryProfile p) { return p == BoundaryProfile::no_slip ? "no_slip" : "slip"; }

}  // namespace sgf
