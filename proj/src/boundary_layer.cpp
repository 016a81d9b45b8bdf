#include "sgf/boundary_layer.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "sgf/errors.hpp"
#include "sgf/operators.hpp"

namespace sgf {

double smoothstep(double y)
{
    y = std::clamp(y, 0.0, 1.0);
    return y * y * y * (10.0 + y * (-15.0 + 6.0 * y));
}

double eta(double x) { return smoothstep(2.0 - x); }

double rise(double x) { return smoothstep(x - 1.0); }

void require_geometric(const std::vector<double>& values, const char* what)
{
    if (values.size() < 2) return;
    const double ratio = values[1] / values[0];
    if (!(ratio > 0.0) || ratio == 1.0) {
        throw DomainError(std::string(what) + " must be a strictly monotone geometric sequence");
    }
    for (size_t k = 1; k < values.size(); ++k) {
        if (!(values[k] > 0.0) || std::abs(values[k] / values[k - 1] - ratio) > 1e-9 * ratio) {
            throw DomainError(std::string(what) + " must be a geometric sequence");
        }
    }
}

VectorField build_corrector(const ScalarField& psi_bar, double delta, double boundary_tol)
{
    if (!(delta > 0.0 && delta < 1.0)) {
        throw DomainError("corrector width delta must lie in (0, 1) (got " + std::to_string(delta) + ")");
    }
    const double on_wall = psi_bar.max_abs_on_boundary();
    if (on_wall > boundary_tol * std::max(1.0, psi_bar.max_abs())) {
        throw DomainError("psi_bar must vanish on r = 1 (max |psi_bar| there is " +
                          std::to_string(on_wall) + ")");
    }
    const ScalarField cut = ScalarField::from_radial(psi_bar.grid_ptr(),
                                                     [delta](double r) { return eta((r - 1.0) / delta); });
    return perp_grad(cut * psi_bar, BoundaryTag::non_penetration);
}

CorrectorReport corrector_scaling_report(const ScalarField& psi_bar, const std::vector<double>& deltas,
                                         int min_cells)
{
    require_geometric(deltas, "deltas");
    CorrectorReport report;
    std::vector<std::pair<double, double>> l2_pts, h1_pts;
    for (double delta : deltas) {
        CorrectorEntry e;
        e.delta = delta;
        e.resolved = psi_bar.grid().cells_within(delta) >= min_cells;
        const VectorField ub = build_corrector(psi_bar, delta);
        e.norm_ub = norm_l2(ub);
        e.seminorm_ub = seminorm_hk(ub, 1);
        if (e.resolved) {
            l2_pts.emplace_back(delta, e.norm_ub);
            h1_pts.emplace_back(delta, e.seminorm_ub);
        }
        report.entries.push_back(e);
    }
    report.l2_fit = fit_rate(l2_pts);
    report.h1_fit = fit_rate(h1_pts);
    return report;
}

void write_corrector_csv(std::ostream& out, const CorrectorReport& report)
{
    out << "delta,norm_ub,seminorm_ub,resolved_flag\n";
    out.precision(17);
    for (const auto& e : report.entries) {
        out << e.delta << ',' << e.norm_ub << ',' << e.seminorm_ub << ',' << (e.resolved ? 1 : 0) << '\n';
    }
}

}  // namespace sgf
