#include "sgf/energy_audit.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "sgf/errors.hpp"
#include "sgf/operators.hpp"

namespace sgf {

namespace {

struct Cartesian {
    ScalarField x;
    ScalarField y;
};

Cartesian components(const VectorField& u) { return {u.cartesian_x(), u.cartesian_y()}; }

double dot(const Cartesian& a, const Cartesian& b) { return inner(a.x, b.x) + inner(a.y, b.y); }

// (a . grad) f for a scalar f.
ScalarField directional(const Cartesian& a, const ScalarField& f)
{
    const CartesianGradient g = cartesian_gradient(f);
    return a.x * g.dx + a.y * g.dy;
}

}  // namespace

AuditReport energy_audit(const Trajectory& sg, const Trajectory& eu, double delta)
{
    const size_t n = sg.snapshots.size();
    if (n < 3) throw DomainError("energy audit needs at least 3 snapshots to estimate time derivatives");
    if (eu.snapshots.size() != n) throw MismatchError("energy audit: trajectories differ in snapshot count");
    if (!(delta > 0.0)) throw DomainError("energy audit: delta must be > 0");
    const double dt = sg.snapshots[1].time - sg.snapshots[0].time;
    for (size_t k = 0; k < n; ++k) {
        const double t = sg.snapshots[k].time;
        if (std::abs(t - eu.snapshots[k].time) > 1e-12 * std::max(1.0, std::abs(t))) {
            throw MismatchError("energy audit: snapshot times differ");
        }
        if (k > 0 && std::abs((t - sg.snapshots[k - 1].time) - dt) > 1e-9 * dt) {
            throw DomainError("energy audit: snapshots must be uniformly spaced in time");
        }
        require_same_grid(sg.snapshots[k].u.grid(), eu.snapshots[k].u.grid());
    }

    const double alpha = sg.params.alpha;
    const double nu = sg.params.nu;
    const double a2 = alpha * alpha;

    std::vector<Cartesian> lap_u;
    lap_u.reserve(n);
    for (const auto& s : sg.snapshots) {
        const Cartesian u = components(s.u);
        lap_u.push_back({laplacian(u.x), laplacian(u.y)});
    }

    std::vector<std::array<double, 4>> integrand(n);
    std::vector<double> half_w2(n);
    for (size_t k = 0; k < n; ++k) {
        const Cartesian u = components(sg.snapshots[k].u);
        const Cartesian ub = components(eu.snapshots[k].u);
        const Cartesian w{u.x - ub.x, u.y - ub.y};
        const Cartesian& lu = lap_u[k];
        half_w2[k] = 0.5 * dot(w, w);

        // d_t Delta u
        Cartesian dlu{ScalarField::zeros(u.x.grid_ptr()), ScalarField::zeros(u.x.grid_ptr())};
        if (a2 > 0.0) {
            auto ddt = [&](auto pick) {
                if (k == 0) return (1.0 / (2.0 * dt)) * (-3.0 * pick(lap_u[0]) + 4.0 * pick(lap_u[1]) - pick(lap_u[2]));
                if (k == n - 1) {
                    return (1.0 / (2.0 * dt)) * (3.0 * pick(lap_u[n - 1]) - 4.0 * pick(lap_u[n - 2]) + pick(lap_u[n - 3]));
                }
                return (1.0 / (2.0 * dt)) * (pick(lap_u[k + 1]) - pick(lap_u[k - 1]));
            };
            dlu.x = ddt([](const Cartesian& c) { return c.x; });
            dlu.y = ddt([](const Cartesian& c) { return c.y; });
        }

        const CartesianGradient gx = cartesian_gradient(ub.x);
        const CartesianGradient gy = cartesian_gradient(ub.y);
        const Cartesian w_grad_ub{w.x * gx.dx + w.y * gx.dy, w.x * gy.dx + w.y * gy.dy};

        double i4 = 0.0;
        if (a2 > 0.0) {
            const CartesianGradient ux = cartesian_gradient(u.x);
            const CartesianGradient uy = cartesian_gradient(u.y);
            const Cartesian adv{directional(u, lu.x), directional(u, lu.y)};
            const Cartesian stretch{lu.x * ux.dx + lu.y * uy.dx, lu.x * ux.dy + lu.y * uy.dy};
            i4 = a2 * (dot(adv, w) + dot(stretch, w));
        }
        integrand[k] = {nu * dot(lu, w), -dot(w_grad_ub, w), a2 * dot(dlu, w), i4};
    }

    AuditReport report;
    report.alpha = alpha;
    report.nu = nu;
    report.delta = delta;
    report.energy0 = energy(sg.snapshots.front());
    report.g_shape = (nu + a2) * ((a2 > 0.0 ? std::sqrt(delta) / a2 : 0.0) + 1.0 / delta) + a2;

    std::array<double, 4> acc{};
    for (size_t k = 0; k < n; ++k) {
        if (k > 0) {
            const double h = sg.snapshots[k].time - sg.snapshots[k - 1].time;
            for (int j = 0; j < 4; ++j) acc[j] += 0.5 * h * (integrand[k][j] + integrand[k - 1][j]);
        }
        AuditRow row;
        row.t = sg.snapshots[k].time;
        row.lhs = half_w2[k] - half_w2[0];
        row.terms = acc;
        const double sum = acc[0] + acc[1] + acc[2] + acc[3];
        row.residual = std::abs(row.lhs - sum);
        const double scale = std::max({std::abs(row.lhs), std::abs(sum), report.energy0});
        if (scale > 0.0) report.max_relative_residual = std::max(report.max_relative_residual, row.residual / scale);
        report.rows.push_back(row);
    }
    return report;
}

void write_audit_csv(std::ostream& out, const AuditReport& report)
{
    out << "t,lhs,I1,I2,I3,I4,residual\n";
    const auto old = out.precision(17);
    for (const auto& r : report.rows) {
        out << r.t << ',' << r.lhs << ',' << r.terms[0] << ',' << r.terms[1] << ',' << r.terms[2] << ','
            << r.terms[3] << ',' << r.residual << '\n';
    }
    out.precision(old);
}

}  // namespace sgf
