#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "sgf/dynamics.hpp"

namespace sgf {

/// Energy bookkeeping of the difference W = u - u_euler, at one snapshot time.
/// Each I is integrated from the first snapshot up to `t`.
struct AuditRow {
    double t = 0.0;
    /// 1/2 ||W(t)||^2 - 1/2 ||W(0)||^2
    double lhs = 0.0;
    /// I1 = nu int Delta u . W
    /// I2 = -int ((W . grad) u_euler) . W
    /// I3 = alpha^2 int d_t Delta u . W
    /// I4 = alpha^2 int ((u . grad) Delta u + (grad u)^T Delta u) . W
    std::array<double, 4> terms{};
    double residual = 0.0;
};

struct AuditReport {
    std::vector<AuditRow> rows;
    /// E_alpha at the first snapshot of the second-grade trajectory.
    double energy0 = 0.0;
    /// Largest |lhs - sum I| / max(|lhs|, |sum I|, energy0) over the rows.
    double max_relative_residual = 0.0;
    /// (nu + alpha^2)(alpha^{-2} delta^{1/2} + delta^{-1}) + alpha^2, with unit constants.
    double g_shape = 0.0;
    double alpha = 0.0;
    double nu = 0.0;
    double delta = 0.0;
};

/// Evaluates the decomposition from snapshots: d_t by centered differences
/// (second-order one-sided at the ends) and time integrals by the trapezoid
/// rule. Requires at least three snapshots on matching grids and times,
/// uniformly spaced; throws DomainError / MismatchError otherwise.
AuditReport energy_audit(const Trajectory& second_grade, const Trajectory& euler, double delta);

/// t,lhs,I1,I2,I3,I4,residual
void write_audit_csv(std::ostream& out, const AuditReport& report);

}  // namespace sgf
