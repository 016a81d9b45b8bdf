#pragma once

#include <functional>
#include <span>
#include <vector>

#include "sgf/grid.hpp"

namespace sgf {

/// Nodal scalar on an ExteriorGrid (q, w, stream functions, rho, ...).
///
/// Value-semantic and immutable: every constructor rejects NaN/Inf with
/// NonFiniteError, and arithmetic returns fresh fields.
class ScalarField {
public:
    ScalarField(GridPtr grid, std::vector<double> values);

    static ScalarField zeros(const GridPtr& grid);
    static ScalarField constant(const GridPtr& grid, double value);
    static ScalarField from_function(const GridPtr& grid,
                                     const std::function<double(double r, double theta)>& f);
    static ScalarField from_radial(const GridPtr& grid, const std::function<double(double r)>& f);

    const GridPtr& grid_ptr() const noexcept { return grid_; }
    const ExteriorGrid& grid() const noexcept { return *grid_; }
    const std::vector<double>& values() const noexcept { return values_; }
    double operator()(int i, int j) const noexcept { return values_[grid_->index(i, j)]; }
    std::span<const double> ring(int i) const;

    double max_abs() const;
    /// Largest |value| on the ring r = 1.
    double max_abs_on_boundary() const;

    ScalarField operator-() const;
    ScalarField& operator+=(const ScalarField& other);
    ScalarField& operator-=(const ScalarField& other);
    ScalarField& operator*=(double a);

private:
    GridPtr grid_;
    std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double a, ScalarField f);
/// Pointwise product.
ScalarField operator*(const ScalarField& a, const ScalarField& b);

/// Boundary condition a velocity field is known to satisfy on r = 1.
enum class BoundaryTag { none, no_slip, non_penetration };

/// Velocity in polar components (u_r, u_theta) at every node.
///
/// A tagged field is checked at construction: no_slip requires both
/// components to vanish on r = 1, non_penetration only u_r. The check allows
/// 1e-12 * max(1, max|u|) for round-off.
class VectorField {
public:
    VectorField(GridPtr grid, std::vector<double> u_r, std::vector<double> u_theta,
                BoundaryTag tag = BoundaryTag::none);
    VectorField(const ScalarField& u_r, const ScalarField& u_theta,
                BoundaryTag tag = BoundaryTag::none);

    static VectorField zeros(const GridPtr& grid, BoundaryTag tag = BoundaryTag::none);

    const GridPtr& grid_ptr() const noexcept { return grid_; }
    const ExteriorGrid& grid() const noexcept { return *grid_; }
    const std::vector<double>& u_r() const noexcept { return u_r_; }
    const std::vector<double>& u_theta() const noexcept { return u_theta_; }
    BoundaryTag tag() const noexcept { return tag_; }

    ScalarField radial() const;
    ScalarField azimuthal() const;
    ScalarField cartesian_x() const;
    ScalarField cartesian_y() const;

    double max_abs() const;
    /// Returns a copy re-tagged (and re-validated) with `tag`.
    VectorField with_tag(BoundaryTag tag) const;

private:
    void check_tag() const;

    GridPtr grid_;
    std::vector<double> u_r_;
    std::vector<double> u_theta_;
    BoundaryTag tag_;
};

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(double a, const VectorField& u);

/// Throws MismatchError unless both fields live on grids with the same spec.
void require_same_grid(const ExteriorGrid& a, const ExteriorGrid& b);

}  // namespace sgf
