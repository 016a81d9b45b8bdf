#pragma once

#include <memory>
#include <vector>

#include "sgf/spectral.hpp"

namespace sgf {

/// Resolution and truncation radius of the exterior-of-disk grid.
struct GridSpec {
    int n_r = 0;
    int n_theta = 0;
    double r_max = 0.0;

    bool operator==(const GridSpec&) const = default;
};

/// Log-polar tensor grid on {1 <= r <= r_max}, the exterior of the unit disk
/// truncated at r_max.
///
/// Radial nodes are uniform in s = ln r, angular nodes uniform on [0, 2*pi).
/// Node (i, j) sits at r = r_nodes[i], theta = theta_nodes[j]; nodal arrays are
/// stored ring-major (index i * n_theta + j).
///
/// Quadrature: trapezoid in theta; in s each node carries the exact integral of
/// its piecewise-linear hat function against the Jacobian e^{2s}, so constants
/// integrate exactly to the annulus area.
class ExteriorGrid {
public:
    explicit ExteriorGrid(const GridSpec& spec);

    const GridSpec& spec() const noexcept { return spec_; }
    int n_r() const noexcept { return spec_.n_r; }
    int n_theta() const noexcept { return spec_.n_theta; }
    int size() const noexcept { return spec_.n_r * spec_.n_theta; }
    int index(int i, int j) const noexcept { return i * spec_.n_theta + j; }

    /// Uniform spacing in s.
    double ds() const noexcept { return ds_; }
    double dtheta() const noexcept { return dtheta_; }

    const std::vector<double>& s_nodes() const noexcept { return s_; }
    const std::vector<double>& r_nodes() const noexcept { return r_; }
    const std::vector<double>& theta_nodes() const noexcept { return theta_; }
    const std::vector<double>& cos_theta() const noexcept { return cos_; }
    const std::vector<double>& sin_theta() const noexcept { return sin_; }

    /// Radial factor of the quadrature weight, one per ring (includes e^{2s}).
    const std::vector<double>& radial_weights() const noexcept { return radial_w_; }
    /// Full per-node weights, radial_weights[i] * dtheta.
    std::vector<double> weights() const;
    double weight(int i) const noexcept { return radial_w_[i] * dtheta_; }

    /// Smallest physical spacing between adjacent radial nodes (at r = 1).
    double min_radial_gap() const noexcept { return r_[1] - r_[0]; }
    /// Number of radial cells lying inside {rho <= width} next to the wall.
    int cells_within(double width) const;

    const AngularFft& fft() const noexcept { return *fft_; }

private:
    GridSpec spec_;
    double ds_;
    double dtheta_;
    std::vector<double> s_, r_, theta_, cos_, sin_, radial_w_;
    std::shared_ptr<const AngularFft> fft_;
};

using GridPtr = std::shared_ptr<const ExteriorGrid>;

/// Validates `spec` and builds the grid. Throws DomainError on invalid specs.
GridPtr build_grid(const GridSpec& spec);

/// Throws DomainError unless n_theta is even and >= 8, n_r >= 8, r_max >= 4.
void validate(const GridSpec& spec);

class ScalarField;

/// Distance to the obstacle boundary, rho = r - 1, at every node.
ScalarField rho_field(const GridPtr& grid);

}  // namespace sgf
