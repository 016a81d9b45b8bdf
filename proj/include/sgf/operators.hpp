#pragma once

#include <functional>
#include <span>

#include "sgf/field.hpp"

namespace sgf {

// Derivatives in log-polar form. Angular derivatives are spectral (the
// Nyquist coefficient is dropped for odd orders); radial derivatives are
// second-order centered differences in s = ln r with second-order one-sided
// stencils on the first and last ring.

ScalarField d_theta(const ScalarField& f);
ScalarField d_theta2(const ScalarField& f);
ScalarField d_s(const ScalarField& f);
ScalarField d_ss(const ScalarField& f);
/// d/dr = e^{-s} d/ds.
ScalarField d_r(const ScalarField& f);

struct CartesianGradient {
    ScalarField dx;
    ScalarField dy;
};

/// (d/dx, d/dy) through d/dx = cos(t) d/dr - sin(t)/r d/dt and its partner.
CartesianGradient cartesian_gradient(const ScalarField& f);

/// u = (-d_y psi, d_x psi) in polar components: u_r = -(1/r) d_theta psi, u_theta = d_r psi.
VectorField perp_grad(const ScalarField& psi, BoundaryTag tag = BoundaryTag::none);

/// w = -d_y u_x + d_x u_y = (1/r) (d_r (r u_theta) - d_theta u_r).
ScalarField curl_perp(const VectorField& u);

/// (1/r) (d_r (r u_r) + d_theta u_theta).
ScalarField divergence(const VectorField& u);

/// e^{-2s} (d_ss f + d_thetatheta f).
ScalarField laplacian(const ScalarField& f);

/// u . grad q = u_r d_r q + (u_theta / r) d_theta q.
/// With `dealias`, angular modes above n_theta / 3 are removed from the
/// factors before the product is formed.
ScalarField advect(const VectorField& u, const ScalarField& q, bool dealias = false);

/// Sum of `v` in a fixed pairwise order (independent of threading).
double pairwise_sum(std::span<const double> v);

/// Discrete integral over the truncated domain.
double integrate(const ScalarField& f);
double inner(const ScalarField& f, const ScalarField& g);

double norm_l2(const ScalarField& f);
double norm_l2(const VectorField& u);

/// L2 norm restricted to the rings whose radius satisfies `keep`.
double norm_l2_where(const ScalarField& f, const std::function<bool(double r)>& keep);
double norm_l2_where(const VectorField& u, const std::function<bool(double r)>& keep);

/// ||D^k f||: k nested Cartesian first-derivative stencils, all 2^k ordered
/// derivative sequences summed in quadrature. Throws DomainError unless 1 <= k <= 3.
double seminorm_hk(const ScalarField& f, int k);
/// Same over the Cartesian components of u.
double seminorm_hk(const VectorField& u, int k);

/// Angular Fourier coefficients of f, one block of n_theta/2+1 per ring.
std::vector<Complex> angular_spectrum(const ScalarField& f);
ScalarField from_angular_spectrum(const GridPtr& grid, std::span<const Complex> spectrum);

}  // namespace sgf
