#include "sgf/operators.hpp"

#include <cmath>

#include "sgf/errors.hpp"

namespace sgf {

namespace {

using Values = std::vector<double>;

// Multiplies each mode m by (i m)^order; odd orders zero the Nyquist mode.
Values angular_derivative(const ExteriorGrid& g, const Values& f, int order)
{
    const AngularFft& fft = g.fft();
    std::vector<Complex> spec = fft.forward(f);
    const int nm = fft.n_modes();
    const int nyquist = g.n_theta() / 2;
    for (int i = 0; i < g.n_r(); ++i) {
        for (int m = 0; m < nm; ++m) {
            Complex& c = spec[static_cast<size_t>(i) * nm + m];
            if (order % 2 == 1 && m == nyquist) {
                c = 0.0;
                continue;
            }
            Complex factor = 1.0;
            for (int p = 0; p < order; ++p) factor *= Complex(0.0, m);
            c *= factor;
        }
    }
    return fft.inverse(spec);
}

Values radial_first(const ExteriorGrid& g, const Values& f)
{
    const int nr = g.n_r(), nt = g.n_theta();
    const double inv2h = 1.0 / (2.0 * g.ds());
    Values out(f.size());
    for (int j = 0; j < nt; ++j) {
        out[g.index(0, j)] =
            (-3.0 * f[g.index(0, j)] + 4.0 * f[g.index(1, j)] - f[g.index(2, j)]) * inv2h;
        out[g.index(nr - 1, j)] = (3.0 * f[g.index(nr - 1, j)] - 4.0 * f[g.index(nr - 2, j)] +
                                   f[g.index(nr - 3, j)]) *
                                  inv2h;
    }
    for (int i = 1; i + 1 < nr; ++i) {
        for (int j = 0; j < nt; ++j) {
            out[g.index(i, j)] = (f[g.index(i + 1, j)] - f[g.index(i - 1, j)]) * inv2h;
        }
    }
    return out;
}

Values radial_second(const ExteriorGrid& g, const Values& f)
{
    const int nr = g.n_r(), nt = g.n_theta();
    const double inv_h2 = 1.0 / (g.ds() * g.ds());
    Values out(f.size());
    for (int j = 0; j < nt; ++j) {
        out[g.index(0, j)] = (2.0 * f[g.index(0, j)] - 5.0 * f[g.index(1, j)] +
                              4.0 * f[g.index(2, j)] - f[g.index(3, j)]) *
                             inv_h2;
        out[g.index(nr - 1, j)] = (2.0 * f[g.index(nr - 1, j)] - 5.0 * f[g.index(nr - 2, j)] +
                                   4.0 * f[g.index(nr - 3, j)] - f[g.index(nr - 4, j)]) *
                                  inv_h2;
    }
    for (int i = 1; i + 1 < nr; ++i) {
        for (int j = 0; j < nt; ++j) {
            out[g.index(i, j)] =
                (f[g.index(i + 1, j)] - 2.0 * f[g.index(i, j)] + f[g.index(i - 1, j)]) * inv_h2;
        }
    }
    return out;
}

// Multiplies ring i by factor(r_i).
void scale_rings(const ExteriorGrid& g, Values& f, const std::function<double(double)>& factor)
{
    for (int i = 0; i < g.n_r(); ++i) {
        const double c = factor(g.r_nodes()[i]);
        for (int j = 0; j < g.n_theta(); ++j) f[g.index(i, j)] *= c;
    }
}

Values lowpass(const ExteriorGrid& g, const Values& f, int max_mode)
{
    const AngularFft& fft = g.fft();
    std::vector<Complex> spec = fft.forward(f);
    const int nm = fft.n_modes();
    for (int i = 0; i < g.n_r(); ++i) {
        for (int m = max_mode + 1; m < nm; ++m) spec[static_cast<size_t>(i) * nm + m] = 0.0;
    }
    return fft.inverse(spec);
}

double weighted_sum_of_squares(const ExteriorGrid& g, const Values& f,
                               const std::function<bool(double)>* keep)
{
    std::vector<double> ring_sums(g.n_r(), 0.0);
    std::vector<double> sq(g.n_theta());
    for (int i = 0; i < g.n_r(); ++i) {
        if (keep && !(*keep)(g.r_nodes()[i])) continue;
        for (int j = 0; j < g.n_theta(); ++j) {
            const double v = f[g.index(i, j)];
            sq[j] = v * v;
        }
        ring_sums[i] = pairwise_sum(sq) * g.weight(i);
    }
    return pairwise_sum(ring_sums);
}

}  // namespace

double pairwise_sum(std::span<const double> v)
{
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

ScalarField d_theta(const ScalarField& f)
{
    return ScalarField(f.grid_ptr(), angular_derivative(f.grid(), f.values(), 1));
}

ScalarField d_theta2(const ScalarField& f)
{
    return ScalarField(f.grid_ptr(), angular_derivative(f.grid(), f.values(), 2));
}

ScalarField d_s(const ScalarField& f) { return ScalarField(f.grid_ptr(), radial_first(f.grid(), f.values())); }

ScalarField d_ss(const ScalarField& f)
{
    return ScalarField(f.grid_ptr(), radial_second(f.grid(), f.values()));
}

ScalarField d_r(const ScalarField& f)
{
    Values v = radial_first(f.grid(), f.values());
    scale_rings(f.grid(), v, [](double r) { return 1.0 / r; });
    return ScalarField(f.grid_ptr(), std::move(v));
}

CartesianGradient cartesian_gradient(const ScalarField& f)
{
    const ExteriorGrid& g = f.grid();
    const Values fr = radial_first(g, f.values());
    const Values ft = angular_derivative(g, f.values(), 1);
    Values dx(fr.size()), dy(fr.size());
    for (int i = 0; i < g.n_r(); ++i) {
        const double inv_r = 1.0 / g.r_nodes()[i];
        for (int j = 0; j < g.n_theta(); ++j) {
            const int k = g.index(i, j);
            const double c = g.cos_theta()[j], s = g.sin_theta()[j];
            // fr holds d/ds; d/dr = d/ds / r.
            dx[k] = inv_r * (c * fr[k] - s * ft[k]);
            dy[k] = inv_r * (s * fr[k] + c * ft[k]);
        }
    }
    return {ScalarField(f.grid_ptr(), std::move(dx)), ScalarField(f.grid_ptr(), std::move(dy))};
}

VectorField perp_grad(const ScalarField& psi, BoundaryTag tag)
{
    const ExteriorGrid& g = psi.grid();
    Values ur = angular_derivative(g, psi.values(), 1);
    scale_rings(g, ur, [](double r) { return -1.0 / r; });
    Values ut = radial_first(g, psi.values());
    scale_rings(g, ut, [](double r) { return 1.0 / r; });
    return VectorField(psi.grid_ptr(), std::move(ur), std::move(ut), tag);
}

ScalarField curl_perp(const VectorField& u)
{
    const ExteriorGrid& g = u.grid();
    // (1/r) d_r (r u_t) = e^{-2s} d_s (r u_t)
    Values r_ut = u.u_theta();
    scale_rings(g, r_ut, [](double r) { return r; });
    Values w = radial_first(g, r_ut);
    scale_rings(g, w, [](double r) { return 1.0 / (r * r); });
    Values dur = angular_derivative(g, u.u_r(), 1);
    for (int i = 0; i < g.n_r(); ++i) {
        const double inv_r = 1.0 / g.r_nodes()[i];
        for (int j = 0; j < g.n_theta(); ++j) w[g.index(i, j)] -= inv_r * dur[g.index(i, j)];
    }
    return ScalarField(u.grid_ptr(), std::move(w));
}

ScalarField divergence(const VectorField& u)
{
    const ExteriorGrid& g = u.grid();
    Values r_ur = u.u_r();
    scale_rings(g, r_ur, [](double r) { return r; });
    Values d = radial_first(g, r_ur);
    scale_rings(g, d, [](double r) { return 1.0 / (r * r); });
    Values dut = angular_derivative(g, u.u_theta(), 1);
    for (int i = 0; i < g.n_r(); ++i) {
        const double inv_r = 1.0 / g.r_nodes()[i];
        for (int j = 0; j < g.n_theta(); ++j) d[g.index(i, j)] += inv_r * dut[g.index(i, j)];
    }
    return ScalarField(u.grid_ptr(), std::move(d));
}

ScalarField laplacian(const ScalarField& f)
{
    const ExteriorGrid& g = f.grid();
    Values out = radial_second(g, f.values());
    const Values ftt = angular_derivative(g, f.values(), 2);
    for (size_t k = 0; k < out.size(); ++k) out[k] += ftt[k];
    scale_rings(g, out, [](double r) { return 1.0 / (r * r); });
    return ScalarField(f.grid_ptr(), std::move(out));
}

ScalarField advect(const VectorField& u, const ScalarField& q, bool dealias)
{
    require_same_grid(u.grid(), q.grid());
    const ExteriorGrid& g = q.grid();
    Values qv = q.values(), ur = u.u_r(), ut = u.u_theta();
    if (dealias) {
        const int cut = g.n_theta() / 3;
        qv = lowpass(g, qv, cut);
        ur = lowpass(g, ur, cut);
        ut = lowpass(g, ut, cut);
    }
    const Values qs = radial_first(g, qv);
    const Values qt = angular_derivative(g, qv, 1);
    Values out(qv.size());
    for (int i = 0; i < g.n_r(); ++i) {
        const double inv_r = 1.0 / g.r_nodes()[i];
        for (int j = 0; j < g.n_theta(); ++j) {
            const int k = g.index(i, j);
            out[k] = inv_r * (ur[k] * qs[k] + ut[k] * qt[k]);
        }
    }
    return ScalarField(q.grid_ptr(), std::move(out));
}

double integrate(const ScalarField& f)
{
    const ExteriorGrid& g = f.grid();
    std::vector<double> ring_sums(g.n_r());
    for (int i = 0; i < g.n_r(); ++i) ring_sums[i] = pairwise_sum(f.ring(i)) * g.weight(i);
    return pairwise_sum(ring_sums);
}

double inner(const ScalarField& f, const ScalarField& h)
{
    return integrate(f * h);
}

double norm_l2(const ScalarField& f)
{
    return std::sqrt(weighted_sum_of_squares(f.grid(), f.values(), nullptr));
}

double norm_l2(const VectorField& u)
{
    const ExteriorGrid& g = u.grid();
    return std::sqrt(weighted_sum_of_squares(g, u.u_r(), nullptr) +
                     weighted_sum_of_squares(g, u.u_theta(), nullptr));
}

double norm_l2_where(const ScalarField& f, const std::function<bool(double)>& keep)
{
    return std::sqrt(weighted_sum_of_squares(f.grid(), f.values(), &keep));
}

double norm_l2_where(const VectorField& u, const std::function<bool(double)>& keep)
{
    const ExteriorGrid& g = u.grid();
    return std::sqrt(weighted_sum_of_squares(g, u.u_r(), &keep) +
                     weighted_sum_of_squares(g, u.u_theta(), &keep));
}

namespace {

double sum_sq_derivatives(const ScalarField& f, int k)
{
    if (k == 0) {
        const double n = norm_l2(f);
        return n * n;
    }
    const CartesianGradient grad = cartesian_gradient(f);
    return sum_sq_derivatives(grad.dx, k - 1) + sum_sq_derivatives(grad.dy, k - 1);
}

void check_order(int k)
{
    if (k < 1 || k > 3) {
        throw DomainError("seminorm order k must be in 1..3 (got " + std::to_string(k) + ")");
    }
}

}  // namespace

double seminorm_hk(const ScalarField& f, int k)
{
    check_order(k);
    return std::sqrt(sum_sq_derivatives(f, k));
}

double seminorm_hk(const VectorField& u, int k)
{
    check_order(k);
    return std::sqrt(sum_sq_derivatives(u.cartesian_x(), k) + sum_sq_derivatives(u.cartesian_y(), k));
}

std::vector<Complex> angular_spectrum(const ScalarField& f) { return f.grid().fft().forward(f.values()); }

ScalarField from_angular_spectrum(const GridPtr& grid, std::span<const Complex> spectrum)
{
    return ScalarField(grid, grid->fft().inverse(spectrum));
}

}  // namespace sgf
