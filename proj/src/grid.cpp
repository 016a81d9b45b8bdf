#include "sgf/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sgf/errors.hpp"
#include "sgf/field.hpp"

namespace sgf {

namespace {

// Integrals of the two halves of a hat function of width h against e^{2s},
// normalized by e^{2 s_left}:  rising half  (1/h) int_0^h t e^{2t} dt,
//                              falling half (1/h) int_0^h (h - t) e^{2t} dt.
double rising_half(double h)
{
    const double a = 2.0;
    const double ah = a * h;
    return (ah * std::exp(ah) - std::expm1(ah)) / (a * a * h);
}

double falling_half(double h)
{
    const double a = 2.0;
    const double ah = a * h;
    double tail;
    if (ah < 1e-2) {
        // expm1(x) - x by series to avoid cancellation
        tail = ah * ah * (0.5 + ah * (1.0 / 6.0 + ah * (1.0 / 24.0 + ah * (1.0 / 120.0 + ah / 720.0))));
    } else {
        tail = std::expm1(ah) - ah;
    }
    return tail / (a * a * h);
}

}  // namespace

void validate(const GridSpec& spec)
{
    if (spec.n_r < 8) {
        throw DomainError("grid.n_r must be >= 8 (got " + std::to_string(spec.n_r) + ")");
    }
    if (spec.n_theta < 8 || spec.n_theta % 2 != 0) {
        throw DomainError("grid.n_theta must be even and >= 8 (got " + std::to_string(spec.n_theta) +
                          ")");
    }
    if (!(spec.r_max > 1.0)) {
        throw DomainError("grid.r_max must exceed 1 (got " + std::to_string(spec.r_max) + ")");
    }
    if (!(spec.r_max >= 4.0)) {
        throw DomainError("grid.r_max must be >= 4 (got " + std::to_string(spec.r_max) + ")");
    }
}

ExteriorGrid::ExteriorGrid(const GridSpec& spec) : spec_(spec)
{
    validate(spec);
    const int nr = spec.n_r;
    const int nt = spec.n_theta;
    const double s_max = std::log(spec.r_max);
    ds_ = s_max / (nr - 1);
    dtheta_ = 2.0 * std::numbers::pi / nt;

    s_.resize(nr);
    r_.resize(nr);
    for (int i = 0; i < nr; ++i) {
        s_[i] = i * ds_;
        r_[i] = std::exp(s_[i]);
    }
    s_.back() = s_max;
    r_.front() = 1.0;
    r_.back() = spec.r_max;

    theta_.resize(nt);
    cos_.resize(nt);
    sin_.resize(nt);
    for (int j = 0; j < nt; ++j) {
        theta_[j] = j * dtheta_;
        cos_[j] = std::cos(theta_[j]);
        sin_[j] = std::sin(theta_[j]);
    }

    const double up = rising_half(ds_);
    const double down = falling_half(ds_);
    radial_w_.assign(nr, 0.0);
    for (int i = 0; i + 1 < nr; ++i) {
        const double e = std::exp(2.0 * s_[i]);
        radial_w_[i] += e * down;
        radial_w_[i + 1] += e * up;
    }

    fft_ = std::make_shared<const AngularFft>(nr, nt);
}

std::vector<double> ExteriorGrid::weights() const
{
    std::vector<double> w(static_cast<size_t>(size()));
    for (int i = 0; i < n_r(); ++i) {
        for (int j = 0; j < n_theta(); ++j) w[index(i, j)] = radial_w_[i] * dtheta_;
    }
    return w;
}

int ExteriorGrid::cells_within(double width) const
{
    int cells = 0;
    for (int i = 1; i < n_r(); ++i) {
        if (r_[i] - 1.0 <= width * (1.0 + 1e-12)) ++cells;
    }
    return cells;
}

GridPtr build_grid(const GridSpec& spec)
{
    return std::make_shared<const ExteriorGrid>(spec);
}

ScalarField rho_field(const GridPtr& grid)
{
    return ScalarField::from_radial(grid, [](double r) { return r - 1.0; });
}

}  // namespace sgf
