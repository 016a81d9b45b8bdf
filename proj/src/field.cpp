#include "sgf/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sgf/errors.hpp"

namespace sgf {

namespace {

void require_finite(const std::vector<double>& v, const char* what)
{
    for (double x : v) {
        if (!std::isfinite(x)) throw NonFiniteError(std::string(what) + " contains NaN or Inf");
    }
}

void require_size(const ExteriorGrid& g, const std::vector<double>& v, const char* what)
{
    if (v.size() != static_cast<size_t>(g.size())) {
        throw DomainError(std::string(what) + ": expected " + std::to_string(g.size()) +
                          " values, got " + std::to_string(v.size()));
    }
}

double max_abs_of(const std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

void require_same_grid(const ExteriorGrid& a, const ExteriorGrid& b)
{
    if (&a != &b && !(a.spec() == b.spec())) throw MismatchError("fields live on different grids");
}

ScalarField::ScalarField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values))
{
    require_size(*grid_, values_, "ScalarField");
    require_finite(values_, "ScalarField");
}

ScalarField ScalarField::zeros(const GridPtr& grid) { return constant(grid, 0.0); }

ScalarField ScalarField::constant(const GridPtr& grid, double value)
{
    return ScalarField(grid, std::vector<double>(static_cast<size_t>(grid->size()), value));
}

ScalarField ScalarField::from_function(const GridPtr& grid,
                                       const std::function<double(double, double)>& f)
{
    std::vector<double> v(static_cast<size_t>(grid->size()));
    for (int i = 0; i < grid->n_r(); ++i) {
        for (int j = 0; j < grid->n_theta(); ++j) {
            v[grid->index(i, j)] = f(grid->r_nodes()[i], grid->theta_nodes()[j]);
        }
    }
    return ScalarField(grid, std::move(v));
}

ScalarField ScalarField::from_radial(const GridPtr& grid, const std::function<double(double)>& f)
{
    std::vector<double> v(static_cast<size_t>(grid->size()));
    for (int i = 0; i < grid->n_r(); ++i) {
        const double value = f(grid->r_nodes()[i]);
        std::fill_n(v.begin() + grid->index(i, 0), grid->n_theta(), value);
    }
    return ScalarField(grid, std::move(v));
}

std::span<const double> ScalarField::ring(int i) const
{
    return std::span<const double>(values_).subspan(grid_->index(i, 0), grid_->n_theta());
}

double ScalarField::max_abs() const { return max_abs_of(values_); }

double ScalarField::max_abs_on_boundary() const
{
    double m = 0.0;
    for (double x : ring(0)) m = std::max(m, std::abs(x));
    return m;
}

ScalarField ScalarField::operator-() const
{
    ScalarField out = *this;
    out *= -1.0;
    return out;
}

ScalarField& ScalarField::operator+=(const ScalarField& other)
{
    require_same_grid(*grid_, *other.grid_);
    for (size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
    require_finite(values_, "ScalarField sum");
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other)
{
    require_same_grid(*grid_, *other.grid_);
    for (size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
    require_finite(values_, "ScalarField difference");
    return *this;
}

ScalarField& ScalarField::operator*=(double a)
{
    for (double& x : values_) x *= a;
    require_finite(values_, "ScalarField scaling");
    return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double a, ScalarField f) { return f *= a; }

ScalarField operator*(const ScalarField& a, const ScalarField& b)
{
    require_same_grid(a.grid(), b.grid());
    std::vector<double> v(a.values().size());
    for (size_t k = 0; k < v.size(); ++k) v[k] = a.values()[k] * b.values()[k];
    return ScalarField(a.grid_ptr(), std::move(v));
}

VectorField::VectorField(GridPtr grid, std::vector<double> u_r, std::vector<double> u_theta,
                         BoundaryTag tag)
    : grid_(std::move(grid)), u_r_(std::move(u_r)), u_theta_(std::move(u_theta)), tag_(tag)
{
    require_size(*grid_, u_r_, "VectorField.u_r");
    require_size(*grid_, u_theta_, "VectorField.u_theta");
    require_finite(u_r_, "VectorField.u_r");
    require_finite(u_theta_, "VectorField.u_theta");
    check_tag();
}

VectorField::VectorField(const ScalarField& u_r, const ScalarField& u_theta, BoundaryTag tag)
    : VectorField(u_r.grid_ptr(), u_r.values(), u_theta.values(), tag)
{
    require_same_grid(u_r.grid(), u_theta.grid());
}

VectorField VectorField::zeros(const GridPtr& grid, BoundaryTag tag)
{
    const auto n = static_cast<size_t>(grid->size());
    return VectorField(grid, std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), tag);
}

void VectorField::check_tag() const
{
    if (tag_ == BoundaryTag::none) return;
    const double tol = 1e-12 * std::max(1.0, max_abs());
    const int nt = grid_->n_theta();
    for (int j = 0; j < nt; ++j) {
        if (std::abs(u_r_[j]) > tol) {
            throw DomainError("velocity violates its boundary tag: u_r = " + std::to_string(u_r_[j]) +
                              " on r = 1");
        }
        if (tag_ == BoundaryTag::no_slip && std::abs(u_theta_[j]) > tol) {
            throw DomainError("velocity violates no-slip: u_theta = " + std::to_string(u_theta_[j]) +
                              " on r = 1");
        }
    }
}

ScalarField VectorField::radial() const { return ScalarField(grid_, u_r_); }
ScalarField VectorField::azimuthal() const { return ScalarField(grid_, u_theta_); }

ScalarField VectorField::cartesian_x() const
{
    std::vector<double> v(u_r_.size());
    const auto& c = grid_->cos_theta();
    const auto& s = grid_->sin_theta();
    for (int i = 0; i < grid_->n_r(); ++i) {
        for (int j = 0; j < grid_->n_theta(); ++j) {
            const int k = grid_->index(i, j);
            v[k] = c[j] * u_r_[k] - s[j] * u_theta_[k];
        }
    }
    return ScalarField(grid_, std::move(v));
}

ScalarField VectorField::cartesian_y() const
{
    std::vector<double> v(u_r_.size());
    const auto& c = grid_->cos_theta();
    const auto& s = grid_->sin_theta();
    for (int i = 0; i < grid_->n_r(); ++i) {
        for (int j = 0; j < grid_->n_theta(); ++j) {
            const int k = grid_->index(i, j);
            v[k] = s[j] * u_r_[k] + c[j] * u_theta_[k];
        }
    }
    return ScalarField(grid_, std::move(v));
}

double VectorField::max_abs() const { return std::max(max_abs_of(u_r_), max_abs_of(u_theta_)); }

VectorField VectorField::with_tag(BoundaryTag tag) const
{
    return VectorField(grid_, u_r_, u_theta_, tag);
}

namespace {

VectorField combine(const VectorField& a, const VectorField& b, double sign)
{
    require_same_grid(a.grid(), b.grid());
    std::vector<double> ur(a.u_r().size()), ut(a.u_theta().size());
    for (size_t k = 0; k < ur.size(); ++k) {
        ur[k] = a.u_r()[k] + sign * b.u_r()[k];
        ut[k] = a.u_theta()[k] + sign * b.u_theta()[k];
    }
    return VectorField(a.grid_ptr(), std::move(ur), std::move(ut));
}

}  // namespace

VectorField operator+(const VectorField& a, const VectorField& b) { return combine(a, b, 1.0); }
VectorField operator-(const VectorField& a, const VectorField& b) { return combine(a, b, -1.0); }

VectorField operator*(double a, const VectorField& u)
{
    std::vector<double> ur(u.u_r()), ut(u.u_theta());
    for (double& x : ur) x *= a;
    for (double& x : ut) x *= a;
    return VectorField(u.grid_ptr(), std::move(ur), std::move(ut));
}

}  // namespace sgf
