#include "sgf/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace sgf {

namespace {

// FFTW planning and plan destruction are not thread-safe; execution is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

}  // namespace

AngularFft::AngularFft(int n_rings, int n_theta) : n_rings_(n_rings), n_theta_(n_theta)
{
    const int n_modes = n_theta / 2 + 1;
    std::vector<double> real(static_cast<size_t>(n_rings) * n_theta);
    std::vector<Complex> spec(static_cast<size_t>(n_rings) * n_modes);
    auto* cplx = reinterpret_cast<fftw_complex*>(spec.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    int n[] = {n_theta};

    std::lock_guard lock(planner_mutex());
    plan_forward_ = fftw_plan_many_dft_r2c(1, n, n_rings, real.data(), nullptr, 1, n_theta, cplx,
                                           nullptr, 1, n_modes, flags);
    plan_inverse_ = fftw_plan_many_dft_c2r(1, n, n_rings, cplx, nullptr, 1, n_modes, real.data(),
                                           nullptr, 1, n_theta, flags);
    if (!plan_forward_ || !plan_inverse_) {
        throw std::runtime_error("FFTW planning failed");
    }
}

AngularFft::~AngularFft()
{
    std::lock_guard lock(planner_mutex());
    if (plan_forward_) fftw_destroy_plan(static_cast<fftw_plan>(plan_forward_));
    if (plan_inverse_) fftw_destroy_plan(static_cast<fftw_plan>(plan_inverse_));
}

void AngularFft::forward(std::span<const double> nodal, std::span<Complex> spectral) const
{
    fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_forward_), const_cast<double*>(nodal.data()),
                         reinterpret_cast<fftw_complex*>(spectral.data()));
}

void AngularFft::inverse(std::span<const Complex> spectral, std::span<double> nodal) const
{
    // c2r destroys its input.
    std::vector<Complex> scratch(spectral.begin(), spectral.end());
    fftw_execute_dft_c2r(static_cast<fftw_plan>(plan_inverse_),
                         reinterpret_cast<fftw_complex*>(scratch.data()), nodal.data());
    const double scale = 1.0 / n_theta_;
    std::transform(nodal.begin(), nodal.end(), nodal.begin(), [scale](double v) { return v * scale; });
}

std::vector<Complex> AngularFft::forward(std::span<const double> nodal) const
{
    std::vector<Complex> out(static_cast<size_t>(n_rings_) * n_modes());
    forward(nodal, out);
    return out;
}

std::vector<double> AngularFft::inverse(std::span<const Complex> spectral) const
{
    std::vector<double> out(static_cast<size_t>(n_rings_) * n_theta_);
    inverse(spectral, out);
    return out;
}

}  // namespace sgf
