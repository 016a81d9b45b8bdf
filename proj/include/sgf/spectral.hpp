#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace sgf {

using Complex = std::complex<double>;

/// Batched real-to-complex transform along theta for every radial ring.
///
/// Layout is ring-major: a nodal array holds n_rings * n_theta doubles, a
/// spectral array holds n_rings * (n_theta / 2 + 1) complex coefficients.
/// Plans are created once; executing them is thread-safe.
class AngularFft {
public:
    AngularFft(int n_rings, int n_theta);
    ~AngularFft();
    AngularFft(const AngularFft&) = delete;
    AngularFft& operator=(const AngularFft&) = delete;

    int n_rings() const noexcept { return n_rings_; }
    int n_theta() const noexcept { return n_theta_; }
    int n_modes() const noexcept { return n_theta_ / 2 + 1; }

    /// Unnormalized forward transform.
    void forward(std::span<const double> nodal, std::span<Complex> spectral) const;
    /// Inverse transform including the 1/n_theta normalization.
    /// `spectral` is left untouched (a scratch copy is made).
    void inverse(std::span<const Complex> spectral, std::span<double> nodal) const;

    std::vector<Complex> forward(std::span<const double> nodal) const;
    std::vector<double> inverse(std::span<const Complex> spectral) const;

private:
    int n_rings_;
    int n_theta_;
    void* plan_forward_ = nullptr;
    void* plan_inverse_ = nullptr;
};

}  // namespace sgf
