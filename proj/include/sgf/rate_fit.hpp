#pragma once

#include <string>
#include <utility>
#include <vector>

namespace sgf {

/// Least-squares power law y = constant * x^slope fitted in log-log space.
struct RateFit {
    double slope = 0.0;
    double constant = 0.0;
    /// Largest absolute deviation |ln y - (ln constant + slope ln x)|.
    double residual = 0.0;
    std::vector<std::pair<double, double>> points;
};

/// Requires at least three points with distinct positive x and positive y;
/// throws DegenerateFit otherwise.
RateFit fit_rate(const std::vector<std::pair<double, double>>& points);

/// One JSON object {quantity, slope, constant, residual, points}.
std::string rate_fit_json(const std::string& quantity, const RateFit& fit);

}  // namespace sgf
