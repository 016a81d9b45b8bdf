#include "sgf/rate_fit.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

#include "sgf/errors.hpp"

namespace sgf {

RateFit fit_rate(const std::vector<std::pair<double, double>>& points)
{
    if (points.size() < 3) {
        throw DegenerateFit("rate fit needs at least 3 points (got " + std::to_string(points.size()) + ")");
    }
    for (const auto& [x, y] : points) {
        if (!(x > 0.0) || !std::isfinite(x)) throw DegenerateFit("rate fit: x must be positive and finite");
        if (!(y > 0.0) || !std::isfinite(y)) {
            throw DegenerateFit("rate fit: nonpositive value y = " + std::to_string(y) + " at x = " +
                                std::to_string(x));
        }
    }
    for (size_t a = 0; a < points.size(); ++a) {
        for (size_t b = a + 1; b < points.size(); ++b) {
            if (points[a].first == points[b].first) throw DegenerateFit("rate fit: repeated x value");
        }
    }

    const double n = static_cast<double>(points.size());
    double sx = 0, sy = 0;
    for (const auto& [x, y] : points) {
        sx += std::log(x);
        sy += std::log(y);
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : points) {
        const double dx = std::log(x) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(y) - my);
    }
    RateFit fit;
    fit.slope = sxy / sxx;
    const double intercept = my - fit.slope * mx;
    fit.constant = std::exp(intercept);
    for (const auto& [x, y] : points) {
        fit.residual = std::max(fit.residual, std::abs(std::log(y) - (intercept + fit.slope * std::log(x))));
    }
    fit.points = points;
    return fit;
}

std::string rate_fit_json(const std::string& quantity, const RateFit& fit)
{
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& [x, y] : fit.points) pts.push_back({x, y});
    nlohmann::json j = {{"quantity", quantity},
                        {"slope", fit.slope},
                        {"constant", fit.constant},
                        {"residual", fit.residual},
                        {"points", pts}};
    return j.dump();
}

}  // namespace sgf
