// SPDX-License-Identifier: Apache-2.0

#include "leaktrend/regression.hpp"

#include <cmath>

namespace leaktrend {

FitResult fit_line(const TimeSeries& ts, IndexRange window) {
    if (window.count() < 2 || window.end > ts.points.size())
        throw WindowTooSmall("fit_line needs at least 2 points in range");

    const std::int64_t t0 = ts.points[window.begin].timestamp;

    // Mean-centered form of the least squares solution; x in seconds from
    // the window start keeps the arithmetic well conditioned against
    // epoch-scale timestamps.
    double mean_x = 0, mean_y = 0;
    const double n = static_cast<double>(window.count());
    for (std::size_t i = window.begin; i < window.end; ++i) {
        mean_x += static_cast<double>(ts.points[i].timestamp - t0);
        mean_y += ts.points[i].value;
    }
    mean_x /= n;
    mean_y /= n;

    double sxx = 0, sxy = 0;
    for (std::size_t i = window.begin; i < window.end; ++i) {
        const double dx = static_cast<double>(ts.points[i].timestamp - t0) - mean_x;
        sxx += dx * dx;
        sxy += dx * (ts.points[i].value - mean_y);
    }
    if (sxx == 0.0)
        throw DegenerateTime("fit_line needs at least two distinct timestamps");

    FitResult fit;
    fit.window = window;
    fit.t_origin = t0;
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;

    double ss_res = 0, ss_tot = 0;
    for (std::size_t i = window.begin; i < window.end; ++i) {
        const double x = static_cast<double>(ts.points[i].timestamp - t0);
        const double e = ts.points[i].value - (fit.intercept + fit.slope * x);
        ss_res += e * e;
        const double d = ts.points[i].value - mean_y;
        ss_tot += d * d;
    }
    fit.r2 = ss_tot < 1e-12 ? 0.0 : 1.0 - ss_res / ss_tot;
    return fit;
}

std::optional<double> time_to_threshold(const FitResult& fit, std::int64_t t_last, double threshold_u) {
    const double v = fit.value_at(t_last);
    if (v >= threshold_u)
        return 0.0;
    if (fit.slope > 0.0)
        return (threshold_u - v) / fit.slope;
    return std::nullopt;
}

} // namespace leaktrend
