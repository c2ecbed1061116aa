// SPDX-License-Identifier: Apache-2.0

#ifndef LEAKTREND_REGRESSION_HPP
#define LEAKTREND_REGRESSION_HPP

#include <cstddef>
#include <cstdint>
#include <optional>

#include "leaktrend/core.hpp"

namespace leaktrend {

/// Half-open index range [begin, end) into a TimeSeries.
struct IndexRange {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t count() const { return end - begin; }
    bool operator==(const IndexRange&) const = default;
};

/// Fitted line over a window. The abscissa is seconds since the first
/// timestamp of the window, so `intercept` is the modelled value at
/// `t_origin` and predictions use elapsed seconds from there.
struct FitResult {
    double slope = 0.0;     // percent per second
    double intercept = 0.0; // percent at t_origin
    double r2 = 0.0;
    IndexRange window;
    std::int64_t t_origin = 0;
    std::optional<double> time_to_threshold_s;

    double value_at(std::int64_t t) const {
        return intercept + slope * static_cast<double>(t - t_origin);
    }
};

/// Ordinary least squares over ts.points[window]. r2 is 1 - SSres/SStot;
/// windows with no value variance get r2 = 0 so flat segments never look
/// like good fits.
///
/// Throws WindowTooSmall for fewer than 2 points and DegenerateTime when
/// all timestamps coincide.
FitResult fit_line(const TimeSeries& ts, IndexRange window);

/// Extrapolated seconds from t_last until the fitted line reaches U.
/// 0 when the line is already at or above U, empty when it never gets
/// there (non-positive slope below U).
std::optional<double> time_to_threshold(const FitResult& fit, std::int64_t t_last, double threshold_u);

} // namespace leaktrend

#endif
