// SPDX-License-Identifier: Apache-2.0

#ifndef LEAKTREND_TESTS_HELPERS_HPP
#define LEAKTREND_TESTS_HELPERS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "leaktrend/core.hpp"

namespace helpers {

inline leaktrend::TimeSeries make_series(std::vector<std::pair<std::int64_t, double>> pts,
                                         std::string id = "test") {
    leaktrend::TimeSeries ts;
    ts.id = std::move(id);
    for (auto [t, v] : pts)
        ts.points.push_back({t, v});
    return ts;
}

// Evenly spaced series from a value function of t (seconds).
inline leaktrend::TimeSeries sample_fn(std::int64_t t_begin, std::int64_t t_end, std::int64_t step,
                                       const std::function<double(std::int64_t)>& fn,
                                       std::string id = "test") {
    leaktrend::TimeSeries ts;
    ts.id = std::move(id);
    for (std::int64_t t = t_begin; t <= t_end; t += step)
        ts.points.push_back({t, fn(t)});
    return ts;
}

// Piecewise-linear value over breakpoints (t, v); linear in between,
// clamped to the last value beyond the ends.
struct Polyline {
    std::vector<std::pair<std::int64_t, double>> knots;

    double operator()(std::int64_t t) const {
        if (t <= knots.front().first)
            return knots.front().second;
        for (std::size_t i = 1; i < knots.size(); ++i) {
            if (t <= knots[i].first) {
                const auto [t0, v0] = knots[i - 1];
                const auto [t1, v1] = knots[i];
                const double frac = static_cast<double>(t - t0) / static_cast<double>(t1 - t0);
                return v0 + frac * (v1 - v0);
            }
        }
        return knots.back().second;
    }
};

constexpr std::int64_t kMinute = 60;
constexpr std::int64_t kHour = 3600;
constexpr std::int64_t kDay = 86400;

} // namespace helpers

#endif
