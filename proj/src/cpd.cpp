// SPDX-License-Identifier: Apache-2.0

#include "leaktrend/cpd.hpp"

#include <cmath>

namespace leaktrend {

ChangePointSet change_points(const TimeSeries& ts, double z_threshold, std::int64_t min_spacing_s) {
    const std::size_t n = ts.points.size();
    if (n == 0)
        throw EmptySeries("change_points on empty series");

    ChangePointSet cps;
    if (n == 1) {
        cps.indexes.push_back(0);
        return cps;
    }

    std::vector<double> abs_diff(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        abs_diff[i] = std::fabs(ts.points[i + 1].value - ts.points[i].value);

    double mean = 0;
    for (double a : abs_diff)
        mean += a;
    mean /= static_cast<double>(abs_diff.size());

    double var = 0;
    for (double a : abs_diff)
        var += (a - mean) * (a - mean);
    var /= static_cast<double>(abs_diff.size()); // population std
    const double sd = std::sqrt(var);

    // Greedy earliest-first spacing filter; index 0 is the initial anchor.
    std::vector<std::size_t> kept;
    if (sd >= 1e-12) {
        std::size_t last_kept = 0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if ((abs_diff[i] - mean) / sd <= z_threshold)
                continue;
            const std::size_t cand = i + 1;
            if (ts.points[cand].timestamp - ts.points[last_kept].timestamp >= min_spacing_s) {
                kept.push_back(cand);
                last_kept = cand;
            }
        }
    }

    cps.indexes.push_back(0);
    for (std::size_t k : kept) {
        if (k != 0 && k != n - 1)
            cps.indexes.push_back(k);
    }
    cps.indexes.push_back(n - 1);
    return cps;
}

} // namespace leaktrend
