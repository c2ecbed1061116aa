// SPDX-License-Identifier: Apache-2.0

#ifndef LEAKTREND_DETECTORS_HPP
#define LEAKTREND_DETECTORS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "leaktrend/core.hpp"
#include "leaktrend/regression.hpp"

namespace leaktrend {

struct DetectorConfig {
    double threshold_u = 100.0;                    // utilization ceiling, percent
    std::int64_t critical_time_s = 7 * 86400;      // max extrapolated time to reach it
    double r2_min = 0.8;                           // goodness-of-fit gate
    std::int64_t w_min_s = 6 * 3600;               // minimum trend duration
    std::int64_t w_max_s = 7 * 86400;              // largest backward window
    double cpd_z = 3.0;                            // change-point z-score threshold
    std::int64_t cpd_min_spacing_s = 6 * 3600;     // distance between change points
};

/// Per-observation verdict over the analyzed series. Anomalous indexes,
/// when any, form one contiguous window ending at the last observation.
struct AnomalyMask {
    std::vector<bool> flags;

    bool any() const;
    /// First flagged index, or size() when the mask is all-false.
    std::size_t first_flagged() const;

    bool operator==(const AnomalyMask&) const = default;
};

/// A (duration, slope) summary of one qualifying fitted line.
struct Trend {
    double duration_s = 0.0;
    double slope_pct_per_s = 0.0;

    bool operator==(const Trend&) const = default;
};

/// Training output consumed read-only at detection time.
struct TrendStore {
    std::vector<Trend> trends;
    double d_max_s = 0.0;
    double s_max_pct_per_s = 0.0;
    double v_max_pct = 0.0; // maximum observed training value

    bool operator==(const TrendStore&) const = default;
};

void to_json(nlohmann::json& j, const Trend& t);
void from_json(const nlohmann::json& j, Trend& t);
void to_json(nlohmann::json& j, const TrendStore& s);
void from_json(const nlohmann::json& j, TrendStore& s);

/// Backward regression: scans suffix windows ending at the last
/// observation, one observation longer at a time, between w_min and
/// min(series span, w_max). Every window passing the r2 and
/// time-to-threshold gates is marked, so the final mask equals the
/// longest complying suffix.
AnomalyMask detect_lbr(const TimeSeries& ts, const DetectorConfig& cfg);

/// Backward regression over change-point anchored suffixes instead of
/// every observation. Windows with fewer than 2 points or spanning less
/// than w_min are skipped.
AnomalyMask detect_lbrcpd(const TimeSeries& ts, const DetectorConfig& cfg);

/// Offline phase: for every ordered change-point pair, fits a line and
/// keeps per-anchor the best (duration, slope) under the joint dominance
/// update; bests whose time-to-threshold is within the critical time are
/// saved as trends. v_max records the largest training value seen.
TrendStore precog_train(const TimeSeries& ts, const DetectorConfig& cfg);

/// Online phase: change-point anchored suffix scan; a qualifying window
/// is anomalous when it dominates the stored maxima or any saved trend
/// in both slope and duration.
AnomalyMask precog_detect(const TimeSeries& ts, const TrendStore& store, const DetectorConfig& cfg);

/// precog_detect with maximum filtration: the whole verdict is dropped
/// when the flagged window never exceeds the maximum value seen in
/// training.
AnomalyMask precogmf_detect(const TimeSeries& ts, const TrendStore& store, const DetectorConfig& cfg);

} // namespace leaktrend

#endif
