// SPDX-License-Identifier: Apache-2.0

#ifndef LEAKTREND_CORE_HPP
#define LEAKTREND_CORE_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "leaktrend/errors.hpp"

namespace leaktrend {

/// One utilization sample: epoch seconds plus percent used.
struct Observation {
    std::int64_t timestamp = 0;
    double value = 0.0;

    bool operator==(const Observation&) const = default;
};

/// Ordered utilization samples for a single host/VM.
/// Timestamps are strictly increasing; values are finite.
struct TimeSeries {
    std::string id;
    std::vector<Observation> points;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }

    /// Wall-clock extent, 0 for fewer than two points.
    std::int64_t span_s() const {
        return points.size() < 2 ? 0 : points.back().timestamp - points.front().timestamp;
    }

    bool operator==(const TimeSeries&) const = default;
};

struct PreprocessConfig {
    std::int64_t resample_resolution_s = 300;
    std::int64_t smoothing_window_s = 3600;
};

/// Downsample to at most one observation per resolution-aligned bucket.
/// Bucket timestamp is the bucket start, value the mean of contained
/// samples. Empty buckets are omitted, nothing is interpolated.
TimeSeries resample(const TimeSeries& ts, std::int64_t resolution_s);

/// Replace each value with the median of the trailing window
/// (t - window, t]. The window shrinks at the start of the series.
TimeSeries median_smooth(const TimeSeries& ts, std::int64_t window_s);

/// resample followed by median_smooth.
TimeSeries preprocess(const TimeSeries& ts, const PreprocessConfig& cfg);

/// Reads a `timestamp,value` CSV. The series id is the file stem.
/// Rejects non-finite values and non-increasing timestamps; values
/// outside [0,100] are kept but reported through `warnings`.
TimeSeries read_series_csv(const std::filesystem::path& path,
                           std::vector<std::string>* warnings = nullptr);

void write_series_csv(const TimeSeries& ts, const std::filesystem::path& path);

} // namespace leaktrend

#endif
