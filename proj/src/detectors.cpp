// SPDX-License-Identifier: Apache-2.0

#include "leaktrend/detectors.hpp"

#include <algorithm>
#include <cmath>

#include "leaktrend/cpd.hpp"

namespace leaktrend {

bool AnomalyMask::any() const {
    return std::find(flags.begin(), flags.end(), true) != flags.end();
}

std::size_t AnomalyMask::first_flagged() const {
    for (std::size_t i = 0; i < flags.size(); ++i)
        if (flags[i])
            return i;
    return flags.size();
}

void to_json(nlohmann::json& j, const Trend& t) {
    j = nlohmann::json{{"duration_s", t.duration_s}, {"slope_pct_per_s", t.slope_pct_per_s}};
}

void from_json(const nlohmann::json& j, Trend& t) {
    j.at("duration_s").get_to(t.duration_s);
    j.at("slope_pct_per_s").get_to(t.slope_pct_per_s);
}

void to_json(nlohmann::json& j, const TrendStore& s) {
    j = nlohmann::json{{"trends", s.trends},
                       {"d_max_s", s.d_max_s},
                       {"s_max_pct_per_s", s.s_max_pct_per_s},
                       {"v_max_pct", s.v_max_pct}};
}

void from_json(const nlohmann::json& j, TrendStore& s) {
    j.at("trends").get_to(s.trends);
    j.at("d_max_s").get_to(s.d_max_s);
    j.at("s_max_pct_per_s").get_to(s.s_max_pct_per_s);
    j.at("v_max_pct").get_to(s.v_max_pct);
}

namespace {

// r2 gate plus extrapolation gate shared by all four detectors.
// Returns the fit with time_to_threshold_s filled in when the window
// complies, nothing otherwise.
std::optional<FitResult> qualifying_fit(const TimeSeries& ts, IndexRange window,
                                        const DetectorConfig& cfg) {
    FitResult fit = fit_line(ts, window);
    if (fit.r2 < cfg.r2_min)
        return std::nullopt;
    const std::int64_t t_last = ts.points[window.end - 1].timestamp;
    const auto ttl = time_to_threshold(fit, t_last, cfg.threshold_u);
    if (!ttl || *ttl > static_cast<double>(cfg.critical_time_s))
        return std::nullopt;
    fit.time_to_threshold_s = ttl;
    return fit;
}

void mark(AnomalyMask& mask, IndexRange window) {
    for (std::size_t i = window.begin; i < window.end; ++i)
        mask.flags[i] = true;
}

} // namespace

AnomalyMask detect_lbr(const TimeSeries& ts, const DetectorConfig& cfg) {
    const std::size_t n = ts.points.size();
    AnomalyMask mask{std::vector<bool>(n, false)};
    if (n < 2)
        return mask;

    const std::int64_t t_last = ts.points.back().timestamp;
    // Suffix windows, one observation longer per step. Complying suffixes
    // nest, so cumulative marking leaves exactly the longest one.
    for (std::size_t start = n - 2; ; --start) {
        const std::int64_t span = t_last - ts.points[start].timestamp;
        if (span > cfg.w_max_s)
            break;
        if (span >= cfg.w_min_s) {
            if (qualifying_fit(ts, {start, n}, cfg))
                mark(mask, {start, n});
        }
        if (start == 0)
            break;
    }
    return mask;
}

AnomalyMask detect_lbrcpd(const TimeSeries& ts, const DetectorConfig& cfg) {
    const std::size_t n = ts.points.size();
    AnomalyMask mask{std::vector<bool>(n, false)};
    if (n < 2)
        return mask;

    const ChangePointSet cps = change_points(ts, cfg.cpd_z, cfg.cpd_min_spacing_s);
    const std::size_t k = cps.indexes.size();
    const std::int64_t t_last = ts.points.back().timestamp;

    for (std::size_t i = 1; i < k; ++i) {
        const std::size_t start = cps.indexes[k - 1 - i];
        if (n - start < 2)
            continue;
        if (t_last - ts.points[start].timestamp < cfg.w_min_s)
            continue;
        if (qualifying_fit(ts, {start, n}, cfg))
            mark(mask, {start, n});
    }
    return mask;
}

TrendStore precog_train(const TimeSeries& ts, const DetectorConfig& cfg) {
    TrendStore store;
    for (const Observation& p : ts.points)
        store.v_max_pct = std::max(store.v_max_pct, p.value);
    if (ts.points.size() < 2)
        return store;

    const ChangePointSet cps = change_points(ts, cfg.cpd_z, cfg.cpd_min_spacing_s);
    const std::size_t k = cps.indexes.size();

    for (std::size_t p1 = 0; p1 < k; ++p1) {
        double best_d = 0.0, best_s = 0.0;
        std::optional<double> best_t;
        bool has_best = false;

        for (std::size_t p2 = p1; p2 < k; ++p2) {
            const std::size_t a = cps.indexes[p1];
            const std::size_t b = cps.indexes[p2];
            if (b - a + 1 < 2)
                continue;
            const std::int64_t span = ts.points[b].timestamp - ts.points[a].timestamp;
            if (span < cfg.w_min_s)
                continue;

            const FitResult fit = fit_line(ts, {a, b + 1});
            const double d = static_cast<double>(span);
            const double s = fit.slope;
            // Joint dominance update, both components at once.
            if (fit.r2 >= cfg.r2_min && d >= best_d && s >= best_s) {
                best_d = d;
                best_s = s;
                best_t = time_to_threshold(fit, ts.points[b].timestamp, cfg.threshold_u);
                has_best = true;
            }
        }

        if (has_best && best_t && *best_t <= static_cast<double>(cfg.critical_time_s)) {
            if (best_d >= store.d_max_s && best_s >= store.s_max_pct_per_s) {
                store.d_max_s = best_d;
                store.s_max_pct_per_s = best_s;
            }
            store.trends.push_back({best_d, best_s});
        }
    }
    return store;
}

AnomalyMask precog_detect(const TimeSeries& ts, const TrendStore& store, const DetectorConfig& cfg) {
    const std::size_t n = ts.points.size();
    AnomalyMask mask{std::vector<bool>(n, false)};
    if (n < 2)
        return mask;

    const ChangePointSet cps = change_points(ts, cfg.cpd_z, cfg.cpd_min_spacing_s);
    const std::size_t k = cps.indexes.size();
    const std::int64_t t_last = ts.points.back().timestamp;

    for (std::size_t i = 1; i < k; ++i) {
        const std::size_t start = cps.indexes[k - 1 - i];
        if (n - start < 2)
            continue;
        const std::int64_t span = t_last - ts.points[start].timestamp;
        if (span < cfg.w_min_s)
            continue;

        const auto fit = qualifying_fit(ts, {start, n}, cfg);
        if (!fit)
            continue;

        const double d = static_cast<double>(span);
        const double s = fit->slope;
        bool anomalous = s >= store.s_max_pct_per_s && d >= store.d_max_s;
        if (!anomalous) {
            for (const Trend& t : store.trends) {
                if (s >= t.slope_pct_per_s && d >= t.duration_s) {
                    anomalous = true;
                    break;
                }
            }
        }
        if (anomalous)
            mark(mask, {start, n});
    }
    return mask;
}

AnomalyMask precogmf_detect(const TimeSeries& ts, const TrendStore& store, const DetectorConfig& cfg) {
    AnomalyMask mask = precog_detect(ts, store, cfg);
    if (!mask.any())
        return mask;

    double window_max = 0.0;
    bool first = true;
    for (std::size_t i = 0; i < mask.flags.size(); ++i) {
        if (!mask.flags[i])
            continue;
        window_max = first ? ts.points[i].value : std::max(window_max, ts.points[i].value);
        first = false;
    }
    if (window_max <= store.v_max_pct)
        return AnomalyMask{std::vector<bool>(ts.points.size(), false)};
    return mask;
}

} // namespace leaktrend
