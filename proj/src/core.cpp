// SPDX-License-Identifier: Apache-2.0

#include "leaktrend/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace leaktrend {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

double median_of(std::vector<double>& buf) {
    const std::size_t n = buf.size();
    const std::size_t mid = n / 2;
    std::nth_element(buf.begin(), buf.begin() + mid, buf.end());
    double hi = buf[mid];
    if (n % 2 == 1)
        return hi;
    double lo = *std::max_element(buf.begin(), buf.begin() + mid);
    return (lo + hi) / 2.0;
}

} // namespace

TimeSeries resample(const TimeSeries& ts, std::int64_t resolution_s) {
    if (resolution_s <= 0)
        throw Error("resample resolution must be positive");
    TimeSeries out;
    out.id = ts.id;
    if (ts.points.empty())
        return out;

    std::int64_t bucket_start = 0;
    double sum = 0.0;
    std::size_t count = 0;

    auto flush = [&] {
        if (count > 0)
            out.points.push_back({bucket_start, sum / static_cast<double>(count)});
    };

    for (const Observation& p : ts.points) {
        const std::int64_t b = floor_div(p.timestamp, resolution_s) * resolution_s;
        if (count == 0 || b != bucket_start) {
            flush();
            bucket_start = b;
            sum = 0.0;
            count = 0;
        }
        sum += p.value;
        ++count;
    }
    flush();
    return out;
}

TimeSeries median_smooth(const TimeSeries& ts, std::int64_t window_s) {
    if (window_s <= 0)
        throw Error("smoothing window must be positive");
    TimeSeries out;
    out.id = ts.id;
    out.points.reserve(ts.points.size());

    std::vector<double> buf;
    std::size_t left = 0;
    for (std::size_t i = 0; i < ts.points.size(); ++i) {
        const std::int64_t t = ts.points[i].timestamp;
        while (ts.points[left].timestamp <= t - window_s)
            ++left;
        buf.clear();
        for (std::size_t j = left; j <= i; ++j)
            buf.push_back(ts.points[j].value);
        out.points.push_back({t, median_of(buf)});
    }
    return out;
}

TimeSeries preprocess(const TimeSeries& ts, const PreprocessConfig& cfg) {
    return median_smooth(resample(ts, cfg.resample_resolution_s), cfg.smoothing_window_s);
}

TimeSeries read_series_csv(const std::filesystem::path& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in)
        throw CsvError("cannot open " + path.string());

    TimeSeries ts;
    ts.id = path.stem().string();

    std::string line;
    if (!std::getline(in, line)) {
        // a header-only or empty file yields an empty series
        return ts;
    }
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != "timestamp,value")
        throw CsvError(path.string() + ": expected header 'timestamp,value', got '" + line + "'");

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;

        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw CsvError(path.string() + ":" + std::to_string(line_no) + ": missing comma");

        std::int64_t t = 0;
        const char* ts_begin = line.data();
        const char* ts_end = line.data() + comma;
        auto [p, ec] = std::from_chars(ts_begin, ts_end, t);
        if (ec != std::errc() || p != ts_end)
            throw CsvError(path.string() + ":" + std::to_string(line_no) + ": bad timestamp");

        errno = 0;
        char* val_end = nullptr;
        const std::string val_str = line.substr(comma + 1);
        const double v = std::strtod(val_str.c_str(), &val_end);
        if (val_end == val_str.c_str() || *val_end != '\0')
            throw CsvError(path.string() + ":" + std::to_string(line_no) + ": bad value");
        if (!std::isfinite(v))
            throw CsvError(path.string() + ":" + std::to_string(line_no) + ": non-finite value");
        if (!ts.points.empty() && t <= ts.points.back().timestamp)
            throw CsvError(path.string() + ":" + std::to_string(line_no) +
                           ": timestamps must be strictly increasing");
        if (warnings && (v < 0.0 || v > 100.0))
            warnings->push_back(path.string() + ":" + std::to_string(line_no) + ": value " +
                                std::to_string(v) + " outside [0,100]");
        ts.points.push_back({t, v});
    }
    return ts;
}

void write_series_csv(const TimeSeries& ts, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw CsvError("cannot write " + path.string());
    out << "timestamp,value\n";
    char buf[64];
    for (const Observation& p : ts.points) {
        auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), p.value);
        (void)ec;
        out << p.timestamp << ',' << std::string_view(buf, end - buf) << '\n';
    }
    if (!out)
        throw CsvError("write failed for " + path.string());
}

} // namespace leaktrend
