// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "leaktrend/core.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace leaktrend;
using helpers::make_series;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

} // namespace

TEST_CASE("resample: empty input stays empty") {
    TimeSeries ts;
    CHECK(resample(ts, 300).points.empty());
}

TEST_CASE("resample: one bucket averages all contained values") {
    auto ts = make_series({{0, 1}, {60, 2}, {120, 3}, {180, 4}, {240, 5}});
    auto out = resample(ts, 300);
    REQUIRE(out.points.size() == 1);
    CHECK(out.points[0].timestamp == 0);
    CHECK(out.points[0].value == doctest::Approx(3.0));
}

TEST_CASE("resample: buckets align to resolution multiples, empty buckets omitted") {
    auto ts = make_series({{0, 2}, {100, 4}, {350, 10}});
    auto out = resample(ts, 300);
    REQUIRE(out.points.size() == 2);
    CHECK(out.points[0].timestamp == 0);
    CHECK(out.points[0].value == doctest::Approx(3.0));
    CHECK(out.points[1].timestamp == 300);
    CHECK(out.points[1].value == doctest::Approx(10.0));
}

TEST_CASE("resample: idempotent at fixed resolution") {
    oracles::TestRng rng(11);
    for (int round = 0; round < 30; ++round) {
        TimeSeries ts;
        std::int64_t t = rng.uniform_int(0, 1000);
        const std::size_t n = static_cast<std::size_t>(rng.uniform_int(0, 200));
        for (std::size_t i = 0; i < n; ++i) {
            ts.points.push_back({t, rng.uniform(0, 100)});
            t += rng.uniform_int(1, 900);
        }
        const std::int64_t res = rng.uniform_int(30, 600);
        auto once = resample(ts, res);
        auto twice = resample(once, res);
        CHECK(once == twice);
        CHECK(once.points.size() <= ts.points.size());
    }
}

TEST_CASE("median_smooth: constants unchanged") {
    auto ts = make_series({{0, 5}, {60, 5}, {120, 5}, {180, 5}});
    CHECK(median_smooth(ts, 3600) == ts);
}

TEST_CASE("median_smooth: single point unchanged") {
    auto ts = make_series({{0, 42}});
    auto out = median_smooth(ts, 600);
    REQUIRE(out.points.size() == 1);
    CHECK(out.points[0].value == doctest::Approx(42.0));
}

TEST_CASE("median_smooth: trailing window with open left edge") {
    // window (t-180, t]: medians of {0}, {0,100}, {0,100,0}, {100,0,0}
    auto ts = make_series({{0, 0}, {60, 100}, {120, 0}, {180, 0}});
    auto out = median_smooth(ts, 180);
    REQUIRE(out.points.size() == 4);
    CHECK(out.points[0].value == doctest::Approx(0.0));
    CHECK(out.points[1].value == doctest::Approx(50.0));
    CHECK(out.points[2].value == doctest::Approx(0.0));
    CHECK(out.points[3].value == doctest::Approx(0.0));
}

TEST_CASE("median_smooth: output stays within input bounds and keeps timestamps") {
    oracles::TestRng rng(23);
    for (int round = 0; round < 30; ++round) {
        TimeSeries ts;
        std::int64_t t = 0;
        double lo = 1e300, hi = -1e300;
        const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 300));
        for (std::size_t i = 0; i < n; ++i) {
            const double v = rng.uniform(0, 100);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            ts.points.push_back({t, v});
            t += rng.uniform_int(30, 600);
        }
        auto out = median_smooth(ts, rng.uniform_int(60, 7200));
        REQUIRE(out.points.size() == ts.points.size());
        for (std::size_t i = 0; i < out.points.size(); ++i) {
            CHECK(out.points[i].timestamp == ts.points[i].timestamp);
            CHECK(out.points[i].value >= lo);
            CHECK(out.points[i].value <= hi);
        }
    }
}

TEST_CASE("preprocess: empty in, empty out") {
    CHECK(preprocess(TimeSeries{}, PreprocessConfig{}).points.empty());
}

TEST_CASE("preprocess: constant series stays constant") {
    auto ts = helpers::sample_fn(0, 2 * helpers::kDay, helpers::kMinute, [](std::int64_t) { return 37.5; });
    auto out = preprocess(ts, PreprocessConfig{});
    CHECK(out.points.size() < ts.points.size());
    for (const auto& p : out.points)
        CHECK(p.value == doctest::Approx(37.5));
}

TEST_CASE("preprocess: ramp keeps its slope and stays monotone") {
    const double slope = 10.0 / helpers::kDay; // percent per second
    auto ts = helpers::sample_fn(0, 5 * helpers::kDay, helpers::kMinute,
                                 [&](std::int64_t t) { return 10.0 + slope * static_cast<double>(t); });
    auto out = preprocess(ts, PreprocessConfig{});
    REQUIRE(out.points.size() > 100);

    for (std::size_t i = 1; i < out.points.size(); ++i)
        CHECK(out.points[i].value >= out.points[i - 1].value);

    // Past the smoothing warm-up every output lags the ramp by a fixed
    // offset, so consecutive differences recover the slope exactly.
    const std::size_t warmup = 13;
    for (std::size_t i = warmup + 1; i < out.points.size(); ++i) {
        const double local = (out.points[i].value - out.points[i - 1].value) /
                             static_cast<double>(out.points[i].timestamp - out.points[i - 1].timestamp);
        CHECK(local == doctest::Approx(slope).epsilon(1e-9));
    }
}

TEST_CASE("preprocess: monotone input stays monotone") {
    oracles::TestRng rng(31);
    for (int round = 0; round < 20; ++round) {
        TimeSeries ts;
        std::int64_t t = 0;
        double v = rng.uniform(0, 10);
        const std::size_t n = static_cast<std::size_t>(rng.uniform_int(2, 400));
        for (std::size_t i = 0; i < n; ++i) {
            ts.points.push_back({t, v});
            t += rng.uniform_int(30, 300);
            v += rng.uniform(0, 0.5);
        }
        auto out = preprocess(ts, PreprocessConfig{});
        for (std::size_t i = 1; i < out.points.size(); ++i)
            CHECK(out.points[i].value >= out.points[i - 1].value);
    }
}

TEST_CASE("csv: write then read round-trips exactly") {
    auto path = temp_file("leaktrend_core_roundtrip.csv");
    auto ts = make_series({{100, 1.25}, {200, 99.875}, {300, 0.1}}, "leaktrend_core_roundtrip");
    write_series_csv(ts, path);
    auto back = read_series_csv(path);
    CHECK(back == ts);
    std::filesystem::remove(path);
}

TEST_CASE("csv: series id comes from the file stem") {
    auto path = temp_file("vm-042.csv");
    write_series_csv(make_series({{0, 1}}, "ignored"), path);
    CHECK(read_series_csv(path).id == "vm-042");
    std::filesystem::remove(path);
}

TEST_CASE("csv: rejects bad input") {
    auto path = temp_file("leaktrend_core_bad.csv");

    auto write_text = [&](const std::string& text) {
        std::ofstream out(path);
        out << text;
    };

    write_text("time,value\n0,1\n");
    CHECK_THROWS_AS(read_series_csv(path), CsvError);

    write_text("timestamp,value\n0,nan\n");
    CHECK_THROWS_AS(read_series_csv(path), CsvError);

    write_text("timestamp,value\n0,inf\n");
    CHECK_THROWS_AS(read_series_csv(path), CsvError);

    write_text("timestamp,value\n10,1\n10,2\n");
    CHECK_THROWS_AS(read_series_csv(path), CsvError);

    write_text("timestamp,value\n10,1\n5,2\n");
    CHECK_THROWS_AS(read_series_csv(path), CsvError);

    write_text("timestamp,value\nabc,2\n");
    CHECK_THROWS_AS(read_series_csv(path), CsvError);

    write_text("timestamp,value\n10\n");
    CHECK_THROWS_AS(read_series_csv(path), CsvError);

    std::filesystem::remove(path);
}

TEST_CASE("csv: out-of-range values are kept but reported") {
    auto path = temp_file("leaktrend_core_range.csv");
    {
        std::ofstream out(path);
        out << "timestamp,value\n0,-3.5\n60,50\n120,104.2\n";
    }
    std::vector<std::string> warnings;
    auto ts = read_series_csv(path, &warnings);
    REQUIRE(ts.points.size() == 3);
    CHECK(ts.points[0].value == doctest::Approx(-3.5));
    CHECK(ts.points[2].value == doctest::Approx(104.2));
    CHECK(warnings.size() == 2);
    std::filesystem::remove(path);
}

TEST_CASE("csv: header-only file gives an empty series") {
    auto path = temp_file("leaktrend_core_empty.csv");
    {
        std::ofstream out(path);
        out << "timestamp,value\n";
    }
    CHECK(read_series_csv(path).points.empty());
    std::filesystem::remove(path);
}
