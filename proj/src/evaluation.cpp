// SPDX-License-Identifier: Apache-2.0

#include "leaktrend/evaluation.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

namespace leaktrend {

Algorithm parse_algorithm(const std::string& name) {
    if (name == "lbr")
        return Algorithm::lbr;
    if (name == "lbrcpd")
        return Algorithm::lbrcpd;
    if (name == "precog")
        return Algorithm::precog;
    if (name == "precogmf")
        return Algorithm::precogmf;
    throw UnknownAlgorithm("unknown algorithm '" + name + "'");
}

std::string algorithm_name(Algorithm a) {
    switch (a) {
    case Algorithm::lbr: return "lbr";
    case Algorithm::lbrcpd: return "lbrcpd";
    case Algorithm::precog: return "precog";
    case Algorithm::precogmf: return "precogmf";
    }
    return "?";
}

bool predict_series(const AnomalyMask& mask) {
    return mask.any();
}

void to_json(nlohmann::json& j, const EvalReport& r) {
    nlohmann::json per = nlohmann::json::array();
    for (const SeriesOutcome& o : r.per_series) {
        per.push_back({{"series_id", o.series_id},
                       {"label", o.label},
                       {"predicted", o.predicted},
                       {"elapsed_s", o.elapsed_s}});
    }
    j = nlohmann::json{{"algorithm", r.algorithm},
                       {"per_series", per},
                       {"tp", r.tp},
                       {"fp", r.fp},
                       {"fn", r.fn},
                       {"tn", r.tn},
                       {"precision", r.precision},
                       {"recall", r.recall},
                       {"f1", r.f1},
                       {"total_elapsed_s", r.total_elapsed_s},
                       {"mean_elapsed_s", r.mean_elapsed_s}};
}

namespace {

std::pair<TimeSeries, TimeSeries> split_by_time(const TimeSeries& ts, double fraction) {
    const auto n = ts.points.size();
    const auto cut = static_cast<std::size_t>(std::floor(static_cast<double>(n) * fraction));
    TimeSeries train{ts.id, {ts.points.begin(), ts.points.begin() + cut}};
    TimeSeries test{ts.id, {ts.points.begin() + cut, ts.points.end()}};
    return {std::move(train), std::move(test)};
}

bool run_one(const TimeSeries& raw, Algorithm algo, const PreprocessConfig& pre_cfg,
             const DetectorConfig& det_cfg, double split_fraction) {
    const TimeSeries ts = preprocess(raw, pre_cfg);
    switch (algo) {
    case Algorithm::lbr:
        return predict_series(detect_lbr(ts, det_cfg));
    case Algorithm::lbrcpd:
        return predict_series(detect_lbrcpd(ts, det_cfg));
    case Algorithm::precog: {
        auto [train, test] = split_by_time(ts, split_fraction);
        const TrendStore store = precog_train(train, det_cfg);
        return predict_series(precog_detect(test, store, det_cfg));
    }
    case Algorithm::precogmf: {
        auto [train, test] = split_by_time(ts, split_fraction);
        const TrendStore store = precog_train(train, det_cfg);
        return predict_series(precogmf_detect(test, store, det_cfg));
    }
    }
    return false;
}

} // namespace

EvalReport evaluate(const std::vector<LabeledSeries>& dataset, Algorithm algo,
                    const PreprocessConfig& pre_cfg, const DetectorConfig& det_cfg,
                    double split_fraction, unsigned jobs) {
    if (dataset.empty())
        throw Error("evaluate needs a non-empty dataset");
    if (!(split_fraction > 0.0 && split_fraction < 1.0))
        throw Error("split fraction must lie in (0,1)");

    EvalReport report;
    report.algorithm = algorithm_name(algo);
    report.per_series.resize(dataset.size());

    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= dataset.size())
                return;
            const LabeledSeries& item = dataset[i];
            const auto t0 = std::chrono::steady_clock::now();
            const bool predicted = run_one(item.series, algo, pre_cfg, det_cfg, split_fraction);
            const auto t1 = std::chrono::steady_clock::now();
            report.per_series[i] = {item.series.id, item.leak, predicted,
                                    std::chrono::duration<double>(t1 - t0).count()};
        }
    };

    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < jobs; ++w)
            pool.emplace_back(worker);
        for (std::thread& th : pool)
            th.join();
    }

    for (const SeriesOutcome& o : report.per_series) {
        if (o.label && o.predicted)
            ++report.tp;
        else if (!o.label && o.predicted)
            ++report.fp;
        else if (o.label && !o.predicted)
            ++report.fn;
        else
            ++report.tn;
        report.total_elapsed_s += o.elapsed_s;
    }
    report.mean_elapsed_s = report.total_elapsed_s / static_cast<double>(dataset.size());

    const double tp = static_cast<double>(report.tp);
    report.precision = report.tp + report.fp == 0 ? 0.0 : tp / static_cast<double>(report.tp + report.fp);
    report.recall = report.tp + report.fn == 0 ? 0.0 : tp / static_cast<double>(report.tp + report.fn);
    report.f1 = report.precision + report.recall == 0.0
                    ? 0.0
                    : 2.0 * report.precision * report.recall / (report.precision + report.recall);
    return report;
}

} // namespace leaktrend
