// SPDX-License-Identifier: Apache-2.0

#ifndef LEAKTREND_EVALUATION_HPP
#define LEAKTREND_EVALUATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "leaktrend/core.hpp"
#include "leaktrend/detectors.hpp"

namespace leaktrend {

enum class Algorithm { lbr, lbrcpd, precog, precogmf };

Algorithm parse_algorithm(const std::string& name); // throws UnknownAlgorithm
std::string algorithm_name(Algorithm a);

struct LabeledSeries {
    TimeSeries series;
    bool leak = false;
};

struct SeriesOutcome {
    std::string series_id;
    bool label = false;
    bool predicted = false;
    double elapsed_s = 0.0;
};

struct EvalReport {
    std::string algorithm;
    std::vector<SeriesOutcome> per_series;
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double total_elapsed_s = 0.0;
    double mean_elapsed_s = 0.0;
};

void to_json(nlohmann::json& j, const EvalReport& r);

/// Per-series verdict: leaking iff any observation is flagged.
bool predict_series(const AnomalyMask& mask);

/// Runs preprocessing plus the chosen detector over every series and
/// aggregates precision/recall/F1. Precog variants train on the first
/// split_fraction of each preprocessed series (time order) and detect on
/// the remainder; lbr/lbrcpd consume the whole series. Per-series timing
/// covers preprocessing, training where applicable, and detection.
/// `jobs` > 1 fans the series out across threads; results are identical
/// regardless of the thread count.
EvalReport evaluate(const std::vector<LabeledSeries>& dataset,
                    Algorithm algo,
                    const PreprocessConfig& pre_cfg,
                    const DetectorConfig& det_cfg,
                    double split_fraction = 0.65,
                    unsigned jobs = 1);

} // namespace leaktrend

#endif
