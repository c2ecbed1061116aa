// SPDX-License-Identifier: Apache-2.0
//
// leaktrend command line: synthetic series generation, leak detection,
// trend-store training, and labeled-dataset evaluation.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "leaktrend/core.hpp"
#include "leaktrend/detectors.hpp"
#include "leaktrend/evaluation.hpp"
#include "leaktrend/synthgen.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace leaktrend;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitConfig = 3;

struct ConfigError : Error {
    using Error::Error;
};

// "300" -> 300 s, "5m" -> 300, "6h" -> 21600, "7d" -> 604800, "0.5h" -> 1800
std::int64_t parse_duration(const std::string& text) {
    if (text.empty())
        throw ConfigError("empty duration");
    double scale = 1.0;
    std::string num = text;
    switch (text.back()) {
    case 's': scale = 1.0; num.pop_back(); break;
    case 'm': scale = 60.0; num.pop_back(); break;
    case 'h': scale = 3600.0; num.pop_back(); break;
    case 'd': scale = 86400.0; num.pop_back(); break;
    default: break;
    }
    try {
        std::size_t used = 0;
        const double value = std::stod(num, &used);
        if (used != num.size())
            throw ConfigError("bad duration '" + text + "'");
        return static_cast<std::int64_t>(std::llround(value * scale));
    } catch (const std::invalid_argument&) {
        throw ConfigError("bad duration '" + text + "'");
    } catch (const std::out_of_range&) {
        throw ConfigError("duration out of range '" + text + "'");
    }
}

std::int64_t duration_from_json(const json& j) {
    if (j.is_string())
        return parse_duration(j.get<std::string>());
    if (j.is_number())
        return static_cast<std::int64_t>(std::llround(j.get<double>()));
    throw ConfigError("duration must be a number of seconds or a suffixed string");
}

// One CLI option possibly backed by a config-file key. Explicit flags win;
// file values fill in the rest.
struct FileOverlay {
    std::vector<std::pair<CLI::Option*, std::function<void(const json&)>>> entries;

    void add(CLI::Option* opt, std::string key, std::function<void(const json&)> apply) {
        entries.push_back({opt, [key = std::move(key), apply = std::move(apply)](const json& j) {
                               if (j.contains(key))
                                   apply(j.at(key));
                           }});
    }

    void apply(const json& file) {
        for (auto& [opt, fn] : entries) {
            if (opt->count() == 0)
                fn(file);
        }
    }
};

struct CommonConfig {
    PreprocessConfig pre;
    DetectorConfig det;

    // duration flags arrive as strings so they can carry suffixes
    std::string resample = "5m";
    std::string smooth = "1h";
    std::string critical_time = "7d";
    std::string w_min = "6h";
    std::string w_max = "7d";
    std::string cpd_min_spacing = "6h";

    void resolve() {
        pre.resample_resolution_s = parse_duration(resample);
        pre.smoothing_window_s = parse_duration(smooth);
        det.critical_time_s = parse_duration(critical_time);
        det.w_min_s = parse_duration(w_min);
        det.w_max_s = parse_duration(w_max);
        det.cpd_min_spacing_s = parse_duration(cpd_min_spacing);
        if (pre.resample_resolution_s <= 0 || pre.smoothing_window_s <= 0)
            throw ConfigError("preprocessing durations must be positive");
        if (det.w_min_s <= 0 || det.w_max_s <= 0 || det.critical_time_s <= 0)
            throw ConfigError("detector durations must be positive");
        if (det.w_min_s > det.w_max_s)
            throw ConfigError("w-min must not exceed w-max");
        if (!(det.r2_min > 0.0 && det.r2_min <= 1.0))
            throw ConfigError("r2-min must lie in (0,1]");
    }

    json echo() const {
        return json{{"resample_resolution_s", pre.resample_resolution_s},
                    {"smoothing_window_s", pre.smoothing_window_s},
                    {"threshold_u", det.threshold_u},
                    {"critical_time_s", det.critical_time_s},
                    {"r2_min", det.r2_min},
                    {"w_min_s", det.w_min_s},
                    {"w_max_s", det.w_max_s},
                    {"cpd_z", det.cpd_z},
                    {"cpd_min_spacing_s", det.cpd_min_spacing_s}};
    }
};

void add_common_options(CLI::App* cmd, CommonConfig& cfg, FileOverlay& overlay) {
    auto str = [&overlay](CLI::Option* opt, const char* key, std::string& target) {
        overlay.add(opt, key, [&target](const json& j) {
            target = j.is_string() ? j.get<std::string>() : std::to_string(duration_from_json(j));
        });
    };
    str(cmd->add_option("--resample", cfg.resample, "Resampling resolution (default 5m)"),
        "resample", cfg.resample);
    str(cmd->add_option("--smooth", cfg.smooth, "Median smoothing window (default 1h)"),
        "smooth", cfg.smooth);
    str(cmd->add_option("--critical-time", cfg.critical_time,
                        "Max extrapolated time to threshold (default 7d)"),
        "critical-time", cfg.critical_time);
    str(cmd->add_option("--w-min", cfg.w_min, "Minimum trend duration (default 6h)"), "w-min",
        cfg.w_min);
    str(cmd->add_option("--w-max", cfg.w_max, "Maximum backward window (default 7d)"), "w-max",
        cfg.w_max);
    str(cmd->add_option("--cpd-min-spacing", cfg.cpd_min_spacing,
                        "Minimum spacing between change points (default 6h)"),
        "cpd-min-spacing", cfg.cpd_min_spacing);

    overlay.add(cmd->add_option("--threshold", cfg.det.threshold_u,
                                "Utilization threshold U in percent (default 100)"),
                "threshold", [&cfg](const json& j) { cfg.det.threshold_u = j.get<double>(); });
    overlay.add(cmd->add_option("--r2-min", cfg.det.r2_min, "Minimum R-squared (default 0.8)"),
                "r2-min", [&cfg](const json& j) { cfg.det.r2_min = j.get<double>(); });
    overlay.add(cmd->add_option("--cpd-z", cfg.det.cpd_z,
                                "Change-point z-score threshold (default 3)"),
                "cpd-z", [&cfg](const json& j) { cfg.det.cpd_z = j.get<double>(); });
}

json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("bad config file " + path + ": " + e.what());
    }
    if (!j.is_object())
        throw ConfigError("config file must hold a JSON object");
    return j;
}

void write_json_file(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw CsvError("cannot write " + path);
    out << j.dump(2) << '\n';
}

TimeSeries load_series(const std::string& path) {
    std::vector<std::string> warnings;
    TimeSeries ts = read_series_csv(path, &warnings);
    for (const std::string& w : warnings)
        std::cerr << "warning: " << w << '\n';
    return ts;
}

// ---- synth ----------------------------------------------------------

struct SynthArgs {
    std::string pattern = "constant";
    std::string duration;
    std::string resolution = "60s";
    double start = 0.0;
    double slope_per_day = 0.0;
    std::string period;
    double noise = 0.0;
    std::uint64_t seed = 0;
    std::string output;
    std::string config_file;
};

int run_synth(const SynthArgs& args) {
    SynthSpec spec;
    spec.pattern = parse_pattern(args.pattern);
    spec.duration_s = parse_duration(args.duration);
    spec.resolution_s = parse_duration(args.resolution);
    spec.start_value = args.start;
    spec.slope_pct_per_s = args.slope_per_day / 86400.0;
    spec.period_s = args.period.empty() ? 0 : parse_duration(args.period);
    spec.noise_amplitude = args.noise;
    spec.seed = args.seed;
    spec.series_id = fs::path(args.output).stem().string();

    TimeSeries ts = generate(spec);
    write_series_csv(ts, args.output);
    std::cout << ts.points.size() << " rows -> " << args.output << '\n';
    return kExitOk;
}

// ---- detect / train -------------------------------------------------

struct DetectArgs {
    std::string input;
    std::string algo;
    std::string output;
    std::string trends_path;
    double train_split = -1.0;
    CommonConfig common;
    std::string config_file;
};

json window_report(const TimeSeries& ts, const AnomalyMask& mask, const DetectorConfig& det) {
    json windows = json::array();
    const std::size_t first = mask.first_flagged();
    if (first >= ts.points.size())
        return windows;
    FitResult fit = fit_line(ts, {first, ts.points.size()});
    const auto ttl = time_to_threshold(fit, ts.points.back().timestamp, det.threshold_u);
    json w{{"start_ts", ts.points[first].timestamp},
           {"end_ts", ts.points.back().timestamp},
           {"slope_pct_per_s", fit.slope},
           {"r2", fit.r2}};
    w["time_to_threshold_s"] = ttl ? json(*ttl) : json(nullptr);
    windows.push_back(std::move(w));
    return windows;
}

int run_detect(DetectArgs& args) {
    args.common.resolve();
    const Algorithm algo = parse_algorithm(args.algo);

    const bool needs_store = algo == Algorithm::precog || algo == Algorithm::precogmf;
    const bool has_trends = !args.trends_path.empty();
    const bool has_split = args.train_split > 0.0;
    if (needs_store && has_trends == has_split)
        throw ConfigError("precog variants need exactly one of --trends or --train-split");
    if (has_split && !(args.train_split > 0.0 && args.train_split < 1.0))
        throw ConfigError("--train-split must lie in (0,1)");

    const TimeSeries raw = load_series(args.input);
    const TimeSeries ts = preprocess(raw, args.common.pre);

    AnomalyMask mask;
    const TimeSeries* analyzed = &ts;
    TimeSeries test_part;
    json config_echo = args.common.echo();

    switch (algo) {
    case Algorithm::lbr:
        mask = detect_lbr(ts, args.common.det);
        break;
    case Algorithm::lbrcpd:
        mask = detect_lbrcpd(ts, args.common.det);
        break;
    case Algorithm::precog:
    case Algorithm::precogmf: {
        TrendStore store;
        if (has_trends) {
            std::ifstream in(args.trends_path);
            if (!in)
                throw CsvError("cannot open trend store " + args.trends_path);
            json j;
            try {
                in >> j;
                store = j.get<TrendStore>();
            } catch (const json::exception& e) {
                throw CsvError("bad trend store " + args.trends_path + ": " + e.what());
            }
            config_echo["trends_path"] = args.trends_path;
        } else {
            const auto cut = static_cast<std::size_t>(
                std::floor(static_cast<double>(ts.points.size()) * args.train_split));
            TimeSeries train{ts.id, {ts.points.begin(), ts.points.begin() + cut}};
            test_part = TimeSeries{ts.id, {ts.points.begin() + cut, ts.points.end()}};
            store = precog_train(train, args.common.det);
            analyzed = &test_part;
            config_echo["split_fraction"] = args.train_split;
        }
        if (!has_trends)
            mask = algo == Algorithm::precog
                       ? precog_detect(test_part, store, args.common.det)
                       : precogmf_detect(test_part, store, args.common.det);
        else
            mask = algo == Algorithm::precog ? precog_detect(ts, store, args.common.det)
                                             : precogmf_detect(ts, store, args.common.det);
        break;
    }
    }

    json verdict{{"series_id", raw.id},
                 {"algorithm", algorithm_name(algo)},
                 {"anomalous", mask.any()},
                 {"windows", window_report(*analyzed, mask, args.common.det)},
                 {"config", config_echo}};

    if (args.output.empty())
        std::cout << verdict.dump(2) << '\n';
    else
        write_json_file(verdict, args.output);
    return kExitOk;
}

struct TrainArgs {
    std::string input;
    std::string output;
    CommonConfig common;
    std::string config_file;
};

int run_train(TrainArgs& args) {
    args.common.resolve();
    const TimeSeries raw = load_series(args.input);
    const TimeSeries ts = preprocess(raw, args.common.pre);
    const TrendStore store = precog_train(ts, args.common.det);
    write_json_file(store, args.output);
    std::cout << store.trends.size() << " trends -> " << args.output << '\n';
    return kExitOk;
}

// ---- eval ------------------------------------------------------------

struct EvalArgs {
    std::string data_dir;
    std::string labels_path;
    std::string algo;
    std::string output;
    double split = 0.65;
    unsigned jobs = 1;
    CommonConfig common;
    std::string config_file;
};

std::map<std::string, bool> read_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw CsvError("cannot open labels file " + path);
    std::map<std::string, bool> labels;
    std::string line;
    if (!std::getline(in, line))
        throw CsvError(path + ": empty labels file");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != "series_id,leak")
        throw CsvError(path + ": expected header 'series_id,leak'");
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto comma = line.rfind(',');
        if (comma == std::string::npos)
            throw CsvError(path + ":" + std::to_string(line_no) + ": missing comma");
        const std::string id = line.substr(0, comma);
        const std::string flag = line.substr(comma + 1);
        if (flag != "0" && flag != "1")
            throw CsvError(path + ":" + std::to_string(line_no) + ": leak must be 0 or 1");
        labels[id] = flag == "1";
    }
    return labels;
}

int run_eval(EvalArgs& args) {
    args.common.resolve();
    const Algorithm algo = parse_algorithm(args.algo);
    if (!(args.split > 0.0 && args.split < 1.0))
        throw ConfigError("--split must lie in (0,1)");

    const auto labels = read_labels(args.labels_path);

    std::vector<fs::path> files;
    if (!fs::is_directory(args.data_dir))
        throw CsvError("data directory not found: " + args.data_dir);
    for (const auto& entry : fs::directory_iterator(args.data_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv")
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty())
        throw CsvError("no .csv series found in " + args.data_dir);

    std::vector<LabeledSeries> dataset;
    dataset.reserve(files.size());
    for (const fs::path& f : files) {
        TimeSeries ts = load_series(f.string());
        const auto it = labels.find(ts.id);
        if (it == labels.end())
            throw MissingLabel("no label for series '" + ts.id + "'");
        dataset.push_back({std::move(ts), it->second});
    }

    const EvalReport report =
        evaluate(dataset, algo, args.common.pre, args.common.det, args.split, args.jobs);

    if (!args.output.empty())
        write_json_file(report, args.output);
    std::printf("algorithm=%s f1=%.4f precision=%.4f recall=%.4f mean_elapsed_s=%.4f\n",
                report.algorithm.c_str(), report.f1, report.precision, report.recall,
                report.mean_elapsed_s);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Memory-leak trend detection over utilization time series"};
    app.require_subcommand(1);

    SynthArgs synth;
    FileOverlay synth_overlay;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic series CSV");
    synth_overlay.add(synth_cmd->add_option("--pattern", synth.pattern,
                                            "linear|sawtooth|random|constant")->required(),
                      "pattern", [&](const json& j) { synth.pattern = j.get<std::string>(); });
    synth_overlay.add(synth_cmd->add_option("--duration", synth.duration, "Total span, e.g. 5d")
                          ->required(),
                      "duration", [&](const json& j) {
                          synth.duration = j.is_string() ? j.get<std::string>()
                                                         : std::to_string(duration_from_json(j));
                      });
    synth_overlay.add(synth_cmd->add_option("--resolution", synth.resolution,
                                            "Sample spacing (default 60s)"),
                      "resolution", [&](const json& j) {
                          synth.resolution = j.is_string() ? j.get<std::string>()
                                                           : std::to_string(duration_from_json(j));
                      });
    synth_overlay.add(synth_cmd->add_option("--start", synth.start, "Starting value, percent"),
                      "start", [&](const json& j) { synth.start = j.get<double>(); });
    synth_overlay.add(synth_cmd->add_option("--slope-per-day", synth.slope_per_day,
                                            "Climb rate, percent per day"),
                      "slope-per-day", [&](const json& j) { synth.slope_per_day = j.get<double>(); });
    synth_overlay.add(synth_cmd->add_option("--period", synth.period, "Sawtooth reset period"),
                      "period", [&](const json& j) {
                          synth.period = j.is_string() ? j.get<std::string>()
                                                       : std::to_string(duration_from_json(j));
                      });
    synth_overlay.add(synth_cmd->add_option("--noise", synth.noise, "Uniform noise amplitude"),
                      "noise", [&](const json& j) { synth.noise = j.get<double>(); });
    synth_overlay.add(synth_cmd->add_option("--seed", synth.seed, "RNG seed"), "seed",
                      [&](const json& j) { synth.seed = j.get<std::uint64_t>(); });
    synth_cmd->add_option("-o,--output", synth.output, "Output CSV path")->required();
    synth_cmd->add_option("--config", synth.config_file, "JSON config file");

    DetectArgs detect;
    FileOverlay detect_overlay;
    auto* detect_cmd = app.add_subcommand("detect", "Detect a leak trend in one series");
    detect_cmd->add_option("-i,--input", detect.input, "Series CSV")->required();
    detect_overlay.add(detect_cmd->add_option("--algo", detect.algo, "lbr|lbrcpd|precog|precogmf"),
                       "algo", [&](const json& j) { detect.algo = j.get<std::string>(); });
    detect_cmd->add_option("-o,--output", detect.output, "Verdict JSON path (stdout if omitted)");
    detect_overlay.add(detect_cmd->add_option("--trends", detect.trends_path,
                                              "Trend store JSON from 'train'"),
                       "trends", [&](const json& j) { detect.trends_path = j.get<std::string>(); });
    detect_overlay.add(detect_cmd->add_option("--train-split", detect.train_split,
                                              "Train on this first fraction instead of a store"),
                       "train-split", [&](const json& j) { detect.train_split = j.get<double>(); });
    add_common_options(detect_cmd, detect.common, detect_overlay);
    detect_cmd->add_option("--config", detect.config_file, "JSON config file");

    TrainArgs train;
    FileOverlay train_overlay;
    auto* train_cmd = app.add_subcommand("train", "Train a trend store from historic data");
    train_cmd->add_option("-i,--input", train.input, "Series CSV")->required();
    train_cmd->add_option("-o,--output", train.output, "Trend store JSON path")->required();
    add_common_options(train_cmd, train.common, train_overlay);
    train_cmd->add_option("--config", train.config_file, "JSON config file");

    EvalArgs eval;
    FileOverlay eval_overlay;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a detector on a labeled dataset");
    eval_cmd->add_option("--data", eval.data_dir, "Directory of series CSVs")->required();
    eval_cmd->add_option("--labels", eval.labels_path, "Labels CSV (series_id,leak)")->required();
    eval_overlay.add(eval_cmd->add_option("--algo", eval.algo, "lbr|lbrcpd|precog|precogmf"),
                     "algo", [&](const json& j) { eval.algo = j.get<std::string>(); });
    eval_overlay.add(eval_cmd->add_option("--split", eval.split,
                                          "Training fraction for precog variants (default 0.65)"),
                     "split", [&](const json& j) { eval.split = j.get<double>(); });
    eval_overlay.add(eval_cmd->add_option("--jobs", eval.jobs, "Parallel workers (default 1)"),
                     "jobs", [&](const json& j) { eval.jobs = j.get<unsigned>(); });
    eval_cmd->add_option("-o,--output", eval.output, "Report JSON path");
    add_common_options(eval_cmd, eval.common, eval_overlay);
    eval_cmd->add_option("--config", eval.config_file, "JSON config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*synth_cmd) {
            if (!synth.config_file.empty())
                synth_overlay.apply(load_config_file(synth.config_file));
            return run_synth(synth);
        }
        if (*detect_cmd) {
            if (!detect.config_file.empty())
                detect_overlay.apply(load_config_file(detect.config_file));
            if (detect.algo.empty())
                throw ConfigError("--algo is required (flag or config file)");
            return run_detect(detect);
        }
        if (*train_cmd) {
            if (!train.config_file.empty())
                train_overlay.apply(load_config_file(train.config_file));
            return run_train(train);
        }
        if (*eval_cmd) {
            if (!eval.config_file.empty())
                eval_overlay.apply(load_config_file(eval.config_file));
            if (eval.algo.empty())
                throw ConfigError("--algo is required (flag or config file)");
            return run_eval(eval);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const UnknownAlgorithm& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitOk;
}
