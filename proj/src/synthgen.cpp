// SPDX-License-Identifier: Apache-2.0

#include "leaktrend/synthgen.hpp"

#include <algorithm>
#include <random>

namespace leaktrend {

Pattern parse_pattern(const std::string& name) {
    if (name == "linear")
        return Pattern::linear;
    if (name == "sawtooth")
        return Pattern::sawtooth;
    if (name == "random")
        return Pattern::random;
    if (name == "constant")
        return Pattern::constant;
    throw InvalidSpec("unknown pattern '" + name + "'");
}

std::string pattern_name(Pattern p) {
    switch (p) {
    case Pattern::linear: return "linear";
    case Pattern::sawtooth: return "sawtooth";
    case Pattern::random: return "random";
    case Pattern::constant: return "constant";
    }
    return "?";
}

namespace {

double clamp_pct(double v) {
    return std::clamp(v, 0.0, 100.0);
}

// Uniform doubles straight from engine bits; distribution objects are
// implementation-defined and would break byte-identical reruns across
// standard libraries.
class NoiseSource {
public:
    explicit NoiseSource(std::uint64_t seed, double amplitude)
        : eng_(seed), amplitude_(amplitude) {}

    double next() {
        const double unit = static_cast<double>(eng_() >> 11) * 0x1.0p-53; // [0,1)
        return amplitude_ * (2.0 * unit - 1.0);
    }

private:
    std::mt19937_64 eng_;
    double amplitude_;
};

} // namespace

TimeSeries generate(const SynthSpec& spec) {
    if (spec.duration_s <= 0)
        throw InvalidSpec("duration must be positive");
    if (spec.resolution_s <= 0)
        throw InvalidSpec("resolution must be positive");
    if (spec.noise_amplitude < 0)
        throw InvalidSpec("noise amplitude must be non-negative");
    if (spec.pattern == Pattern::sawtooth && spec.period_s <= 0)
        throw InvalidSpec("sawtooth needs a positive period");

    TimeSeries ts;
    ts.id = spec.series_id;
    const std::int64_t count = spec.duration_s / spec.resolution_s;
    ts.points.reserve(static_cast<std::size_t>(count));

    NoiseSource noise(spec.seed, spec.noise_amplitude);
    double walk = spec.start_value;

    for (std::int64_t i = 0; i < count; ++i) {
        const std::int64_t t = (i + 1) * spec.resolution_s;
        double v = 0.0;
        switch (spec.pattern) {
        case Pattern::linear:
            v = spec.start_value + spec.slope_pct_per_s * static_cast<double>(t) + noise.next();
            break;
        case Pattern::sawtooth: {
            const std::int64_t local_t = t % spec.period_s;
            v = spec.start_value + spec.slope_pct_per_s * static_cast<double>(local_t) + noise.next();
            break;
        }
        case Pattern::random:
            walk = clamp_pct(walk + noise.next());
            v = walk;
            break;
        case Pattern::constant:
            v = spec.start_value + noise.next();
            break;
        }
        ts.points.push_back({t, clamp_pct(v)});
    }
    return ts;
}

} // namespace leaktrend
