// SPDX-License-Identifier: Apache-2.0

#ifndef LEAKTREND_SYNTHGEN_HPP
#define LEAKTREND_SYNTHGEN_HPP

#include <cstdint>
#include <string>

#include "leaktrend/core.hpp"

namespace leaktrend {

enum class Pattern {
    linear,    // steady climb until exhaustion
    sawtooth,  // climb and reset, restart semantics
    random,    // bounded random walk
    constant,  // flat, the canonical negative case
};

Pattern parse_pattern(const std::string& name);
std::string pattern_name(Pattern p);

struct SynthSpec {
    Pattern pattern = Pattern::constant;
    std::int64_t duration_s = 0;
    std::int64_t resolution_s = 60;
    double start_value = 0.0;       // percent
    double slope_pct_per_s = 0.0;   // linear / sawtooth
    std::int64_t period_s = 0;      // sawtooth
    double noise_amplitude = 0.0;   // uniform in [-amp, +amp]
    std::uint64_t seed = 0;
    std::string series_id = "synthetic";
};

/// Deterministic series for the given spec: samples at t = resolution,
/// 2*resolution, ..., duration, all values clamped to [0, 100].
/// Identical specs (seed included) produce identical output.
///
/// Throws InvalidSpec for non-positive duration/resolution, negative
/// noise, or a sawtooth without a positive period.
TimeSeries generate(const SynthSpec& spec);

} // namespace leaktrend

#endif
