// SPDX-License-Identifier: Apache-2.0

#ifndef LEAKTREND_CPD_HPP
#define LEAKTREND_CPD_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "leaktrend/core.hpp"

namespace leaktrend {

/// Strictly increasing observation indexes; always contains both series
/// endpoints (which coincide for a one-point series).
struct ChangePointSet {
    std::vector<std::size_t> indexes;

    bool operator==(const ChangePointSet&) const = default;
};

/// Change points from z-scores of absolute first-order differences.
///
/// A candidate sits at the first observation after any difference whose
/// z-score (population std) exceeds z_threshold. Candidates are kept
/// greedily in ascending order, each at least min_spacing seconds after
/// the previously kept index, with index 0 counting as initially kept.
/// Endpoints 0 and N-1 are always part of the result.
///
/// Throws EmptySeries for an empty input.
ChangePointSet change_points(const TimeSeries& ts, double z_threshold, std::int64_t min_spacing_s);

} // namespace leaktrend

#endif
