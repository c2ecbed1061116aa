// SPDX-License-Identifier: Apache-2.0

#ifndef LEAKTREND_ERRORS_HPP
#define LEAKTREND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace leaktrend {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or unreadable input data (CSV files, stores).
struct CsvError : Error {
    using Error::Error;
};

// Regression preconditions.
struct WindowTooSmall : Error {
    using Error::Error;
};
struct DegenerateTime : Error {
    using Error::Error;
};

// Change-point detection on an empty series.
struct EmptySeries : Error {
    using Error::Error;
};

// Synthetic generator given an unusable spec.
struct InvalidSpec : Error {
    using Error::Error;
};

// Evaluation harness.
struct MissingLabel : Error {
    using Error::Error;
};
struct UnknownAlgorithm : Error {
    using Error::Error;
};

} // namespace leaktrend

#endif
