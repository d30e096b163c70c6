#pragma once

#include <stdexcept>
#include <string>

namespace sfgap {

// Base class for all toolkit errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (bad dimensions, NaN/inf, bad ranges).
struct invalid_input : error {
    using error::error;
};

// A combinatorial enumeration would exceed its configured cap.
struct cap_exceeded : error {
    using error::error;
};

// A target point lies outside the relevant hull / feasible set.
struct infeasible_error : error {
    using error::error;
};

// The LP engine could not certify a result within its tolerances.
struct numeric_breakdown : error {
    using error::error;
};

} // namespace sfgap
