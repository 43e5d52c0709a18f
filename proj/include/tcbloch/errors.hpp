#pragma once

#include <stdexcept>
#include <string>

namespace tcbloch {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Block formulas don't apply: k < L+2 or k^2 - L^2 - 4L < 0.
struct BlockTooLarge : Error {
    using Error::Error;
};

// Requested object only exists at brute-force scale (group tables, dense states).
struct ScaleTooLarge : Error {
    using Error::Error;
};

// Dense reduced density matrix capped at 12 sites.
struct SubsetTooLarge : Error {
    using Error::Error;
};

// Cancellation ate the working precision; raise PrecisionPolicy::bits.
struct PrecisionTooLow : Error {
    using Error::Error;
};

// The assembled purity has a non-vanishing imaginary part: implementation bug.
struct NonRealResidue : Error {
    using Error::Error;
};

// State is not on the X-Z plane (relative phase away from 0 or pi).
struct NotInPlane : Error {
    using Error::Error;
};

// Fit asked for more parameters than data points.
struct InsufficientPoints : Error {
    using Error::Error;
};

} // namespace tcbloch
