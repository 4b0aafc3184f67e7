#pragma once

#include <stdexcept>
#include <string>

namespace erlmag {

// Base class for all library failures so callers can catch one type.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Arithmetic between incompatible dimensions, or a root that would need
// exponents finer than half-integers.
struct DimensionError : Error {
    using Error::Error;
};

// Numeric input outside an operation's domain (non-finite, non-positive
// where positivity is required, out-of-range parameters).
struct DomainError : Error {
    using Error::Error;
};

// Malformed dataset or configuration input.
struct ParseError : Error {
    using Error::Error;
};

// An infinite oscillatory integral whose tail decays too slowly to exist.
// Carries the estimated decay exponent p of the squared transform so the
// message can state how far from integrable the weighting is.
struct NonConvergentIntegral : Error {
    NonConvergentIntegral(const std::string& what, double tail_exponent_estimate)
        : Error(what), tail_exponent(tail_exponent_estimate) {}

    double tail_exponent;
};

}  // namespace erlmag
