#pragma once

#include <stdexcept>
#include <string>

namespace wcg {

/// Malformed caller input: bad parameters, invalid specs, out-of-range values.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An enumeration would exceed its configured cap.
struct CapacityError : std::runtime_error {
    CapacityError(const std::string& what, unsigned long long cap)
        : std::runtime_error(what + " (cap: " + std::to_string(cap) + ")"), cap(cap) {}
    unsigned long long cap;
};

/// The requested value has no closed form in exact rational arithmetic.
struct ExactnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// No profile qualified as an equilibrium at the requested factor.
struct EmptyEquilibriumSet : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace wcg
