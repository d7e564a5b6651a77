#pragma once

#include <stdexcept>
#include <string>

namespace amenent {

/// Base class for all workbench errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An element or subset does not conform to the group it is used with.
struct SpecMismatchError : Error {
    using Error::Error;
};

/// An enumeration would exceed a configured cap (pattern cap, cell cap, ...).
struct CapExceededError : Error {
    using Error::Error;
};

/// A configuration document failed to parse or violated a load invariant.
struct ConfigError : Error {
    using Error::Error;
};

/// A requested construction has no solution (e.g. box not tileable).
struct InfeasibleError : Error {
    using Error::Error;
};

/// An operation precondition was violated by the caller.
struct PreconditionError : Error {
    using Error::Error;
};

} // namespace amenent
