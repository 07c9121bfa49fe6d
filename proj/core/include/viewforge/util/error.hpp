#pragma once

#include <stdexcept>
#include <string>

namespace viewforge {

// Base class for all recoverable errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Degenerate or singular geometric configurations (coincident centers,
// rank-deficient normal equations, infeasible triplet angles, ...).
struct GeometryError : Error {
    using Error::Error;
};

// Malformed files, unsupported format variants, unreadable paths.
struct IoError : Error {
    using Error::Error;
};

// Invalid configuration or precondition violations detectable up front.
struct ConfigError : Error {
    using Error::Error;
};

} // namespace viewforge
