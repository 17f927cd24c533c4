#pragma once

#include <stdexcept>
#include <string>

namespace unruh {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid argument value (wrong sign, out of admissible range, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Coordinate outside the domain where the accelerated chart is defined
// (lapse N(z) <= 0).
class WedgeViolation : public DomainError {
public:
    using DomainError::DomainError;
};

// Inertial event outside the wedge covered by the accelerated chart.
class OutsideWedge : public DomainError {
public:
    using DomainError::DomainError;
};

// Inconsistent spatial layout (wells overlapping, separation too large for
// the requested solver route, tabulated data not covering the grid, ...).
class GeometryError : public Error {
public:
    using Error::Error;
};

// Iterative solver failed to reach its tolerance within the allowed work.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// Explicit time stepping would be unstable with the requested step.
class StabilityError : public Error {
public:
    using Error::Error;
};

// Rate graph does not connect all levels; stationary state is not unique.
class DisconnectedError : public Error {
public:
    using Error::Error;
};

// Malformed input text (config file, CSV table).
class ParseError : public Error {
public:
    using Error::Error;
};

// Well-formed input that violates a documented invariant. The message names
// the invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Filesystem failure (missing file, unwritable output directory).
class IoError : public Error {
public:
    using Error::Error;
};

// A requested run violates the validity-regime guards.
class RegimeError : public Error {
public:
    using Error::Error;
};

} // namespace unruh
