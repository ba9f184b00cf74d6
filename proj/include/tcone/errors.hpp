#pragma once

#include <stdexcept>
#include <string>

namespace tcone {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument violates a documented precondition (negative u, s > t, ...).
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// A time or warped-time query falls outside the sampled horizon.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration: bad grid, too few knots, bad panel counts.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Integral bracket requested with k outside its admissible range.
class SpecError : public ArgumentError {
public:
    using ArgumentError::ArgumentError;
};

/// Two inputs disagree on the lattice they live on.
class GridMismatchError : public Error {
public:
    using Error::Error;
};

/// Zero pivot or inconsistent singular system in a linear solve.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Explicit-regime scheme parameters violating the CFL bound.
class CflError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class MalformedHeaderError : public IoError {
public:
    using IoError::IoError;
};

class ShapeMismatchError : public IoError {
public:
    using IoError::IoError;
};

class TruncatedPayloadError : public IoError {
public:
    using IoError::IoError;
};

}  // namespace tcone
