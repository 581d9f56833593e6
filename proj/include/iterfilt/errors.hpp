#pragma once

#include <stdexcept>
#include <string>

namespace iterfilt {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid configuration: filter too wide, grid too coarse, bad manifest, ...
class ConfigError : public Error {
public:
    using Error::Error;
};

/// The input (or the current residual) is already a trend at the requested
/// scale; no decomposition is possible.
class TrendError : public Error {
public:
    using Error::Error;
};

/// A dense operation exceeded its size budget.
class BudgetError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// A numerical self-check failed (e.g. symmetry residue above tolerance).
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace iterfilt
