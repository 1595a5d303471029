#pragma once

#include <stdexcept>
#include <string>

namespace kpdm {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition was violated (argument outside the domain).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A configuration cannot be honoured (grid too coarse, unsupported parameters).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A parameter combination the implementation deliberately does not cover,
/// e.g. non-integer Legendre degree.
class UnsupportedError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Iterative or adaptive numerics failed to reach the requested accuracy.
class NumericError : public Error {
public:
    NumericError(const std::string& what, double achieved)
        : Error(what), achieved_(achieved) {}

    /// Achieved residual or error estimate at the point of failure.
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

/// Fewer bound states than requested were resolved by a spectral solve.
class BoundStateError : public NumericError {
public:
    BoundStateError(const std::string& what, int available)
        : NumericError(what, static_cast<double>(available)), available_(available) {}

    int available() const noexcept { return available_; }

private:
    int available_;
};

}  // namespace kpdm
