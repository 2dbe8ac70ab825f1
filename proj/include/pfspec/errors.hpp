#pragma once

#include <stdexcept>
#include <string>

namespace pfspec {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
};

/// A rational function (or resolvent) was evaluated exactly at one of its poles.
class PoleHit : public Error {
public:
    PoleHit(std::string location, int order)
        : Error("evaluation at pole " + location + " of order " + std::to_string(order)),
          location_(std::move(location)), order_(order) {}

    const std::string& location() const noexcept { return location_; }
    int order() const noexcept { return order_; }

private:
    std::string location_;
    int order_;
};

class InadmissibleWord : public Error {
public:
    using Error::Error;
};

/// Repeated eigenvalues on the diagonal of a one-sided representation matrix.
class DegenerateSpectrum : public Error {
public:
    using Error::Error;
};

class DegreeOverflow : public Error {
public:
    using Error::Error;
};

class TruncationTooSmall : public Error {
public:
    using Error::Error;
};

/// Malformed input: config files, scalar strings, CLI arguments.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Operation called outside its documented domain.
class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace pfspec
