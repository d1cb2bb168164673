#pragma once

#include <stdexcept>
#include <string>

namespace exchgraph {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter or configuration is outside the domain where the model is defined.
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double achieved_error)
        : Error(what + " (achieved error estimate " + std::to_string(achieved_error) + ")"),
          achieved_error_(achieved_error) {}

    double achieved_error() const noexcept { return achieved_error_; }

private:
    double achieved_error_;
};

class InversionError : public Error {
public:
    using Error::Error;
};

/// An enumeration would exceed its configured work budget.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// The seed law has a finite mean (or fails the heavy-tail check), so no
/// kernel threshold exists.
class NoThresholdError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace exchgraph
