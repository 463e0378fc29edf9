#pragma once

#include <stdexcept>
#include <string>

namespace gd {

// Base for every error raised by the library. The CLI maps subclasses to
// exit codes: input problems -> 2, numerical validity problems -> 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shapes do not fit the operation (non-square, mismatched, wrong qubit count).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Input violates a documented precondition (e.g. non-Hermitian input to an eigensolver).
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// The signed Laplacian convention was requested for a graph with complex weights.
class ConventionError : public Error {
public:
    using Error::Error;
};

/// A Laplacian with zero or negative trace cannot be normalized.
class NormalizationError : public Error {
public:
    using Error::Error;
};

/// A matrix failed density-operator validation. Carries the smallest eigenvalue.
class ValidityError : public Error {
public:
    ValidityError(const std::string &what, double min_eigenvalue)
        : Error(what), min_eigenvalue_(min_eigenvalue) {}

    [[nodiscard]] double min_eigenvalue() const noexcept { return min_eigenvalue_; }

private:
    double min_eigenvalue_;
};

/// Malformed graph, matrix or gate-word document.
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace gd
