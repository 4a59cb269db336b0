#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace gybe {

/// Shape or size of an input does not fit the operation.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Elimination hit a pivot below the singularity threshold.
class SingularMatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative method ran out of iterations.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter lies outside its admissible set (off the unit circle,
/// family index out of range, cross-family comparison, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed textual input (braid words, solution ids, JSON documents).
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A braid relation or far-commutativity pair failed while building a
/// representation.
class RepresentationError : public std::runtime_error {
public:
    RepresentationError(std::string relation, double residual)
        : std::runtime_error(relation + " violated, residual " + std::to_string(residual)),
          relation_(std::move(relation)),
          residual_(residual) {}

    const std::string& relation() const noexcept { return relation_; }
    double residual() const noexcept { return residual_; }

private:
    std::string relation_;
    double residual_;
};

}  // namespace gybe
