#pragma once

#include <stdexcept>
#include <string>

namespace rpq {

/// Raised for malformed arguments (empty inputs, out-of-range sizes, bad
/// parameters).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A kernel was asked to evaluate at coincident source and target points.
class CoincidentPoint : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Argument outside the mathematical domain of a function (e.g. Y_n(x <= 0)).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An adaptive oracle could not reach its requested accuracy.
class AccuracyNotReached : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite values or a breakdown inside an iterative solver.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Target point lies outside the patch it was inverted against.
class OutOfPatch : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Field evaluation requested too close to the boundary.
class ProximityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rpq
