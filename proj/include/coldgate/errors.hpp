#pragma once

#include <stdexcept>
#include <string>

namespace coldgate {

// Invalid input or a violated precondition. The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A numerical method did not reach its tolerance. The CLI maps this to exit code 3.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class QuadratureFailure : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
};

class NormLoss : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
};

class OptimizationNotConverged : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
};

class NoMinimum : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class PerturbationInvalid : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NonBasisSyndrome : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class GeometryMismatch : public ValidationError {
public:
    using ValidationError::ValidationError;
};

}  // namespace coldgate
